// SPDX-License-Identifier: Apache-2.0
//
// risidd - link-level simulator for RIS-assisted iterative detection and decoding
// Copyright (C) 2026 The risidd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "risidd/detector.hpp"
#include "risidd/ris_optimizer.hpp"
#include "risidd/rng.hpp"

using namespace risidd;

namespace {

CMat random_matrix(int r, int c, Rng& rng)
{
    CMat m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = complex_normal(rng);
    return m;
}

RisDesignInputs random_inputs(int k, int m, int n, Rng& rng)
{
    RisDesignInputs in;
    in.direct = random_matrix(m, k, rng);
    in.ap_ris = random_matrix(m, n, rng);
    in.ris_users = random_matrix(n, k, rng);
    for (int u = 0; u < k; ++u) in.cascaded.push_back(in.ap_ris * in.ris_users.col(u).asDiagonal());
    in.g_loss = 1.0;
    return in;
}

RisDesignParams active_params(double ris_noise)
{
    RisDesignParams p;
    p.mode = RisMode::kActive;
    p.sigma_x2 = 1.0;
    p.static_noise = 0.2;
    p.ris_noise = ris_noise;
    p.ris_power = 3.0;
    return p;
}

CVec random_vector(int n, Rng& rng) { return random_matrix(n, 1, rng).col(0); }

}  // namespace

TEST_CASE("scalar closed form")
{
    RisDesignInputs in;
    in.direct = CMat::Constant(1, 1, cd(0.3, -0.1));
    in.ap_ris = CMat::Constant(1, 1, cd(0.8, 0.5));
    in.ris_users = CMat::Constant(1, 1, cd(-0.2, 1.1));
    in.cascaded = {in.ap_ris * in.ris_users(0, 0)};
    const CMat w = CMat::Constant(1, 1, cd(0.6, 0.4));
    const cd wa = w(0, 0) * in.cascaded[0](0, 0);
    const cd wd = w(0, 0) * in.direct(0, 0);
    const cd expected = std::conj(wa) * (1.0 - wd) / std::norm(wa);
    CHECK(std::abs(solve_phi_llr(w, in)(0) - expected) < 1e-8);

    const auto mid = compute_intermediates(w, in, RisNoiseModel::kElementwise);
    CHECK(std::abs(mid.beta(0, 0) - std::norm(wa)) < 1e-12);
    CHECK(std::abs(mid.psi(0) - std::conj(wa) * (1.0 - wd)) < 1e-12);
}

TEST_CASE("zero psi gives zero reflection")
{
    auto rng = seeded_rng(21, 0);
    auto in = random_inputs(2, 2, 3, rng);
    const CMat w = in.direct.inverse();
    const auto mid = compute_intermediates(w, in, RisNoiseModel::kElementwise);
    CHECK(mid.psi.norm() < 1e-12);
    CHECK(solve_phi_llr(w, in).norm() < 1e-12);
}

TEST_CASE("intermediates are Hermitian and positive semidefinite")
{
    auto rng = seeded_rng(22, 0);
    const auto in = random_inputs(3, 5, 4, rng);
    const CMat w = random_matrix(3, 5, rng);
    for (auto model : {RisNoiseModel::kElementwise, RisNoiseModel::kFullGram}) {
        const auto mid = compute_intermediates(w, in, model);
        CHECK((mid.beta - mid.beta.adjoint()).norm() < 1e-12);
        CHECK((mid.noise_gram - mid.noise_gram.adjoint()).norm() < 1e-12);
        Eigen::SelfAdjointEigenSolver<CMat> eb(mid.beta), eg(mid.noise_gram);
        CHECK(eb.eigenvalues().minCoeff() > -1e-10);
        CHECK(eg.eigenvalues().minCoeff() > -1e-10);
    }
    const CMat wg = w * in.ap_ris;
    const auto full = compute_intermediates(w, in, RisNoiseModel::kFullGram);
    CHECK((full.noise_gram - wg.adjoint() * wg).norm() < 1e-10);
    const auto diag = compute_intermediates(w, in, RisNoiseModel::kElementwise);
    CHECK((diag.noise_gram - CMat((wg.adjoint() * wg).diagonal().asDiagonal())).norm() < 1e-10);
}

TEST_CASE("mse objective against simulation")
{
    auto rng = seeded_rng(23, 0);
    const auto in = random_inputs(2, 3, 4, rng);
    const CMat w = random_matrix(2, 3, rng) * 0.3;
    const CVec phi = random_vector(4, rng);
    auto params = active_params(0.4);
    params.sigma_x2 = 1.5;
    const double analytic = mse_objective(w, in, phi, params);
    const CMat hbar = in.equivalent(phi);
    const int trials = 40000;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        CVec x(2), ns(3), nv(4);
        for (int i = 0; i < 2; ++i) x(i) = complex_normal(rng, params.sigma_x2);
        for (int i = 0; i < 3; ++i) ns(i) = complex_normal(rng, params.static_noise);
        for (int i = 0; i < 4; ++i) nv(i) = complex_normal(rng, params.ris_noise);
        const CVec y = hbar * x + in.ap_ris * phi.asDiagonal() * nv + ns;
        total += (x - w * y).squaredNorm();
    }
    CHECK(total / trials == doctest::Approx(analytic).epsilon(0.03));
}

TEST_CASE("closed form minimizes the unconstrained objectives")
{
    auto rng = seeded_rng(24, 0);
    for (auto model : {RisNoiseModel::kElementwise, RisNoiseModel::kFullGram}) {
        const auto in = random_inputs(3, 4, 5, rng);
        const CMat w = mmse_filter_bank(in.direct, 0.3);
        auto params = active_params(0.5);
        params.noise_model = model;
        const CVec phi = solve_phi_unconstrained(w, in, params);
        const CVec phi_llr = solve_phi_llr(w, in);
        const double best = mse_objective(w, in, phi, params);
        const double best_llr = llr_refinement_objective(w, in, phi_llr);
        int worse = 0;
        for (int t = 0; t < 1000; ++t) {
            CVec d = random_vector(5, rng);
            d *= 1e-3 / d.norm();
            worse += mse_objective(w, in, phi + d, params) >= best - 1e-12;
            worse += llr_refinement_objective(w, in, phi_llr + d) >= best_llr - 1e-12;
        }
        CHECK(worse == 2000);
    }
}

TEST_CASE("without RIS noise both closed forms agree")
{
    auto rng = seeded_rng(25, 0);
    const auto in = random_inputs(3, 4, 5, rng);
    const CMat w = random_matrix(3, 4, rng);
    RisDesignParams params;
    const CVec a = solve_phi_unconstrained(w, in, params);
    const CVec b = solve_phi_llr(w, in);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    const double sum_mu = [&] {
        const CMat m = CMat::Identity(3, 3) - w * in.equivalent(a);
        return m.squaredNorm();
    }();
    CHECK(llr_refinement_objective(w, in, a) == doctest::Approx(sum_mu));
}

TEST_CASE("passive truncation")
{
    CVec v(4);
    v << cd(2.0, 0.0), cd(1.0, 1.0), cd(0.0, 0.0), cd(0.0, -3.0);
    const auto r = truncate_passive(v);
    CHECK(std::abs(r.phi(0) - 1.0) < 1e-15);
    CHECK(std::abs(r.phi(1) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
    CHECK(std::abs(r.phi(2) - 1.0) < 1e-15);
    CHECK(std::abs(r.phi(3) - cd(0.0, -1.0)) < 1e-15);
    CHECK(r.mode == RisMode::kPassive);
    const auto again = truncate_passive(r.phi);
    CHECK((again.phi - r.phi).norm() < 1e-15);
}

TEST_CASE("active truncation")
{
    auto rng = seeded_rng(26, 0);
    const auto in = random_inputs(3, 4, 6, rng);
    const auto params = active_params(0.25);
    const CVec phi_o = random_vector(6, rng);
    const auto r = truncate_active(phi_o, in.ris_users, params);
    CHECK(r.reflected_power + r.dynamic_noise_power == doctest::Approx(params.ris_power).epsilon(1e-12));
    double pa = 0;
    for (int k = 0; k < 3; ++k) pa += params.sigma_x2 * r.phi.cwiseProduct(in.ris_users.col(k)).squaredNorm();
    CHECK(r.reflected_power == doctest::Approx(pa));
    CHECK(r.dynamic_noise_power == doctest::Approx(r.phi.squaredNorm() * 0.25));
    // direction preserved, scale removed
    const auto scaled = truncate_active(cd(-4.0, 2.0) * phi_o, in.ris_users, params);
    const cd ratio = r.phi(0) / phi_o(0);
    CHECK((r.phi - ratio * phi_o).norm() < 1e-12);
    CHECK(std::abs(ratio.imag()) < 1e-12);
    CHECK(ratio.real() > 0.0);
    CHECK(std::abs(std::abs(scaled.phi(0)) - std::abs(r.phi(0))) < 1e-12);

    CHECK_THROWS_AS(truncate_active(CVec::Zero(6), in.ris_users, params), std::invalid_argument);
    auto no_power = params;
    no_power.ris_power = 0.0;
    CHECK_THROWS_AS(truncate_active(phi_o, in.ris_users, no_power), std::invalid_argument);

    RisDesignInputs one = random_inputs(1, 1, 1, rng);
    CVec x(1);
    x(0) = cd(0.0, 2.0);
    const auto s = truncate_active(x, one.ris_users, params);
    const double gain2 = params.ris_power / (params.sigma_x2 * std::norm(one.ris_users(0, 0)) + 0.25);
    CHECK(std::norm(s.phi(0)) == doctest::Approx(gain2));
    CHECK(std::arg(s.phi(0)) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("alternating optimization")
{
    auto rng = seeded_rng(27, 0);
    const auto in = random_inputs(3, 4, 6, rng);

    SUBCASE("passive")
    {
        RisDesignParams params;
        params.static_noise = 0.1;
        params.ao_iterations = 30;
        params.ao_tolerance = 0.0;
        auto r1 = seeded_rng(1, 1), r2 = seeded_rng(1, 1);
        const auto a = alternating_optimize(in, params, r1);
        const auto b = alternating_optimize(in, params, r2);
        CHECK((a.reflection.phi - b.reflection.phi).norm() == 0.0);
        CHECK((a.reflection.phi.cwiseAbs() - RVec::Ones(6)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(a.iterations_used == 30);
        CHECK(a.trace.size() == 60);
        // the filter step is an exact minimizer
        for (std::size_t i = 2; i < a.trace.size(); i += 2) CHECK(a.trace[i].objective <= a.trace[i - 1].objective + 1e-12);
        const CMat expected = mmse_filter_bank(in.equivalent(a.reflection.phi), params.static_noise / params.sigma_x2);
        CHECK((a.filters - expected).norm() < 1e-10);
        std::ostringstream csv;
        write_ao_trace(csv, a);
        CHECK(csv.str().rfind("iteration,step,objective,feasibility_slack\n1,filter,", 0) == 0);
    }
    SUBCASE("active")
    {
        auto params = active_params(0.05);
        params.ao_iterations = 10;
        auto r = seeded_rng(2, 1);
        const auto a = alternating_optimize(in, params, r);
        CHECK(a.reflection.reflected_power + a.reflection.dynamic_noise_power ==
              doctest::Approx(params.ris_power).epsilon(1e-9));
        const CMat expected = mmse_filter_bank(in.equivalent(a.reflection.phi),
                                               normalized_noise_covariance(in, a.reflection.phi, params));
        CHECK((a.filters - expected).norm() < 1e-10);
    }
    SUBCASE("early stop")
    {
        RisDesignParams params;
        params.ao_iterations = 500;
        params.ao_tolerance = 1e-3;
        auto r = seeded_rng(3, 1);
        CHECK(alternating_optimize(in, params, r).iterations_used < 500);
    }
    SUBCASE("no elements")
    {
        RisDesignInputs none;
        none.direct = in.direct;
        none.ap_ris = CMat(4, 0);
        none.ris_users = CMat(0, 3);
        none.cascaded.assign(3, CMat(4, 0));
        RisDesignParams params;
        params.static_noise = 0.1;
        auto r = seeded_rng(4, 1);
        const auto a = alternating_optimize(none, params, r);
        CHECK(a.reflection.mode == RisMode::kNone);
        CHECK((a.filters - mmse_filter_bank(in.direct, 0.1)).norm() < 1e-12);
    }
}

TEST_CASE("normalized noise covariance")
{
    auto rng = seeded_rng(28, 0);
    const auto in = random_inputs(2, 3, 4, rng);
    const CVec phi = random_vector(4, rng);
    auto params = active_params(0.3);
    params.sigma_x2 = 2.0;
    CMat want = params.static_noise * CMat::Identity(3, 3);
    for (int n = 0; n < 4; ++n) want += 0.3 * std::norm(phi(n)) * in.ap_ris.col(n) * in.ap_ris.col(n).adjoint();
    CHECK((normalized_noise_covariance(in, phi, params) - want / 2.0).norm() < 1e-12);
    params.ris_noise = 0.0;
    CHECK((normalized_noise_covariance(in, phi, params) - 0.1 * CMat::Identity(3, 3)).norm() < 1e-12);
}
