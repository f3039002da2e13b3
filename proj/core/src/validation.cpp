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


#include "risidd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "risidd/complexity.hpp"
#include "risidd/detector.hpp"
#include "risidd/ldpc.hpp"
#include "risidd/modem.hpp"
#include "risidd/ris_optimizer.hpp"
#include "risidd/rng.hpp"

namespace risidd {

namespace {

std::string format(const char* fmt, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

CMat random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
    CMat out(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = complex_normal(rng);
    return out;
}

RisDesignInputs random_inputs(int users, int antennas, int elements, Rng& rng)
{
    RisDesignInputs in;
    in.direct = random_matrix(antennas, users, rng);
    in.ap_ris = random_matrix(antennas, elements, rng);
    in.ris_users = random_matrix(elements, users, rng);
    in.g_loss = 1.0;
    for (int k = 0; k < users; ++k) in.cascaded.push_back(in.ap_ris * in.ris_users.col(k).asDiagonal());
    return in;
}

int uniform_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

CVec random_phases(int n, Rng& rng)
{
    CVec phi(n);
    for (int e = 0; e < n; ++e) phi(e) = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
    return phi;
}

// MMSE filters for a random unit-modulus phi.
CMat realistic_filters(const RisDesignInputs& in, const RisDesignParams& params, Rng& rng)
{
    const CVec phi = random_phases(in.elements(), rng);
    return mmse_filter_bank(in.equivalent(phi), normalized_noise_covariance(in, phi, params));
}

}  // namespace

CheckResult check_equivalence(int instances, std::uint64_t seed)
{
    Rng rng = seeded_rng(seed, 101);
    double worst = 0.0;
    for (int t = 0; t < instances; ++t) {
        const auto in = random_inputs(uniform_int(rng, 2, 4), uniform_int(rng, 4, 8), uniform_int(rng, 4, 8), rng);
        RisDesignParams params;
        params.mode = RisMode::kActive;
        params.static_noise = 0.1 + uniform01(rng);
        params.ris_noise = 0.0;
        const CMat w = realistic_filters(in, params, rng);
        const CVec a = solve_phi_unconstrained(w, in, params);
        const CVec b = solve_phi_llr(w, in);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    return {"equivalence", "llr_criterion_matches_mmse", worst < 1e-10,
            format("instances=%.0f max_abs_diff=%.3e", instances, worst)};
}

CheckResult check_stationarity(int instances, std::uint64_t seed)
{
    Rng rng = seeded_rng(seed, 102);
    double worst_ratio = 0.0;
    for (int t = 0; t < instances; ++t) {
        const auto in = random_inputs(uniform_int(rng, 2, 4), uniform_int(rng, 4, 8), uniform_int(rng, 4, 8), rng);
        RisDesignParams params;
        params.mode = RisMode::kActive;
        params.static_noise = 0.1 + uniform01(rng);
        params.ris_noise = t % 5 == 0 ? 0.0 : 0.05 + uniform01(rng);
        const CMat w = realistic_filters(in, params, rng);
        const CVec phi = solve_phi_unconstrained(w, in, params);
        const auto terms = compute_intermediates(w, in, params.noise_model);
        const double h = 1e-5;
        double grad2 = 0.0;
        for (Eigen::Index e = 0; e < phi.size(); ++e) {
            for (const cd dir : {cd{1.0, 0.0}, cd{0.0, 1.0}}) {
                CVec plus = phi, minus = phi;
                plus(e) += h * dir;
                minus(e) -= h * dir;
                const double g = (mse_objective(w, in, plus, params) - mse_objective(w, in, minus, params)) / (2 * h);
                grad2 += g * g;
            }
        }
        worst_ratio = std::max(worst_ratio, std::sqrt(grad2) / (1.0 + terms.psi.norm()));
    }
    return {"stationarity", "finite_difference_gradient", worst_ratio < 1e-6,
            format("instances=%.0f max_grad_over_(1+|psi|)=%.3e", instances, worst_ratio)};
}

CheckResult check_passive_grid(int instances, int grid_points, std::uint64_t seed)
{
    Rng rng = seeded_rng(seed, 103);
    std::vector<cd> grid(static_cast<std::size_t>(grid_points));
    for (int g = 0; g < grid_points; ++g) grid[g] = std::polar(1.0, 2.0 * std::numbers::pi * g / grid_points);
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < instances; ++t) {
        const CVec phi_o = random_matrix(2, 1, rng).col(0);
        const CVec phi_t = truncate_passive(phi_o).phi;
        const double achieved = phi_t.dot(phi_o).real();
        double best = -std::numeric_limits<double>::infinity();
        for (const cd a : grid)
            for (const cd b : grid)
                best = std::max(best, (std::conj(a) * phi_o(0) + std::conj(b) * phi_o(1)).real());
        worst_excess = std::max(worst_excess, best - achieved);
    }
    return {"truncation", "passive_projection_beats_grid", worst_excess <= 1e-12,
            format("instances=%.0f max_grid_excess=%.3e", instances, worst_excess)};
}

CheckResult check_active_equality(int instances, std::uint64_t seed)
{
    Rng rng = seeded_rng(seed, 104);
    double worst = 0.0;
    for (int t = 0; t < instances; ++t) {
        const int n = uniform_int(rng, 1, 64);
        const int k = uniform_int(rng, 1, 12);
        RisDesignParams params;
        params.mode = RisMode::kActive;
        params.sigma_x2 = std::pow(10.0, uniform01(rng) * 4 - 2);
        params.ris_noise = uniform01(rng) < 0.2 ? 0.0 : std::pow(10.0, uniform01(rng) * 4 - 12);
        params.ris_power = std::pow(10.0, uniform01(rng) * 4 - 2);
        const CMat f = random_matrix(n, k, rng) * std::pow(10.0, -3.0 * uniform01(rng));
        const CVec phi_o = random_matrix(n, 1, rng).col(0) * (0.1 + 10 * uniform01(rng));
        const auto r = truncate_active(phi_o, f, params);
        worst = std::max(worst, std::abs(r.reflected_power + r.dynamic_noise_power - params.ris_power) / params.ris_power);
    }
    return {"active", "power_constraint_equality", worst < 1e-9,
            format("instances=%.0f max_rel_err=%.3e", instances, worst)};
}

CheckResult check_complexity_anchor()
{
    ComplexityParams p;
    const double aprs = flops(Method::kApRis, p);
    const double admm = flops(Method::kAdmm, p);
    const bool pass = aprs == 5898240.0 && std::abs(admm - 7e6) <= 0.15 * 7e6;
    return {"complexity", "table_anchor", pass, format("apris=%.0f admm=%.0f", aprs, admm)};
}

CheckResult check_measured_complexity(std::uint64_t seed)
{
    Rng rng = seeded_rng(seed, 105);
    ComplexityParams p;
    auto in = random_inputs(p.users, p.antennas, p.elements, rng);
    RisDesignParams params;
    params.mode = RisMode::kPassive;
    params.static_noise = 0.5;
    params.ao_iterations = p.iterations;
    params.ao_tolerance = 0.0;
    OpCounter counter;
    const auto ao = alternating_optimize(in, params, rng, &counter);
    ComplexityParams used = p;
    used.iterations = std::max(1, ao.iterations_used);
    const auto ratio = measured_vs_model(counter, flops(Method::kApRis, used));
    return {"complexity", "measured_within_factor_two", ratio.within_bounds,
            format("measured=%.0f ratio=%.3f", ratio.measured, ratio.ratio)};
}

CheckResult check_ldpc_awgn(int frames, double ebn0_db, std::uint64_t seed)
{
    const auto code = build_code(512, 0.5, 3, 1);
    Rng rng = seeded_rng(seed, 106);
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    const double sigma2 = 1.0 / (2.0 * code.rate() * ebn0);
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
    std::bernoulli_distribution coin(0.5);
    std::uint64_t errors = 0, bits = 0;
    std::vector<double> llr(static_cast<std::size_t>(code.n()));
    Bits msg(static_cast<std::size_t>(code.info_bits()));
    for (int f = 0; f < frames; ++f) {
        for (auto& b : msg) b = coin(rng) ? 1 : 0;
        const Bits cw = code.encode(msg);
        for (int v = 0; v < code.n(); ++v) {
            const double y = (cw[v] ? -1.0 : 1.0) + noise(rng);
            llr[v] = -2.0 * y / sigma2;
        }
        const auto decoded = code.extract_message(decode(code, llr).hard_bits);
        for (std::size_t i = 0; i < msg.size(); ++i) errors += decoded[i] != msg[i] ? 1u : 0u;
        bits += msg.size();
    }
    const double ber = static_cast<double>(errors) / static_cast<double>(bits);
    return {"ldpc", "awgn_ber_below_1e-4", ber < 1e-4, format("bits=%.0f ber=%.3e", static_cast<double>(bits), ber)};
}

namespace {

CheckResult check_ldpc_fixed_point(std::uint64_t seed)
{
    const auto code = build_code(512, 0.5, 3, 1);
    Rng rng = seeded_rng(seed, 107);
    std::bernoulli_distribution coin(0.5);
    Bits msg(static_cast<std::size_t>(code.info_bits()));
    for (auto& b : msg) b = coin(rng) ? 1 : 0;
    const Bits cw = code.encode(msg);
    std::vector<double> llr(cw.size());
    for (std::size_t v = 0; v < cw.size(); ++v) llr[v] = cw[v] ? kLlrClamp : -kLlrClamp;
    const auto r = decode(code, llr);
    const bool pass = r.parity_ok && r.hard_bits == cw && r.iterations_used == 1;
    return {"ldpc", "noiseless_fixed_point", pass, format("iterations=%.0f", r.iterations_used)};
}

CheckResult check_w_step_monotone(std::uint64_t seed)
{
    Rng rng = seeded_rng(seed, 108);
    int violations = 0;
    for (int t = 0; t < 30; ++t) {
        const auto in = random_inputs(3, 6, 8, rng);
        RisDesignParams params;
        params.mode = t % 2 == 0 ? RisMode::kPassive : RisMode::kActive;
        params.static_noise = 0.5;
        params.ris_noise = params.mode == RisMode::kActive ? 0.1 : 0.0;
        params.ris_power = 20.0;
        params.ao_iterations = 8;
        params.ao_tolerance = 0.0;
        const auto ao = alternating_optimize(in, params, rng);
        for (std::size_t i = 2; i < ao.trace.size(); i += 2)
            if (ao.trace[i].objective > ao.trace[i - 1].objective * (1 + 1e-12)) ++violations;
    }
    return {"ao", "filter_update_never_increases", violations == 0, format("violations=%.0f", violations)};
}

// K=1, M=2, N=2 passive: compare AO run to convergence against a 64x64
// phase grid where each point uses its own MMSE filter.
CheckResult check_ao_grid(std::uint64_t seed)
{
    Rng rng = seeded_rng(seed, 109);
    const int grid_points = 64;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto in = random_inputs(1, 2, 2, rng);
        RisDesignParams params;
        params.mode = RisMode::kPassive;
        params.static_noise = 0.5;
        params.ao_iterations = 2000;
        params.ao_tolerance = 1e-12;
        const auto ao = alternating_optimize(in, params, rng);
        const double achieved = mse_objective(ao.filters, in, ao.reflection.phi, params);
        double best = std::numeric_limits<double>::infinity();
        CVec phi(2);
        for (int a = 0; a < grid_points; ++a) {
            for (int b = 0; b < grid_points; ++b) {
                phi(0) = std::polar(1.0, 2.0 * std::numbers::pi * a / grid_points);
                phi(1) = std::polar(1.0, 2.0 * std::numbers::pi * b / grid_points);
                const CMat w = mmse_filter_bank(in.equivalent(phi), normalized_noise_covariance(in, phi, params));
                best = std::min(best, mse_objective(w, in, phi, params));
            }
        }
        worst = std::max(worst, achieved / best);
    }
    return {"ao", "within_5pct_of_grid_optimum", worst <= 1.05, format("max_ratio_to_grid=%.4f", worst)};
}

}  // namespace

std::vector<std::string> validation_suites()
{
    return {"equivalence", "stationarity", "truncation", "active", "ao", "complexity", "ldpc"};
}

std::vector<CheckResult> run_validation(std::string_view suite, std::uint64_t seed)
{
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const auto& name : validation_suites()) {
            auto part = run_validation(name, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    if (suite == "equivalence") return {check_equivalence(100, seed)};
    if (suite == "stationarity") return {check_stationarity(50, seed)};
    if (suite == "truncation") return {check_passive_grid(20, 720, seed)};
    if (suite == "active") return {check_active_equality(100, seed)};
    if (suite == "ao") return {check_w_step_monotone(seed), check_ao_grid(seed)};
    if (suite == "complexity") return {check_complexity_anchor(), check_measured_complexity(seed)};
    if (suite == "ldpc") return {check_ldpc_fixed_point(seed), check_ldpc_awgn(400, 3.0, seed)};
    throw std::invalid_argument("unknown validation suite '" + std::string(suite) + "'");
}

void print_report(std::ostream& out, const std::vector<CheckResult>& results)
{
    for (const auto& r : results)
        out << (r.pass ? "PASS " : "FAIL ") << r.suite << '/' << r.name << ' ' << r.detail << '\n';
}

bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace risidd
