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


#include "risidd/ris_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "risidd/detector.hpp"

namespace risidd {

CMat RisDesignInputs::equivalent(const CVec& phi) const
{
    CMat h = direct;
    if (phi.size() == 0) return h;
    if (static_cast<int>(phi.size()) != elements()) throw std::invalid_argument("RisDesignInputs: phi length mismatch");
    for (int k = 0; k < users(); ++k) h.col(k) += cascaded[k] * phi;
    return h;
}

RisDesignInputs design_inputs(const ChannelSet& cs)
{
    RisDesignInputs in;
    in.direct = cs.direct;
    in.ap_ris = cs.ap_ris;
    in.ris_users = cs.ris_users;
    in.g_loss = cs.g_loss;
    in.cascaded.reserve(static_cast<std::size_t>(cs.users()));
    for (int k = 0; k < cs.users(); ++k) in.cascaded.push_back(cs.cascaded(k));
    return in;
}

RisDesignParams design_params(const SystemConfig& cfg, const DerivedPowers& powers)
{
    RisDesignParams p;
    p.mode = cfg.ris_mode;
    p.sigma_x2 = cfg.sigma_x2 * powers.user_power_mw;
    p.static_noise = dbm_to_linear(cfg.static_noise_dbm);
    p.ris_noise = effective_ris_noise(cfg);
    p.ris_power = powers.ris_power_mw;
    p.ao_iterations = cfg.ao_iterations;
    p.ao_tolerance = cfg.ao_tolerance;
    return p;
}

ReflectionVector account(const CVec& phi, RisMode mode, const CMat& ris_users, const RisDesignParams& params)
{
    ReflectionVector r;
    r.phi = phi;
    r.mode = mode;
    if (phi.size() == 0) return r;
    const RVec incident = ris_users.rowwise().squaredNorm();
    r.reflected_power = params.sigma_x2 * phi.cwiseAbs2().dot(incident);
    r.dynamic_noise_power = phi.squaredNorm() * params.ris_noise;
    int below = 0;
    for (Eigen::Index n = 0; n < phi.size(); ++n)
        if (std::abs(phi(n)) < 1.0) ++below;
    r.below_unit_gain_fraction = static_cast<double>(below) / static_cast<double>(phi.size());
    return r;
}

RisIntermediates compute_intermediates(const CMat& filters, const RisDesignInputs& in, RisNoiseModel model,
                                       OpCounter* counter)
{
    const int n = in.elements();
    const int users = in.users();
    if (filters.rows() != users || filters.cols() != in.direct.rows())
        throw std::invalid_argument("compute_intermediates: filter bank must be K x M");
    RisIntermediates out;
    out.beta = CMat::Zero(n, n);
    out.psi = CVec::Zero(n);
    const CMat residual = CMat::Identity(users, users) - counted_product(filters, in.direct, counter);
    for (int i = 0; i < users; ++i) {
        const CMat wa = counted_product(filters, in.cascaded[i], counter);
        count(counter, static_cast<std::uint64_t>(n) * n * users);
        out.beta.noalias() += wa.adjoint() * wa;
        count(counter, static_cast<std::uint64_t>(n) * users);
        out.psi.noalias() += wa.adjoint() * residual.col(i);
    }
    const CMat wg = counted_product(filters, in.ap_ris, counter);
    if (model == RisNoiseModel::kFullGram) {
        count(counter, static_cast<std::uint64_t>(n) * n * users);
        out.noise_gram = wg.adjoint() * wg;
    } else {
        out.noise_gram = CMat::Zero(n, n);
        out.noise_gram.diagonal() = wg.colwise().squaredNorm().transpose().cast<cd>();
    }
    return out;
}

CMat normalized_noise_covariance(const RisDesignInputs& in, const CVec& phi, const RisDesignParams& params)
{
    const auto m = in.direct.rows();
    CMat cov = CMat::Identity(m, m) * params.static_noise;
    if (phi.size() > 0 && params.ris_noise > 0.0) {
        if (params.noise_model == RisNoiseModel::kFullGram) {
            const CVec g_phi = in.ap_ris * phi;
            cov += params.ris_noise * g_phi * g_phi.adjoint();
        } else {
            const CMat scaled = in.ap_ris * phi.cwiseAbs().asDiagonal();
            cov += params.ris_noise * scaled * scaled.adjoint();
        }
    }
    return cov / params.sigma_x2;
}

double mse_objective(const CMat& filters, const RisDesignInputs& in, const CVec& phi, const RisDesignParams& params)
{
    const auto users = in.users();
    const CMat hbar = in.equivalent(phi);
    double j = params.sigma_x2 * (CMat::Identity(users, users) - filters * hbar).squaredNorm();
    j += params.static_noise * filters.squaredNorm();
    if (phi.size() > 0 && params.ris_noise > 0.0) {
        const CMat wg = filters * in.ap_ris;
        if (params.noise_model == RisNoiseModel::kFullGram)
            j += params.ris_noise * (wg * phi).squaredNorm();
        else
            j += params.ris_noise * phi.cwiseAbs2().dot(wg.colwise().squaredNorm().transpose());
    }
    return j;
}

double llr_refinement_objective(const CMat& filters, const RisDesignInputs& in, const CVec& phi)
{
    const auto users = in.users();
    return (CMat::Identity(users, users) - filters * in.equivalent(phi)).squaredNorm();
}

namespace {

CVec solve_loaded(CMat system, const CVec& rhs, OpCounter* counter)
{
    const auto n = system.rows();
    if (n == 0) return CVec(0);
    const double load = 1e-10 * system.diagonal().real().sum() / static_cast<double>(n);
    system.diagonal().array() += load;
    return hermitian_solve(system, rhs, counter);
}

}  // namespace

CVec solve_phi_unconstrained(const CMat& filters, const RisDesignInputs& in, const RisDesignParams& params,
                             OpCounter* counter)
{
    const auto terms = compute_intermediates(filters, in, params.noise_model, counter);
    CMat system = terms.beta;
    if (params.ris_noise > 0.0) system += (params.ris_noise / params.sigma_x2) * terms.noise_gram;
    return solve_loaded(std::move(system), terms.psi, counter);
}

CVec solve_phi_llr(const CMat& filters, const RisDesignInputs& in, OpCounter* counter)
{
    const auto terms = compute_intermediates(filters, in, RisNoiseModel::kElementwise, counter);
    return solve_loaded(terms.beta, terms.psi, counter);
}

ReflectionVector truncate_active(const CVec& phi_o, const CMat& ris_users, const RisDesignParams& params)
{
    if (!(params.ris_power > 0.0)) throw std::invalid_argument("truncate_active: P_RIS must be positive");
    const auto raw = account(phi_o, RisMode::kActive, ris_users, params);
    const double used = raw.reflected_power + raw.dynamic_noise_power;
    if (!(used > 0.0)) throw std::invalid_argument("truncate_active: phi_o carries no power");
    return account(phi_o * std::sqrt(params.ris_power / used), RisMode::kActive, ris_users, params);
}

ReflectionVector truncate_passive(const CVec& phi_o)
{
    ReflectionVector r;
    r.mode = RisMode::kPassive;
    r.phi.resize(phi_o.size());
    for (Eigen::Index n = 0; n < phi_o.size(); ++n) {
        const double mag = std::abs(phi_o(n));
        r.phi(n) = mag > 0.0 ? phi_o(n) / mag : cd{1.0, 0.0};
    }
    return r;
}

namespace {

double feasibility_slack(const ReflectionVector& r, const RisDesignParams& params)
{
    if (r.mode == RisMode::kActive) return params.ris_power - (r.reflected_power + r.dynamic_noise_power);
    double worst = 0.0;
    for (Eigen::Index n = 0; n < r.phi.size(); ++n) worst = std::max(worst, std::abs(std::abs(r.phi(n)) - 1.0));
    return worst;
}

ReflectionVector truncate(const CVec& phi_o, const RisDesignInputs& in, const RisDesignParams& params)
{
    if (params.mode == RisMode::kActive) {
        ReflectionVector r = truncate_active(phi_o, in.ris_users, params);
        return r;
    }
    ReflectionVector r = truncate_passive(phi_o);
    return account(r.phi, RisMode::kPassive, in.ris_users, params);
}

}  // namespace

AoResult alternating_optimize(const RisDesignInputs& in, const RisDesignParams& params, Rng& rng, OpCounter* counter)
{
    AoResult result;
    const int n = in.elements();
    const auto filter_for = [&](const CVec& phi) {
        const CMat hbar = in.equivalent(phi);
        count(counter, static_cast<std::uint64_t>(in.direct.rows()) * n * in.users());
        return mmse_filter_bank(hbar, normalized_noise_covariance(in, phi, params), counter);
    };

    if (params.mode == RisMode::kNone || n == 0) {
        result.reflection.mode = RisMode::kNone;
        result.filters = filter_for(CVec(0));
        return result;
    }

    CVec phi(n);
    for (int e = 0; e < n; ++e) phi(e) = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
    ReflectionVector current = truncate(phi, in, params);

    double previous = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= params.ao_iterations; ++it) {
        const CMat filters = filter_for(current.phi);
        result.trace.push_back({it, true, mse_objective(filters, in, current.phi, params),
                                feasibility_slack(current, params)});
        const CVec phi_o = solve_phi_unconstrained(filters, in, params, counter);
        current = truncate(phi_o, in, params);
        const double objective = mse_objective(filters, in, current.phi, params);
        result.trace.push_back({it, false, objective, feasibility_slack(current, params)});
        result.iterations_used = it;
        if (std::abs(previous - objective) <= params.ao_tolerance * std::abs(objective)) break;
        previous = objective;
    }
    result.reflection = current;
    result.filters = filter_for(current.phi);
    return result;
}

void write_ao_trace(std::ostream& out, const AoResult& result)
{
    out << "iteration,step,objective,feasibility_slack\n";
    out << std::setprecision(12);
    for (const auto& e : result.trace)
        out << e.iteration << ',' << (e.after_filter_update ? "filter" : "reflection") << ',' << e.objective << ','
            << e.feasibility_slack << '\n';
}

}  // namespace risidd
