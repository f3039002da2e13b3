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


#pragma once

#include <iosfwd>
#include <vector>

#include "risidd/channel.hpp"
#include "risidd/config.hpp"
#include "risidd/linalg.hpp"
#include "risidd/rng.hpp"

namespace risidd {

// Channel knowledge available to the reflection design. With estimated CSI
// `direct` and `cascaded` hold estimates; `ap_ris` (dynamic-noise weighting)
// and `ris_users` (incident power at the RIS) are always the physical links.
struct RisDesignInputs {
    CMat direct;                 // M x K
    std::vector<CMat> cascaded;  // A_k = G diag(f_k), M x N each
    CMat ap_ris;                 // G, M x N
    CMat ris_users;              // F, N x K
    double g_loss = 0.0;

    int elements() const { return static_cast<int>(ap_ris.cols()); }
    int users() const { return static_cast<int>(direct.cols()); }
    // h_k + A_k phi for every k.
    CMat equivalent(const CVec& phi) const;
};

RisDesignInputs design_inputs(const ChannelSet& cs);

// How the RIS noise enters the MSE. kElementwise is the expectation over
// n ~ CN(0, sigma_v^2 I): sigma_v^2 sum_n |phi_n|^2 ||W g_n||^2. kFullGram
// uses sigma_v^2 ||W G phi||^2, whose stationary point carries the full
// (WG)^H (WG) matrix.
enum class RisNoiseModel { kElementwise, kFullGram };

struct RisDesignParams {
    RisMode mode = RisMode::kPassive;
    double sigma_x2 = 1.0;      // symbol energy (mW)
    double static_noise = 1.0;  // sigma_s^2 (mW)
    double ris_noise = 0.0;     // sigma_v^2 (mW), zero unless active
    double ris_power = 0.0;     // P_RIS (mW)
    int ao_iterations = 5;
    double ao_tolerance = 1e-6;
    RisNoiseModel noise_model = RisNoiseModel::kElementwise;
};

RisDesignParams design_params(const SystemConfig& cfg, const DerivedPowers& powers);

struct ReflectionVector {
    CVec phi;
    RisMode mode = RisMode::kNone;
    double reflected_power = 0.0;        // P_A = sigma_x^2 sum_i ||diag(phi) f_i||^2
    double dynamic_noise_power = 0.0;    // ||phi||^2 sigma_v^2
    double below_unit_gain_fraction = 0.0;  // share of |phi_n| < 1
};

// Power bookkeeping for a given phi.
ReflectionVector account(const CVec& phi, RisMode mode, const CMat& ris_users, const RisDesignParams& params);

struct RisIntermediates {
    CMat beta;        // sum_i (W A_i)^H (W A_i)
    CVec psi;         // sum_i (W A_i)^H (e_i - W h_i)
    CMat noise_gram;  // diag((WG)^H (WG)) or the full Gram, per noise model
};

RisIntermediates compute_intermediates(const CMat& filters, const RisDesignInputs& in, RisNoiseModel model,
                                       OpCounter* counter = nullptr);

// Expected squared error E||x - W(Hbar x + G diag(phi) n_v + n_s)||^2 for the
// chosen noise model.
double mse_objective(const CMat& filters, const RisDesignInputs& in, const CVec& phi, const RisDesignParams& params);

// ||I - W Hbar(phi)||_F^2: the sum over users of |1 - mu_k|^2 plus the
// leakage of every user into the other outputs.
double llr_refinement_objective(const CMat& filters, const RisDesignInputs& in, const CVec& phi);

// phi_o = [beta + (sigma_v^2 / sigma_x^2) Gram + eps I]^-1 psi with the
// loading eps = 1e-10 trace / N.
CVec solve_phi_unconstrained(const CMat& filters, const RisDesignInputs& in, const RisDesignParams& params,
                             OpCounter* counter = nullptr);

// phi_o = [beta + eps I]^-1 psi.
CVec solve_phi_llr(const CMat& filters, const RisDesignInputs& in, OpCounter* counter = nullptr);

// Scales phi_o so that P_A + ||phi||^2 sigma_v^2 = P_RIS. Throws
// std::invalid_argument for a zero phi_o or non-positive P_RIS.
ReflectionVector truncate_active(const CVec& phi_o, const CMat& ris_users, const RisDesignParams& params);

// Elementwise phi_o / |phi_o|; zero entries map to 1.
ReflectionVector truncate_passive(const CVec& phi_o);

struct AoTraceEntry {
    int iteration = 0;
    bool after_filter_update = false;
    double objective = 0.0;
    double feasibility_slack = 0.0;
};

struct AoResult {
    CMat filters;  // K x M, MMSE for the final phi
    ReflectionVector reflection;
    int iterations_used = 0;
    std::vector<AoTraceEntry> trace;
};

// Alternates an exact-MMSE filter update (uniform priors) with the closed
// form and mode truncation, starting from random unit-modulus phases.
AoResult alternating_optimize(const RisDesignInputs& in, const RisDesignParams& params, Rng& rng,
                              OpCounter* counter = nullptr);

// Normalized noise covariance (sigma_v^2 G diag(|phi|^2) G^H + sigma_s^2 I) / sigma_x^2
// (or the full-Gram variant).
CMat normalized_noise_covariance(const RisDesignInputs& in, const CVec& phi, const RisDesignParams& params);

// CSV: iteration,step,objective,feasibility_slack
void write_ao_trace(std::ostream& out, const AoResult& result);

}  // namespace risidd
