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

#include <vector>

#include "risidd/channel.hpp"
#include "risidd/linalg.hpp"
#include "risidd/rng.hpp"

namespace risidd {

// Two-stage pilot protocol. Stage one: RIS off, each user sends pilot_len
// unit-modulus pilots (power pilot_power) in its own slots. Stage two: for
// each of the N + 1 rows of ris_patterns, each user repeats pilot_len
// pilots in its own slots while the RIS applies that row.
struct PilotPlan {
    int pilot_len = 4;
    double pilot_power = 1.0;  // mW
    double noise_mw = 0.0;     // estimation noise variance
    CMat ris_patterns;         // (N + 1) x N
};

// Columns 1..N of the (N + 1)-point DFT matrix: unit modulus, orthogonal
// columns, each orthogonal to the all-ones vector.
CMat dft_patterns(int elements);

PilotPlan make_pilot_plan(int elements, int pilot_len, double pilot_power, double noise_mw);

struct CsiEstimate {
    CMat direct;                 // H_hat, M x K
    std::vector<CMat> cascaded;  // estimates of G diag(f_k)
    RVec direct_nmse;            // per user, ||h_hat - h||^2 / ||h||^2
    RVec cascaded_nmse;          // per user, Frobenius
};

// Least-squares direct links with the RIS switched off.
CMat estimate_direct(const ChannelSet& cs, const PilotPlan& plan, Rng& rng);

// Least-squares cascaded links from the patterned slots after removing the
// direct-link estimate. Throws std::invalid_argument if the pattern matrix
// has deficient column rank.
std::vector<CMat> estimate_cascaded(const ChannelSet& cs, const PilotPlan& plan, const CMat& direct_hat, Rng& rng);

CsiEstimate estimate_csi(const ChannelSet& cs, const PilotPlan& plan, Rng& rng);

// h_hat_k + A_hat_k phi.
CMat rebuild_equivalent(const CsiEstimate& est, const CVec& phi);

// Normalized squared error of an equivalent-channel estimate, per user.
RVec equivalent_nmse(const CMat& estimate, const CMat& truth);

}  // namespace risidd
