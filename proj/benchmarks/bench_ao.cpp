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


#include <benchmark/benchmark.h>

#include "risidd/ris_optimizer.hpp"
#include "risidd/rng.hpp"

using namespace risidd;

namespace {

RisDesignInputs random_inputs(int k, int m, int n, Rng& rng)
{
    RisDesignInputs in;
    in.direct = CMat(m, k);
    in.ap_ris = CMat(m, n);
    in.ris_users = CMat(n, k);
    for (auto* mat : {&in.direct, &in.ap_ris, &in.ris_users})
        for (Eigen::Index j = 0; j < mat->cols(); ++j)
            for (Eigen::Index i = 0; i < mat->rows(); ++i) (*mat)(i, j) = complex_normal(rng);
    for (int u = 0; u < k; ++u) in.cascaded.push_back(in.ap_ris * in.ris_users.col(u).asDiagonal());
    in.g_loss = 1.0;
    return in;
}

void BM_AlternatingOptimize(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    auto rng = seeded_rng(1, 0);
    const auto in = random_inputs(12, 32, n, rng);
    RisDesignParams params;
    params.static_noise = 0.1;
    params.ao_iterations = 5;
    params.ao_tolerance = 0.0;
    for (auto _ : state) {
        auto r = seeded_rng(2, 0);
        benchmark::DoNotOptimize(alternating_optimize(in, params, r));
    }
}
BENCHMARK(BM_AlternatingOptimize)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
