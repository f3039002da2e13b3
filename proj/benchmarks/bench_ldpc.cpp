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

#include <random>

#include "risidd/ldpc.hpp"
#include "risidd/rng.hpp"

using namespace risidd;

namespace {

void BM_LdpcDecode(benchmark::State& state)
{
    const auto code = build_code(512, 0.5, 3, 1);
    auto rng = seeded_rng(4, 0);
    std::normal_distribution<double> noise(0.0, 0.8);
    std::vector<double> llr(static_cast<std::size_t>(code.n()));
    for (auto& l : llr) l = -2.0 * (1.0 + noise(rng)) / 0.64;
    for (auto _ : state) benchmark::DoNotOptimize(decode(code, llr));
    state.SetItemsProcessed(state.iterations() * code.n());
}
BENCHMARK(BM_LdpcDecode)->Unit(benchmark::kMicrosecond);

void BM_LdpcBuild(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(build_code(512, 0.5, 3, 1));
}
BENCHMARK(BM_LdpcBuild)->Unit(benchmark::kMillisecond);

}  // namespace
