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

#include "risidd/detector.hpp"
#include "risidd/rng.hpp"

using namespace risidd;

namespace {

void BM_SoftSicDetect(benchmark::State& state)
{
    const int users = 12, antennas = 32, periods = 256;
    const bool with_priors = state.range(0) != 0;
    auto rng = seeded_rng(3, 0);
    CMat h(antennas, users), y(antennas, periods);
    for (Eigen::Index j = 0; j < h.cols(); ++j)
        for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, j) = complex_normal(rng);
    for (Eigen::Index j = 0; j < y.cols(); ++j)
        for (Eigen::Index i = 0; i < y.rows(); ++i) y(i, j) = complex_normal(rng);
    std::vector<std::vector<double>> priors(users);
    if (with_priors) {
        std::normal_distribution<double> g(0.0, 3.0);
        for (auto& p : priors) {
            p.resize(2 * periods);
            for (auto& l : p) l = g(rng);
        }
    }
    const SoftSicDetector det(Constellation::qpsk(1.0), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(det.detect(y, h, priors));
}
BENCHMARK(BM_SoftSicDetect)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
