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

#include <complex>
#include <cstdint>
#include <random>

namespace risidd {

using Rng = std::mt19937_64;

// Deterministic stream for (seed, stream_id). Distinct stream ids are mixed
// through seed_seq so neighbouring ids do not produce correlated states.
Rng seeded_rng(std::uint64_t seed, std::uint64_t stream_id);

// Stream purposes inside one simulated block; combined with the block index
// so every block owns disjoint, reproducible streams.
enum class StreamPurpose : std::uint64_t {
    kGeometry = 0,
    kSmallScale = 1,
    kAoInit = 2,
    kPayload = 3,
    kNoise = 4,
    kPilots = 5,
};

std::uint64_t block_stream(std::uint64_t block_index, StreamPurpose purpose);

// CN(0, variance) sample.
std::complex<double> complex_normal(Rng& rng, double variance = 1.0);

double uniform01(Rng& rng);

}  // namespace risidd
