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
#include <vector>

#include "risidd/modem.hpp"

using namespace risidd;
using cplx = std::complex<double>;

namespace {

double p_one(double llr)
{
    return 1.0 / (1.0 + std::exp(-llr));
}

// Joint probability of a QPSK label under independent bit priors.
double joint(int label, double l0, double l1)
{
    const double a = (label >> 1) & 1 ? p_one(l0) : 1 - p_one(l0);
    const double b = label & 1 ? p_one(l1) : 1 - p_one(l1);
    return a * b;
}

}  // namespace

TEST_CASE("qpsk map and energy")
{
    const auto q = Constellation::qpsk(1.0);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(q.point(0) - cplx(-s, s)) < 1e-15);
    CHECK(std::abs(q.point(1) - cplx(s, s)) < 1e-15);
    CHECK(std::abs(q.point(2) - cplx(-s, -s)) < 1e-15);
    CHECK(std::abs(q.point(3) - cplx(s, -s)) < 1e-15);
    CHECK(q.energy() == doctest::Approx(1.0));
    CHECK(Constellation::qpsk(4.0).energy() == doctest::Approx(4.0));

    const std::vector<std::uint8_t> bits{0, 0, 1, 1, 0, 1};
    const auto sym = Constellation::qpsk(2.0).map_bits(bits);
    REQUIRE(sym.size() == 3);
    CHECK(std::abs(sym[0] - cplx(-1, 1)) < 1e-15);
    CHECK(std::abs(sym[1] - cplx(1, -1)) < 1e-15);
    CHECK(std::abs(sym[2] - cplx(1, 1)) < 1e-15);
    const std::vector<std::uint8_t> odd{0, 1, 1};
    CHECK_THROWS(q.map_bits(odd));
}

TEST_CASE("gray neighbours differ in one bit")
{
    const auto q = Constellation::qpsk(1.0);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) continue;
            const double d = std::abs(q.point(a) - q.point(b));
            const int hamming = __builtin_popcount(static_cast<unsigned>(a ^ b));
            if (d < 1.5) CHECK(hamming == 1);
        }
    }
}

TEST_CASE("llr helpers")
{
    CHECK(clamp_llr(100.0) == kLlrClamp);
    CHECK(clamp_llr(-100.0) == -kLlrClamp);
    CHECK(clamp_llr(3.0) == 3.0);
    CHECK(bit_one_probability(0.0) == doctest::Approx(0.5));
    CHECK(bit_one_probability(2.0) == doctest::Approx(p_one(2.0)));
}

TEST_CASE("soft symbol statistics")
{
    const auto q = Constellation::qpsk(1.0);
    const std::vector<double> zero{0.0, 0.0};
    CHECK(std::abs(soft_symbol(q, zero)) < 1e-15);
    CHECK(symbol_variance(q, zero, soft_symbol(q, zero)) == doctest::Approx(1.0));

    const std::vector<double> sure{kLlrClamp, kLlrClamp};
    const cplx m = soft_symbol(q, sure);
    CHECK(std::abs(m - q.point(3)) < 1e-12);
    CHECK(symbol_variance(q, sure, m) < 1e-10);

    for (auto [l0, l1] : {std::pair{2.0, -1.0}, std::pair{-0.3, 4.5}, std::pair{7.0, 0.2}}) {
        const std::vector<double> l{l0, l1};
        cplx mean = 0;
        for (int x = 0; x < 4; ++x) mean += q.point(x) * joint(x, l0, l1);
        double var = 0;
        for (int x = 0; x < 4; ++x) var += std::norm(q.point(x) - mean) * joint(x, l0, l1);
        const cplx got = soft_symbol(q, l);
        CHECK(std::abs(got - mean) < 1e-12);
        CHECK(std::abs(symbol_variance(q, l, got) - var) < 1e-12);
        CHECK(std::norm(got) + var <= q.energy() + 1e-9);

        const auto probs = q.symbol_probabilities(l);
        for (int x = 0; x < 4; ++x) CHECK(std::abs(probs[x] - joint(x, l0, l1)) < 1e-12);

        const std::vector<double> neg{-l0, -l1};
        CHECK(std::abs(soft_symbol(q, neg) + got) < 1e-12);
    }
}
