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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace risidd {

// LLR convention used throughout: L = ln P(b = 1) / P(b = 0).
inline constexpr double kLlrClamp = 30.0;

double clamp_llr(double llr);

// P(b = 1) for a bit with LLR `llr`.
double bit_one_probability(double llr);

// Labelled constellation. Point `label` carries bit l (l = 0 is the first,
// most significant bit) equal to (label >> (bits_per_symbol - 1 - l)) & 1.
class Constellation {
public:
    Constellation(std::vector<std::complex<double>> points, int bits_per_symbol);

    // Gray QPSK [x00, x01, x10, x11] = s * [-1+i, 1+i, -1-i, 1-i] with
    // s = sqrt(energy / 2), i.e. E|x|^2 = energy under uniform priors. The
    // first bit selects the sign of the imaginary part, the second bit the
    // sign of the real part.
    static Constellation qpsk(double energy = 1.0);

    int bits_per_symbol() const { return bits_per_symbol_; }
    std::size_t size() const { return points_.size(); }
    std::span<const std::complex<double>> points() const { return points_; }
    std::complex<double> point(std::size_t label) const { return points_[label]; }
    int bit(std::size_t label, int l) const
    {
        return static_cast<int>((label >> (bits_per_symbol_ - 1 - l)) & 1u);
    }

    // Mean energy under uniform priors.
    double energy() const;

    // Maps bits (0/1), bits_per_symbol per symbol. Throws on a length that
    // is not a multiple of bits_per_symbol.
    std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits) const;

    // Joint symbol probabilities under independent bit priors.
    std::vector<double> symbol_probabilities(std::span<const double> bit_llrs) const;

private:
    std::vector<std::complex<double>> points_;
    int bits_per_symbol_;
};

// Soft mean x~ = sum_x x Pr(x) with Pr(x) = prod_l [1 + exp(-x^l L^l)]^-1,
// x^l = +1 for bit 1 and -1 for bit 0.
std::complex<double> soft_symbol(const Constellation& c, std::span<const double> bit_llrs);

// sum_x |x - mean|^2 Pr(x).
double symbol_variance(const Constellation& c, std::span<const double> bit_llrs,
                       std::complex<double> mean);

struct SoftSymbolStats {
    std::vector<std::complex<double>> x_tilde;
    std::vector<double> variance;
};

}  // namespace risidd
