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


#include "risidd/modem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risidd {

double clamp_llr(double llr)
{
    if (std::isnan(llr)) return 0.0;
    return std::clamp(llr, -kLlrClamp, kLlrClamp);
}

double bit_one_probability(double llr)
{
    return 1.0 / (1.0 + std::exp(-clamp_llr(llr)));
}

Constellation::Constellation(std::vector<std::complex<double>> points, int bits_per_symbol)
    : points_(std::move(points)), bits_per_symbol_(bits_per_symbol)
{
    if (bits_per_symbol_ < 1 || points_.size() != (std::size_t{1} << bits_per_symbol_))
        throw std::invalid_argument("constellation size must be 2^bits_per_symbol");
}

Constellation Constellation::qpsk(double energy)
{
    const double s = std::sqrt(energy / 2.0);
    return Constellation({{-s, s}, {s, s}, {-s, -s}, {s, -s}}, 2);
}

double Constellation::energy() const
{
    double e = 0.0;
    for (const auto& p : points_) e += std::norm(p);
    return e / static_cast<double>(points_.size());
}

std::vector<std::complex<double>> Constellation::map_bits(std::span<const std::uint8_t> bits) const
{
    const auto m = static_cast<std::size_t>(bits_per_symbol_);
    if (bits.size() % m != 0) throw std::invalid_argument("map_bits: bit count not a multiple of bits per symbol");
    std::vector<std::complex<double>> out(bits.size() / m);
    for (std::size_t s = 0; s < out.size(); ++s) {
        std::size_t label = 0;
        for (std::size_t l = 0; l < m; ++l) label = (label << 1) | (bits[s * m + l] & 1u);
        out[s] = points_[label];
    }
    return out;
}

std::vector<double> Constellation::symbol_probabilities(std::span<const double> bit_llrs) const
{
    if (bit_llrs.size() != static_cast<std::size_t>(bits_per_symbol_))
        throw std::invalid_argument("symbol_probabilities: expected one LLR per bit");
    std::vector<double> p1(bit_llrs.size());
    for (std::size_t l = 0; l < bit_llrs.size(); ++l) p1[l] = bit_one_probability(bit_llrs[l]);
    std::vector<double> probs(points_.size());
    for (std::size_t label = 0; label < points_.size(); ++label) {
        double p = 1.0;
        for (int l = 0; l < bits_per_symbol_; ++l) p *= bit(label, l) != 0 ? p1[l] : 1.0 - p1[l];
        probs[label] = p;
    }
    return probs;
}

std::complex<double> soft_symbol(const Constellation& c, std::span<const double> bit_llrs)
{
    const auto probs = c.symbol_probabilities(bit_llrs);
    std::complex<double> mean{0.0, 0.0};
    for (std::size_t label = 0; label < c.size(); ++label) mean += probs[label] * c.point(label);
    return mean;
}

double symbol_variance(const Constellation& c, std::span<const double> bit_llrs, std::complex<double> mean)
{
    const auto probs = c.symbol_probabilities(bit_llrs);
    double var = 0.0;
    for (std::size_t label = 0; label < c.size(); ++label) var += probs[label] * std::norm(c.point(label) - mean);
    return var;
}

}  // namespace risidd
