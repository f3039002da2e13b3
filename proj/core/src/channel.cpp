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


#include "risidd/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace risidd {

double path_loss_weak(double d)
{
    if (!(d > 0.0)) throw std::invalid_argument("path_loss_weak: distance must be positive");
    return 41.2 + 28.7 * std::log10(d);
}

double path_loss_strong(double d)
{
    if (!(d > 0.0)) throw std::invalid_argument("path_loss_strong: distance must be positive");
    return 37.3 + 22.0 * std::log10(d);
}

double db_loss_to_gain(double loss_db)
{
    return std::pow(10.0, -loss_db / 10.0);
}

Geometry draw_geometry(const SystemConfig& cfg, Rng& rng)
{
    Geometry g;
    g.ap_pos = cfg.ap_pos;
    g.ris_pos = cfg.ris_pos();
    g.user_pos.reserve(static_cast<std::size_t>(cfg.users));
    for (int k = 0; k < cfg.users; ++k) {
        // sqrt of a uniform radius fraction gives a uniform area density
        const double r = cfg.user_radius * std::sqrt(uniform01(rng));
        const double angle = 2.0 * std::numbers::pi * uniform01(rng);
        g.user_pos.push_back({cfg.user_center.x + r * std::cos(angle), cfg.user_center.y + r * std::sin(angle)});
    }
    return g;
}

namespace {

CMat unit_gaussian(int rows, int cols, Rng& rng)
{
    CMat m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = complex_normal(rng);
    return m;
}

}  // namespace

SmallScaleFading draw_small_scale(int ap_antennas, int ris_elements, int users, Rng& rng)
{
    SmallScaleFading f;
    f.direct = unit_gaussian(ap_antennas, users, rng);
    f.ap_ris = unit_gaussian(ap_antennas, ris_elements, rng);
    f.ris_users = unit_gaussian(ris_elements, users, rng);
    return f;
}

CMat ChannelSet::cascaded(int k) const
{
    return ap_ris * ris_users.col(k).asDiagonal();
}

ChannelSet apply_large_scale(const SmallScaleFading& fading, const Geometry& geom, const SystemConfig& cfg)
{
    const int users = static_cast<int>(geom.user_pos.size());
    if (fading.direct.cols() != users) throw std::invalid_argument("apply_large_scale: user count mismatch");
    const auto clamp = [&](double d) { return std::max(d, cfg.min_distance); };

    ChannelSet cs;
    cs.direct = fading.direct;
    for (int k = 0; k < users; ++k) {
        const double gain = db_loss_to_gain(path_loss_weak(clamp(distance(geom.ap_pos, geom.user_pos[k]))));
        cs.direct.col(k) *= std::sqrt(gain);
    }
    cs.g_loss = db_loss_to_gain(path_loss_strong(clamp(distance(geom.ap_pos, geom.ris_pos))));
    if (cfg.ris_mode == RisMode::kNone) {
        cs.ap_ris = CMat(cs.direct.rows(), 0);
        cs.ris_users = CMat(0, users);
        return cs;
    }
    cs.ap_ris = fading.ap_ris * std::sqrt(cs.g_loss);
    cs.ris_users = fading.ris_users;
    for (int k = 0; k < users; ++k) {
        const double gain = db_loss_to_gain(path_loss_strong(clamp(distance(geom.ris_pos, geom.user_pos[k]))));
        cs.ris_users.col(k) *= std::sqrt(gain);
    }
    return cs;
}

ChannelSet draw_channels(const Geometry& geom, const SystemConfig& cfg, Rng& rng)
{
    const auto fading =
        draw_small_scale(cfg.ap_antennas, cfg.ris_elements, static_cast<int>(geom.user_pos.size()), rng);
    return apply_large_scale(fading, geom, cfg);
}

CMat equivalent_channel(const ChannelSet& cs, const CVec& phi)
{
    if (phi.size() == 0) return cs.direct;
    if (phi.size() != cs.ap_ris.cols() || cs.ris_users.rows() != phi.size())
        throw std::invalid_argument("equivalent_channel: reflection vector length mismatch");
    return cs.direct + cs.ap_ris * phi.asDiagonal() * cs.ris_users;
}

NoiseRealization draw_noise(int antennas, int elements, double static_noise_mw, double ris_noise_mw, Rng& rng)
{
    NoiseRealization n;
    n.static_noise.resize(antennas);
    for (int m = 0; m < antennas; ++m) n.static_noise(m) = complex_normal(rng, static_noise_mw);
    n.ris_noise = CVec::Zero(elements);
    if (ris_noise_mw > 0.0)
        for (int e = 0; e < elements; ++e) n.ris_noise(e) = complex_normal(rng, ris_noise_mw);
    return n;
}

CVec received_signal(const ChannelSet& cs, const CVec& phi, const CVec& symbols, const NoiseRealization& noise)
{
    if (symbols.size() != cs.direct.cols()) throw std::invalid_argument("received_signal: symbol count mismatch");
    if (noise.static_noise.size() != cs.direct.rows())
        throw std::invalid_argument("received_signal: noise length mismatch");
    CVec y = equivalent_channel(cs, phi) * symbols + noise.static_noise;
    if (phi.size() > 0) {
        if (noise.ris_noise.size() != phi.size()) throw std::invalid_argument("received_signal: RIS noise length mismatch");
        y += cs.ap_ris * phi.cwiseProduct(noise.ris_noise);
    }
    return y;
}

namespace {

constexpr char kMagic[8] = {'R', 'I', 'S', 'C', 'H', '0', '0', '1'};

template <typename T>
void put(std::ostream& out, T value)
{
    static_assert(std::endian::native == std::endian::little, "little-endian host expected");
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in)
{
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("read_arrays: truncated input");
    return value;
}

}  // namespace

void write_arrays(std::ostream& out, const std::vector<NamedArray>& arrays)
{
    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(arrays.size()));
    for (const auto& a : arrays) {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(a.name.size()));
        out.write(a.name.data(), static_cast<std::streamsize>(a.name.size()));
        put<std::uint64_t>(out, static_cast<std::uint64_t>(a.data.rows()));
        put<std::uint64_t>(out, static_cast<std::uint64_t>(a.data.cols()));
        for (Eigen::Index i = 0; i < a.data.size(); ++i) {
            put<double>(out, a.data.data()[i].real());
            put<double>(out, a.data.data()[i].imag());
        }
    }
}

std::vector<NamedArray> read_arrays(std::istream& in)
{
    char magic[sizeof(kMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw std::runtime_error("read_arrays: bad magic");
    const auto count = get<std::uint32_t>(in);
    std::vector<NamedArray> arrays;
    for (std::uint32_t i = 0; i < count; ++i) {
        NamedArray a;
        a.name.resize(get<std::uint32_t>(in));
        in.read(a.name.data(), static_cast<std::streamsize>(a.name.size()));
        const auto rows = static_cast<Eigen::Index>(get<std::uint64_t>(in));
        const auto cols = static_cast<Eigen::Index>(get<std::uint64_t>(in));
        a.data.resize(rows, cols);
        for (Eigen::Index j = 0; j < a.data.size(); ++j) {
            const double re = get<double>(in);
            const double im = get<double>(in);
            a.data.data()[j] = {re, im};
        }
        arrays.push_back(std::move(a));
    }
    return arrays;
}

void write_channel_dump(const std::string& path, const ChannelSet& cs)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    CMat loss(1, 1);
    loss(0, 0) = cs.g_loss;
    write_arrays(out, {{"H", cs.direct}, {"G", cs.ap_ris}, {"F", cs.ris_users}, {"g_loss", loss}});
}

ChannelSet read_channel_dump(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ChannelSet cs;
    bool have_h = false, have_g = false, have_f = false;
    for (auto& a : read_arrays(in)) {
        if (a.name == "H") { cs.direct = std::move(a.data); have_h = true; }
        else if (a.name == "G") { cs.ap_ris = std::move(a.data); have_g = true; }
        else if (a.name == "F") { cs.ris_users = std::move(a.data); have_f = true; }
        else if (a.name == "g_loss" && a.data.size() == 1) cs.g_loss = a.data(0, 0).real();
    }
    if (!have_h || !have_g || !have_f) throw std::runtime_error("channel dump is missing H, G or F");
    if (cs.ap_ris.rows() != cs.direct.rows() || cs.ris_users.cols() != cs.direct.cols() ||
        cs.ris_users.rows() != cs.ap_ris.cols())
        throw std::runtime_error("channel dump has inconsistent dimensions");
    return cs;
}

}  // namespace risidd
