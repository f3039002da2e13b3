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
#include <string>
#include <vector>

#include "risidd/config.hpp"
#include "risidd/linalg.hpp"
#include "risidd/rng.hpp"

namespace risidd {

// 3GPP large-scale models, attenuation in dB with d in metres. Throw
// std::invalid_argument for d <= 0.
double path_loss_weak(double d);    // AP-user: 41.2 + 28.7 log10(d)
double path_loss_strong(double d);  // AP-RIS and RIS-user: 37.3 + 22.0 log10(d)

// Linear power gain 10^(-PL/10).
double db_loss_to_gain(double loss_db);

struct Geometry {
    Point2 ap_pos;
    Point2 ris_pos;
    std::vector<Point2> user_pos;
};

// Users uniform in the disc of radius user_radius around user_center.
Geometry draw_geometry(const SystemConfig& cfg, Rng& rng);

// Unit-variance small-scale fading, kept separate from the large-scale
// gains so schemes with different RIS placements can share a draw.
struct SmallScaleFading {
    CMat direct;     // M x K
    CMat ap_ris;     // M x N
    CMat ris_users;  // N x K
};

SmallScaleFading draw_small_scale(int ap_antennas, int ris_elements, int users, Rng& rng);

struct ChannelSet {
    CMat direct;     // H: M x K, columns h_k
    CMat ap_ris;     // G: M x N
    CMat ris_users;  // F: N x K, columns f_k
    double g_loss = 0.0;  // linear AP-RIS gain from path_loss_strong

    int antennas() const { return static_cast<int>(direct.rows()); }
    int users() const { return static_cast<int>(direct.cols()); }
    int elements() const { return static_cast<int>(ap_ris.cols()); }

    // A_k = G diag(f_k).
    CMat cascaded(int k) const;
};

// Scales the small-scale draw by the large-scale gain of each link
// (distances clamped to cfg.min_distance). When cfg.ris_mode is none the
// RIS links are dropped (N = 0).
ChannelSet apply_large_scale(const SmallScaleFading& fading, const Geometry& geom, const SystemConfig& cfg);

ChannelSet draw_channels(const Geometry& geom, const SystemConfig& cfg, Rng& rng);

// Columns h_k + G diag(phi) f_k. An empty phi (N = 0) returns H.
CMat equivalent_channel(const ChannelSet& cs, const CVec& phi);

struct NoiseRealization {
    CVec static_noise;  // n_s, M entries
    CVec ris_noise;     // n_v, N entries (zero unless active)
};

NoiseRealization draw_noise(int antennas, int elements, double static_noise_mw, double ris_noise_mw, Rng& rng);

// y = sum_i hbar_i x_i + G diag(phi) n_v + n_s.
CVec received_signal(const ChannelSet& cs, const CVec& phi, const CVec& symbols, const NoiseRealization& noise);

// Named complex arrays in a small binary container:
//   "RISCH001" | u32 count | { u32 name_len | name | u64 rows | u64 cols |
//   rows*cols (re, im) float64 pairs, column-major }
// all little-endian.
struct NamedArray {
    std::string name;
    CMat data;
};

void write_arrays(std::ostream& out, const std::vector<NamedArray>& arrays);
std::vector<NamedArray> read_arrays(std::istream& in);

void write_channel_dump(const std::string& path, const ChannelSet& cs);
ChannelSet read_channel_dump(const std::string& path);

}  // namespace risidd
