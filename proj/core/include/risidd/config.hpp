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

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace risidd {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RisMode { kNone, kPassive, kActive };

std::string_view to_string(RisMode mode);
RisMode parse_ris_mode(std::string_view text);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point2 a, Point2 b);

// Scenario description. Powers are given in dBm here and converted to mW
// (linear) by derive_powers(); nothing below the config boundary sees dBm.
struct SystemConfig {
    // system
    int users = 12;               // K
    int ap_antennas = 32;         // M
    int ris_elements = 64;        // N
    double sigma_x2 = 1.0;        // constellation energy, multiplied by P_U
    RisMode ris_mode = RisMode::kPassive;
    double ris_power_fraction = 0.1;
    double carrier_ghz = 5.0;     // recorded only; path-loss models absorb it

    // powers and noise
    double total_power_dbm = 30.0;   // P_T
    double static_noise_dbm = -100.0; // sigma_s^2
    double ris_noise_dbm = 0.0;       // sigma_v^2, ignored unless active
    bool normalize_by_rate = false;   // P_U /= R when set

    // geometry (m)
    Point2 ap_pos{0.0, 0.0};
    Point2 passive_ris_pos{400.0, 10.0};
    Point2 active_ris_pos{200.0, 10.0};
    Point2 user_center{400.0, 0.0};
    double user_radius = 5.0;
    double min_distance = 1.0;

    // code
    int code_n = 512;
    double code_rate = 0.5;
    int code_col_degree = 3;
    std::uint64_t code_seed = 1;
    int ldpc_iterations = 10;
    bool ldpc_min_sum = false;

    // iterative processing
    int idd_iterations = 3;   // tau
    int ao_iterations = 5;    // I_AO
    double ao_tolerance = 1e-6;

    // channel estimation
    int pilot_len = 4;
    double estimation_noise_dbm = -125.0;

    std::uint64_t rng_seed = 1;

    // Position of the RIS for the active mode (or the passive one otherwise).
    Point2 ris_pos() const;

    // Effective RIS element count: zero when no RIS is deployed.
    int active_elements() const { return ris_mode == RisMode::kNone ? 0 : ris_elements; }

    // Throws ConfigError on the first violated invariant.
    void validate() const;
};

struct DerivedPowers {
    double ris_power_mw = 0.0;   // P_RIS
    double user_power_mw = 0.0;  // P_U
};

double dbm_to_linear(double dbm);
double linear_to_dbm(double mw);

DerivedPowers derive_powers(const SystemConfig& cfg);

// Effective sigma_v^2 in mW (zero unless the RIS is active).
double effective_ris_noise(const SystemConfig& cfg);

// Per-user transmit power in dBm equal to P_T/K sets total_power_dbm.
void set_power_per_user_dbm(SystemConfig& cfg, double dbm);

// Plain-text configuration: `[section]` headers and `key = value` lines,
// `#` comments. Unknown sections or keys are errors.
SystemConfig parse_config(std::istream& in, SystemConfig base = {});
SystemConfig load_config(const std::string& path, SystemConfig base = {});
void write_config(std::ostream& out, const SystemConfig& cfg);

// Named scenario presets: "scenario1" (passive, sigma_s^2 = -100 dBm) and
// "scenario2" (sigma_s^2 = sigma_v^2 = -95 dBm, active RIS at 200 m).
SystemConfig scenario_preset(std::string_view name);

// Stable 64-bit FNV-1a hash of the serialized config.
std::uint64_t config_hash(const SystemConfig& cfg);

}  // namespace risidd
