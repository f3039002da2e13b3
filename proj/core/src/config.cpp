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

#include "risidd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <utility>

namespace risidd {

std::string_view to_string(RisMode mode)
{
    switch (mode) {
    case RisMode::kNone: return "none";
    case RisMode::kPassive: return "passive";
    case RisMode::kActive: return "active";
    }
    return "none";
}

RisMode parse_ris_mode(std::string_view text)
{
    if (text == "none") return RisMode::kNone;
    if (text == "passive") return RisMode::kPassive;
    if (text == "active") return RisMode::kActive;
    throw ConfigError("unknown ris_mode '" + std::string(text) + "'");
}

double distance(Point2 a, Point2 b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

Point2 SystemConfig::ris_pos() const
{
    return ris_mode == RisMode::kActive ? active_ris_pos : passive_ris_pos;
}

void SystemConfig::validate() const
{
    if (users < 1) throw ConfigError("users must be >= 1");
    if (ap_antennas < 1) throw ConfigError("ap_antennas must be >= 1");
    if (ris_elements < 0) throw ConfigError("ris_elements must be >= 0");
    if (ris_elements == 0 && ris_mode != RisMode::kNone)
        throw ConfigError("ris_elements = 0 requires ris_mode = none");
    if (!(ris_power_fraction >= 0.0) || ris_power_fraction >= 1.0)
        throw ConfigError("ris_power_fraction must lie in [0, 1)");
    if (!(sigma_x2 > 0.0)) throw ConfigError("sigma_x2 must be positive");
    if (user_radius < 0.0) throw ConfigError("user_radius must be >= 0");
    if (!(min_distance > 0.0)) throw ConfigError("min_distance must be positive");
    if (code_n < 2 || !(code_rate > 0.0) || code_rate >= 1.0)
        throw ConfigError("invalid LDPC block length or rate");
    const double k_info = code_n * code_rate;
    if (std::abs(k_info - std::round(k_info)) > 1e-9)
        throw ConfigError("code_n * code_rate must be integral");
    if (code_n % 2 != 0) throw ConfigError("code_n must be even for QPSK");
    if (code_col_degree < 2) throw ConfigError("code_col_degree must be >= 2");
    if (ldpc_iterations < 1) throw ConfigError("ldpc_iterations must be >= 1");
    if (idd_iterations < 1) throw ConfigError("idd_iterations must be >= 1");
    if (ao_iterations < 1) throw ConfigError("ao_iterations must be >= 1");
    if (pilot_len < 1) throw ConfigError("pilot_len must be >= 1");
    for (double v : {total_power_dbm, static_noise_dbm, ris_noise_dbm, estimation_noise_dbm})
        if (!std::isfinite(v)) throw ConfigError("power values must be finite");
}

double dbm_to_linear(double dbm)
{
    return std::pow(10.0, dbm / 10.0);
}

double linear_to_dbm(double mw)
{
    return 10.0 * std::log10(mw);
}

DerivedPowers derive_powers(const SystemConfig& cfg)
{
    if (!(cfg.ris_power_fraction >= 0.0) || cfg.ris_power_fraction >= 1.0)
        throw ConfigError("ris_power_fraction must lie in [0, 1)");
    const double total = dbm_to_linear(cfg.total_power_dbm);
    DerivedPowers out;
    if (cfg.ris_mode == RisMode::kActive) {
        out.ris_power_mw = cfg.ris_power_fraction * total;
        out.user_power_mw = (1.0 - cfg.ris_power_fraction) * total / cfg.users;
    } else {
        out.user_power_mw = total / cfg.users;
    }
    if (cfg.normalize_by_rate) out.user_power_mw /= cfg.code_rate;
    return out;
}

double effective_ris_noise(const SystemConfig& cfg)
{
    return cfg.ris_mode == RisMode::kActive ? dbm_to_linear(cfg.ris_noise_dbm) : 0.0;
}

void set_power_per_user_dbm(SystemConfig& cfg, double dbm)
{
    cfg.total_power_dbm = dbm + 10.0 * std::log10(static_cast<double>(cfg.users));
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& v)
{
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError("trailing characters in '" + v + "'");
    return out;
}

long long parse_int(const std::string& v)
{
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError("trailing characters in '" + v + "'");
    return out;
}

bool parse_bool(const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected a boolean, got '" + v + "'");
}

Point2 parse_point(const std::string& v)
{
    // "x, y" with optional parentheses
    std::string s;
    for (char c : v)
        if (c != '(' && c != ')') s.push_back(c);
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("expected 'x, y', got '" + v + "'");
    return {parse_double(trim(s.substr(0, comma))), parse_double(trim(s.substr(comma + 1)))};
}

using Setter = std::function<void(SystemConfig&, const std::string&)>;
using Getter = std::function<std::string(const SystemConfig&)>;

struct Field {
    Setter set;
    Getter get;
};

std::string fmt_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_point(Point2 p)
{
    return fmt_double(p.x) + ", " + fmt_double(p.y);
}

#define RISIDD_INT(member) \
    Field{[](SystemConfig& c, const std::string& v) { c.member = static_cast<decltype(c.member)>(parse_int(v)); }, \
          [](const SystemConfig& c) { return std::to_string(c.member); }}
#define RISIDD_DOUBLE(member) \
    Field{[](SystemConfig& c, const std::string& v) { c.member = parse_double(v); }, \
          [](const SystemConfig& c) { return fmt_double(c.member); }}
#define RISIDD_BOOL(member) \
    Field{[](SystemConfig& c, const std::string& v) { c.member = parse_bool(v); }, \
          [](const SystemConfig& c) { return std::string(c.member ? "true" : "false"); }}
#define RISIDD_POINT(member) \
    Field{[](SystemConfig& c, const std::string& v) { c.member = parse_point(v); }, \
          [](const SystemConfig& c) { return fmt_point(c.member); }}

// Ordered so write_config() output is stable.
const std::map<std::string, std::map<std::string, Field>>& schema()
{
    static const std::map<std::string, std::map<std::string, Field>> table = {
        {"system",
         {{"users", RISIDD_INT(users)},
          {"ap_antennas", RISIDD_INT(ap_antennas)},
          {"ris_elements", RISIDD_INT(ris_elements)},
          {"sigma_x2", RISIDD_DOUBLE(sigma_x2)},
          {"ris_mode",
           Field{[](SystemConfig& c, const std::string& v) { c.ris_mode = parse_ris_mode(v); },
                 [](const SystemConfig& c) { return std::string(to_string(c.ris_mode)); }}},
          {"ris_power_fraction", RISIDD_DOUBLE(ris_power_fraction)},
          {"carrier_ghz", RISIDD_DOUBLE(carrier_ghz)}}},
        {"power",
         {{"total_power_dbm", RISIDD_DOUBLE(total_power_dbm)},
          {"static_noise_dbm", RISIDD_DOUBLE(static_noise_dbm)},
          {"ris_noise_dbm", RISIDD_DOUBLE(ris_noise_dbm)},
          {"normalize_by_rate", RISIDD_BOOL(normalize_by_rate)}}},
        {"geometry",
         {{"ap_pos", RISIDD_POINT(ap_pos)},
          {"passive_ris_pos", RISIDD_POINT(passive_ris_pos)},
          {"active_ris_pos", RISIDD_POINT(active_ris_pos)},
          {"user_center", RISIDD_POINT(user_center)},
          {"user_radius", RISIDD_DOUBLE(user_radius)},
          {"min_distance", RISIDD_DOUBLE(min_distance)}}},
        {"code",
         {{"n", RISIDD_INT(code_n)},
          {"rate", RISIDD_DOUBLE(code_rate)},
          {"col_degree", RISIDD_INT(code_col_degree)},
          {"seed", RISIDD_INT(code_seed)},
          {"iterations", RISIDD_INT(ldpc_iterations)},
          {"min_sum", RISIDD_BOOL(ldpc_min_sum)}}},
        {"receiver",
         {{"idd_iterations", RISIDD_INT(idd_iterations)},
          {"ao_iterations", RISIDD_INT(ao_iterations)},
          {"ao_tolerance", RISIDD_DOUBLE(ao_tolerance)}}},
        {"csi",
         {{"pilot_len", RISIDD_INT(pilot_len)},
          {"estimation_noise_dbm", RISIDD_DOUBLE(estimation_noise_dbm)}}},
        {"simulation", {{"rng_seed", RISIDD_INT(rng_seed)}}},
    };
    return table;
}

#undef RISIDD_INT
#undef RISIDD_DOUBLE
#undef RISIDD_BOOL
#undef RISIDD_POINT

}  // namespace

SystemConfig parse_config(std::istream& in, SystemConfig base)
{
    const auto& table = schema();
    const std::map<std::string, Field>* section = nullptr;
    std::string section_name;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header" + where);
            section_name = trim(std::string_view(line).substr(1, line.size() - 2));
            const auto it = table.find(section_name);
            if (it == table.end()) throw ConfigError("unknown section [" + section_name + "]" + where);
            section = &it->second;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'" + where);
        if (section == nullptr) throw ConfigError("key outside of a section" + where);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const auto field = section->find(key);
        if (field == section->end())
            throw ConfigError("unknown key '" + key + "' in [" + section_name + "]" + where);
        try {
            field->second.set(base, value);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + where);
        }
    }
    base.validate();
    return base;
}

SystemConfig load_config(const std::string& path, SystemConfig base)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, base);
}

void write_config(std::ostream& out, const SystemConfig& cfg)
{
    bool first = true;
    for (const auto& [name, fields] : schema()) {
        if (!first) out << '\n';
        first = false;
        out << '[' << name << "]\n";
        for (const auto& [key, field] : fields) out << key << " = " << field.get(cfg) << '\n';
    }
}

SystemConfig scenario_preset(std::string_view name)
{
    SystemConfig cfg;
    if (name == "scenario1") {
        cfg.static_noise_dbm = -100.0;
        cfg.ris_noise_dbm = 0.0;
        cfg.ris_mode = RisMode::kPassive;
        return cfg;
    }
    if (name == "scenario2") {
        cfg.static_noise_dbm = -95.0;
        cfg.ris_noise_dbm = -95.0;
        cfg.ris_mode = RisMode::kActive;
        return cfg;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::uint64_t config_hash(const SystemConfig& cfg)
{
    std::ostringstream os;
    write_config(os, cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace risidd
