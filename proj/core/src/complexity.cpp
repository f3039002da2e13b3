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


#include "risidd/complexity.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace risidd {

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::kApRis: return "APRIS";
    case Method::kMmAo: return "MM_AO";
    case Method::kSdr: return "SDR";
    case Method::kPdd: return "PDD";
    case Method::kCe: return "CE";
    case Method::kAdmm: return "ADMM";
    }
    return "?";
}

Method parse_method(std::string_view text)
{
    for (Method m : all_methods())
        if (to_string(m) == text) return m;
    throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

std::vector<Method> all_methods()
{
    return {Method::kApRis, Method::kMmAo, Method::kSdr, Method::kPdd, Method::kCe, Method::kAdmm};
}

std::string_view formula(Method m)
{
    switch (m) {
    case Method::kApRis: return "(M^3 + N^3) K I_AO / 3";
    case Method::kMmAo: return "I_AO I_cvx log(1/eps) N^3.5 (K M^3.5 + K^2 M^2.5)";
    case Method::kSdr: return "K^3.5 + (NM)^3.5 + I_GR (NM)^3";
    case Method::kPdd: return "I_PDD (K^1.5 N^3 + M^3 K / 3)";
    case Method::kCe: return "I_CE N (3 K^2 M + 2 K^3) + M^3 K / 3";
    case Method::kAdmm: return "I_MMSE (M^2 K + M^3 + I_ADMM N^3) + M^3 K / 3";
    }
    return "";
}

double flops(Method method, const ComplexityParams& p)
{
    if (p.users < 1 || p.antennas < 1 || p.elements < 0 || p.iterations < 1 || p.cvx_iterations < 1 ||
        !(p.epsilon > 0.0 && p.epsilon < 1.0))
        throw std::invalid_argument("flops: invalid parameters");
    const double k = p.users;
    const double m = p.antennas;
    const double n = p.elements;
    const double it = p.iterations;
    switch (method) {
    case Method::kApRis:
        return (m * m * m + n * n * n) * k * it / 3.0;
    case Method::kMmAo:
        return it * (p.cvx_iterations * std::log(1.0 / p.epsilon) * std::pow(n, 3.5) *
                     (k * std::pow(m, 3.5) + k * k * std::pow(m, 2.5)));
    case Method::kSdr:
        return std::pow(k, 3.5) + std::pow(n * m, 3.5) + it * std::pow(n * m, 3.0);
    case Method::kPdd:
        return it * (std::pow(k, 1.5) * n * n * n + m * m * m * k / 3.0);
    case Method::kCe:
        return it * n * (3.0 * k * k * m + 2.0 * k * k * k) + m * m * m * k / 3.0;
    case Method::kAdmm:
        return it * (m * m * k + m * m * m + it * n * n * n) + m * m * m * k / 3.0;
    }
    throw std::invalid_argument("flops: unknown method");
}

MeasuredRatio measured_vs_model(const OpCounter& counter, double model)
{
    MeasuredRatio r;
    r.measured = static_cast<double>(counter.complex_mul_adds);
    r.model = model;
    r.ratio = model > 0.0 ? r.measured / model : 0.0;
    r.within_bounds = r.ratio >= 0.5 && r.ratio <= 2.0;
    return r;
}

void write_complexity_table(std::ostream& out, const ComplexityParams& p)
{
    out << "method,formula,count\n";
    for (Method m : all_methods())
        out << to_string(m) << ",\"" << formula(m) << "\"," << std::fixed << std::setprecision(0) << flops(m, p)
            << '\n';
    out.unsetf(std::ios::fixed);
}

}  // namespace risidd
