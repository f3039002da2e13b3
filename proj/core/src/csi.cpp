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


#include "risidd/csi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risidd {

CMat dft_patterns(int elements)
{
    const int size = elements + 1;
    CMat p(size, elements);
    for (int t = 0; t < size; ++t)
        for (int n = 0; n < elements; ++n)
            p(t, n) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) * (n + 1) / size);
    return p;
}

PilotPlan make_pilot_plan(int elements, int pilot_len, double pilot_power, double noise_mw)
{
    if (pilot_len < 1) throw std::invalid_argument("make_pilot_plan: pilot_len must be >= 1");
    PilotPlan plan;
    plan.pilot_len = pilot_len;
    plan.pilot_power = pilot_power;
    plan.noise_mw = noise_mw;
    plan.ris_patterns = dft_patterns(elements);
    return plan;
}

namespace {

// Averaged, pilot-matched observation of `signal` over pilot_len slots:
// (1 / L) sum_l (s x_p + n_l) x_p^* / P with x_p = sqrt(P).
CVec matched_observation(const CVec& signal, const PilotPlan& plan, Rng& rng)
{
    CVec acc = CVec::Zero(signal.size());
    const double amp = std::sqrt(plan.pilot_power);
    for (int l = 0; l < plan.pilot_len; ++l) {
        for (Eigen::Index m = 0; m < signal.size(); ++m) {
            const cd noise = plan.noise_mw > 0.0 ? complex_normal(rng, plan.noise_mw) : cd{};
            acc(m) += (signal(m) * amp + noise) * amp;
        }
    }
    return acc / (plan.pilot_power * plan.pilot_len);
}

}  // namespace

CMat estimate_direct(const ChannelSet& cs, const PilotPlan& plan, Rng& rng)
{
    if (!(plan.pilot_power > 0.0)) throw std::invalid_argument("estimate_direct: pilot power must be positive");
    CMat h_hat(cs.direct.rows(), cs.direct.cols());
    for (int k = 0; k < cs.users(); ++k) h_hat.col(k) = matched_observation(cs.direct.col(k), plan, rng);
    return h_hat;
}

std::vector<CMat> estimate_cascaded(const ChannelSet& cs, const PilotPlan& plan, const CMat& direct_hat, Rng& rng)
{
    const int n = cs.elements();
    const CMat& patterns = plan.ris_patterns;
    if (patterns.cols() != n || patterns.rows() < n)
        throw std::invalid_argument("estimate_cascaded: pattern matrix must be (N + 1) x N");
    std::vector<CMat> out;
    out.reserve(static_cast<std::size_t>(cs.users()));
    if (n == 0) {
        for (int k = 0; k < cs.users(); ++k) out.emplace_back(cs.direct.rows(), 0);
        return out;
    }
    // LS: Z = A P^T  =>  A = Z conj(P) (P^T conj(P))^-1
    const CMat gram = patterns.transpose() * patterns.conjugate();
    Eigen::ColPivHouseholderQR<CMat> qr(gram);
    if (qr.rank() < n) throw std::invalid_argument("estimate_cascaded: singular pattern matrix");

    const auto slots = patterns.rows();
    for (int k = 0; k < cs.users(); ++k) {
        const CMat a_k = cs.cascaded(k);
        CMat z(cs.direct.rows(), slots);
        for (Eigen::Index t = 0; t < slots; ++t) {
            const CVec signal = cs.direct.col(k) + a_k * patterns.row(t).transpose();
            z.col(t) = matched_observation(signal, plan, rng) - direct_hat.col(k);
        }
        const CMat rhs = z * patterns.conjugate();
        // gram is Hermitian: A = rhs gram^-1 = (gram^-1 rhs^H)^H
        out.push_back(qr.solve(rhs.adjoint()).adjoint());
    }
    return out;
}

CsiEstimate estimate_csi(const ChannelSet& cs, const PilotPlan& plan, Rng& rng)
{
    CsiEstimate est;
    est.direct = estimate_direct(cs, plan, rng);
    est.cascaded = estimate_cascaded(cs, plan, est.direct, rng);
    est.direct_nmse = equivalent_nmse(est.direct, cs.direct);
    est.cascaded_nmse = RVec::Zero(cs.users());
    for (int k = 0; k < cs.users() && cs.elements() > 0; ++k) {
        const CMat a_k = cs.cascaded(k);
        est.cascaded_nmse(k) = (est.cascaded[k] - a_k).squaredNorm() / a_k.squaredNorm();
    }
    return est;
}

CMat rebuild_equivalent(const CsiEstimate& est, const CVec& phi)
{
    CMat h = est.direct;
    if (phi.size() == 0) return h;
    for (Eigen::Index k = 0; k < h.cols(); ++k) {
        if (est.cascaded[k].cols() != phi.size()) throw std::invalid_argument("rebuild_equivalent: phi length mismatch");
        h.col(k) += est.cascaded[k] * phi;
    }
    return h;
}

RVec equivalent_nmse(const CMat& estimate, const CMat& truth)
{
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
        throw std::invalid_argument("equivalent_nmse: dimension mismatch");
    RVec out(truth.cols());
    for (Eigen::Index k = 0; k < truth.cols(); ++k)
        out(k) = (estimate.col(k) - truth.col(k)).squaredNorm() / truth.col(k).squaredNorm();
    return out;
}

}  // namespace risidd
