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


#include "risidd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace risidd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b)
{
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double safe_log(double p)
{
    return p > 0.0 ? std::log(p) : kNegInf;
}

// ln P(b = 1) and ln P(b = 0) for LLR l, without forming 1 - p.
double log_p1(double l) { return l >= 0.0 ? -std::log1p(std::exp(-l)) : l - std::log1p(std::exp(l)); }
double log_p0(double l) { return log_p1(-l); }

}  // namespace

double noise_loading(double static_noise_mw, double ris_noise_mw, double g_loss, double phi_norm2, double sigma_x2)
{
    return (g_loss * phi_norm2 * ris_noise_mw + static_noise_mw) / sigma_x2;
}

RVec delta_matrix(std::span<const double> variances, double sigma_x2, int k)
{
    const auto users = static_cast<int>(variances.size());
    if (k < 0 || k >= users) throw std::invalid_argument("delta_matrix: user index out of range");
    RVec d(users);
    for (int i = 0; i < users; ++i) {
        const double v = variances[i];
        if (!(v >= -1e-12 * sigma_x2) || v > sigma_x2 * (1.0 + 1e-9))
            throw std::invalid_argument("delta_matrix: variance outside [0, sigma_x^2]");
        d(i) = std::clamp(v / sigma_x2, 0.0, 1.0);
    }
    d(k) = 1.0;
    return d;
}

CVec mmse_filter(const CMat& heq, const RVec& delta, double loading, int k, OpCounter* counter)
{
    const auto m = heq.rows();
    if (delta.size() != heq.cols() || k < 0 || k >= heq.cols())
        throw std::invalid_argument("mmse_filter: dimension mismatch");
    count(counter, static_cast<std::uint64_t>(m * m * heq.cols()));
    CMat r = heq * delta.asDiagonal() * heq.adjoint();
    r.diagonal().array() += loading;
    return hermitian_solve(r, CVec(heq.col(k)), counter);
}

CMat mmse_filter_bank(const CMat& heq, double loading, OpCounter* counter)
{
    const auto m = heq.rows();
    count(counter, static_cast<std::uint64_t>(m * m * heq.cols()));
    CMat r = heq * heq.adjoint();
    r.diagonal().array() += loading;
    return hermitian_solve(r, heq, counter).adjoint();
}

CMat mmse_filter_bank(const CMat& heq, const CMat& normalized_noise_cov, OpCounter* counter)
{
    const auto m = heq.rows();
    if (normalized_noise_cov.rows() != m || normalized_noise_cov.cols() != m)
        throw std::invalid_argument("mmse_filter_bank: covariance dimension mismatch");
    count(counter, static_cast<std::uint64_t>(m * m * heq.cols()));
    CMat r = heq * heq.adjoint() + normalized_noise_cov;
    return hermitian_solve(r, heq, counter).adjoint();
}

CVec sic_estimate(const CVec& y, const CMat& filters, const CVec& x_tilde, const CMat& heq)
{
    const auto users = heq.cols();
    if (filters.rows() != users || filters.cols() != heq.rows() || y.size() != heq.rows() || x_tilde.size() != users)
        throw std::invalid_argument("sic_estimate: dimension mismatch");
    const CVec residual = y - heq * x_tilde;
    CVec x_hat(users);
    for (Eigen::Index k = 0; k < users; ++k) {
        const CVec r = residual + heq.col(k) * x_tilde(k);
        x_hat(k) = (filters.row(k) * r)(0);
    }
    return x_hat;
}

double estimate_variance(double mu, double sigma_x2)
{
    return std::max(sigma_x2 * (mu - mu * mu), 1e-12 * sigma_x2);
}

QpskPriors QpskPriors::from_bit_llrs(double first, double second)
{
    const double p1 = bit_one_probability(first);
    const double p2 = bit_one_probability(second);
    QpskPriors q;
    q.p = {(1 - p1) * (1 - p2), (1 - p1) * p2, p1 * (1 - p2), p1 * p2};
    return q;
}

double QpskPriors::first_bit_llr() const
{
    return std::log(p[2] + p[3]) - std::log(p[0] + p[1]);
}

double QpskPriors::second_bit_llr() const
{
    return std::log(p[1] + p[3]) - std::log(p[0] + p[2]);
}

std::array<double, 2> llr_exact_qpsk(std::complex<double> x_hat, double mu, double eta2, double sigma_x2,
                                     const QpskPriors& priors)
{
    if (!(eta2 > 0.0)) throw std::invalid_argument("llr_exact_qpsk: eta2 must be positive");
    const auto qpsk = Constellation::qpsk(sigma_x2);
    std::array<double, 4> metric{};
    for (std::size_t label = 0; label < 4; ++label)
        metric[label] = -std::norm(x_hat - mu * qpsk.point(label)) / eta2 + safe_log(priors.p[label]);
    const double l1 = log_sum_exp(metric[2], metric[3]) - log_sum_exp(metric[0], metric[1]);
    const double l2 = log_sum_exp(metric[1], metric[3]) - log_sum_exp(metric[0], metric[2]);
    return {clamp_llr(l1 - priors.first_bit_llr()), clamp_llr(l2 - priors.second_bit_llr())};
}

LlrApprox llr_linear_approx(std::complex<double> x_hat, double mu, double sigma_x2, const QpskPriors& priors)
{
    const double gap = 1.0 - mu;
    if (!(gap > 1e-12)) throw std::domain_error("llr_linear_approx: mu -> 1 makes the metric singular");
    const auto& p = priors.p;
    const double scale = 2.0 * std::numbers::sqrt2 / (std::sqrt(sigma_x2) * gap);

    LlrApprox out;
    auto& t = out.terms;
    t.a = scale * x_hat.real();
    t.a_imag = scale * x_hat.imag();
    t.gamma = scale * (x_hat * std::complex<double>(1.0, 1.0)).real();
    const double log_ratio = std::log(p[3] / p[0]);
    t.eta_i = log_ratio - priors.first_bit_llr();
    t.eta_ii = log_ratio - priors.second_bit_llr();
    t.kappa1 = std::log((p[2] + p[3]) * p[0] / ((p[1] + p[0]) * p[3]));
    t.kappa2 = std::log((p[1] + p[3]) * p[0] / ((p[2] + p[0]) * p[3]));
    t.chi_i = std::log1p(p[2] / p[3] * std::exp(-t.a)) - std::log1p(p[1] / p[0] * std::exp(t.a));
    t.chi_ii = std::log1p(p[1] / p[3] * std::exp(t.a_imag)) - std::log1p(p[2] / p[0] * std::exp(-t.a_imag));
    // chi_i ~ -a + kappa1 and chi_ii ~ a_imag + kappa2
    out.llr[0] = t.eta_i + t.kappa1 + t.gamma - t.a;
    out.llr[1] = t.eta_ii + t.kappa2 + t.gamma + t.a_imag;
    return out;
}

void extrinsic_llrs(const Constellation& c, std::complex<double> x_hat, double mu, double eta2,
                    std::span<const double> prior_llrs, std::span<double> out)
{
    const int bits = c.bits_per_symbol();
    if (static_cast<int>(out.size()) != bits || (!prior_llrs.empty() && static_cast<int>(prior_llrs.size()) != bits))
        throw std::invalid_argument("extrinsic_llrs: size mismatch");
    std::array<double, 16> clamped{};
    for (int l = 0; l < bits; ++l) clamped[l] = prior_llrs.empty() ? 0.0 : clamp_llr(prior_llrs[l]);

    std::array<double, 16> num{}, den{};
    num.fill(kNegInf);
    den.fill(kNegInf);
    for (std::size_t label = 0; label < c.size(); ++label) {
        double metric = -std::norm(x_hat - mu * c.point(label)) / eta2;
        for (int l = 0; l < bits; ++l) metric += c.bit(label, l) != 0 ? log_p1(clamped[l]) : log_p0(clamped[l]);
        for (int l = 0; l < bits; ++l) {
            auto& acc = c.bit(label, l) != 0 ? num[l] : den[l];
            acc = log_sum_exp(acc, metric);
        }
    }
    for (int l = 0; l < bits; ++l) out[l] = clamp_llr(num[l] - den[l] - clamped[l]);
}

Sinr post_sic_sinr(double mu, double eta2, double sigma_x2)
{
    if (mu == 0.0) return {0.0, false};
    if (!(eta2 > 1e-12 * sigma_x2)) return {std::numeric_limits<double>::infinity(), true};
    return {mu * mu * sigma_x2 / eta2, false};
}

double DetectorState::sum_rate() const
{
    double total = 0.0;
    for (const auto& s : sinr) total += std::log2(1.0 + (s.infinite ? 1e12 : s.value));
    return total;
}

DetectorState linear_mmse_state(const CMat& heq, double loading, double sigma_x2, OpCounter* counter)
{
    DetectorState st;
    st.filters = mmse_filter_bank(heq, loading, counter);
    const auto users = heq.cols();
    st.mu.resize(users);
    st.eta2.resize(users);
    st.sinr.resize(static_cast<std::size_t>(users));
    for (Eigen::Index k = 0; k < users; ++k) {
        st.mu(k) = (st.filters.row(k) * heq.col(k))(0).real();
        st.eta2(k) = estimate_variance(st.mu(k), sigma_x2);
        st.sinr[k] = post_sic_sinr(st.mu(k), st.eta2(k), sigma_x2);
    }
    return st;
}

SoftSicDetector::SoftSicDetector(Constellation constellation, double loading)
    : constellation_(std::move(constellation)), loading_(loading)
{
    if (!(loading_ > 0.0)) throw std::invalid_argument("SoftSicDetector: loading must be positive");
}

SoftSicDetector::Output SoftSicDetector::detect(const CMat& y, const CMat& heq,
                                                const std::vector<std::vector<double>>& prior_llrs,
                                                OpCounter* counter) const
{
    const auto m = heq.rows();
    const auto users = heq.cols();
    const auto periods = y.cols();
    const int bits = constellation_.bits_per_symbol();
    if (y.rows() != m || static_cast<Eigen::Index>(prior_llrs.size()) != users)
        throw std::invalid_argument("SoftSicDetector::detect: dimension mismatch");
    for (const auto& p : prior_llrs)
        if (!p.empty() && static_cast<Eigen::Index>(p.size()) != periods * bits)
            throw std::invalid_argument("SoftSicDetector::detect: prior length mismatch");

    const double sigma_x2 = constellation_.energy();
    Output out;
    out.llr.assign(static_cast<std::size_t>(users), std::vector<double>(static_cast<std::size_t>(periods * bits)));
    out.x_hat.resize(users, periods);
    out.mu.resize(users, periods);

    CMat uniform_solution;  // R^-1 Hbar for D = I, built on first use
    CVec x_tilde(users);
    RVec d(users);
    CMat r(m, m);
    for (Eigen::Index t = 0; t < periods; ++t) {
        bool uniform = true;
        for (Eigen::Index k = 0; k < users; ++k) {
            const auto& p = prior_llrs[k];
            if (p.empty()) {
                x_tilde(k) = 0.0;
                d(k) = 1.0;
                continue;
            }
            const std::span<const double> bit_llrs(p.data() + t * bits, static_cast<std::size_t>(bits));
            x_tilde(k) = soft_symbol(constellation_, bit_llrs);
            d(k) = std::clamp(symbol_variance(constellation_, bit_llrs, x_tilde(k)) / sigma_x2, 0.0, 1.0);
            if (d(k) != 1.0 || x_tilde(k) != cd{}) uniform = false;
        }

        const CMat* solution = nullptr;
        CMat local;
        if (uniform) {
            if (uniform_solution.size() == 0) {
                count(counter, static_cast<std::uint64_t>(m * m * users));
                r.noalias() = heq * heq.adjoint();
                r.diagonal().array() += loading_;
                uniform_solution = hermitian_solve(r, heq, counter);
            }
            solution = &uniform_solution;
        } else {
            count(counter, static_cast<std::uint64_t>(m * m * users));
            r.noalias() = heq * d.asDiagonal() * heq.adjoint();
            r.diagonal().array() += loading_;
            local = hermitian_solve(r, heq, counter);
            solution = &local;
        }

        const CVec residual = y.col(t) - heq * x_tilde;
        count(counter, static_cast<std::uint64_t>(2 * m * users));
        for (Eigen::Index k = 0; k < users; ++k) {
            const auto v = solution->col(k);
            const double q = heq.col(k).dot(v).real();
            const double den = 1.0 + (1.0 - d(k)) * q;
            const double mu = q / den;
            const cd x_hat = v.dot(residual) / den + mu * x_tilde(k);
            const double eta2 = estimate_variance(mu, sigma_x2);
            out.x_hat(k, t) = x_hat;
            out.mu(k, t) = mu;
            const auto& p = prior_llrs[k];
            const std::span<const double> prior =
                p.empty() ? std::span<const double>{} : std::span<const double>(p.data() + t * bits, bits);
            extrinsic_llrs(constellation_, x_hat, mu, eta2, prior,
                           std::span<double>(out.llr[k].data() + t * bits, static_cast<std::size_t>(bits)));
        }
    }
    return out;
}

}  // namespace risidd
