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
#include <span>
#include <vector>

#include "risidd/linalg.hpp"
#include "risidd/modem.hpp"

namespace risidd {

// Scalar diagonal loading of the MMSE filter, normalized by sigma_x^2:
//   (g_loss * ||phi||^2 * sigma_v^2 + sigma_s^2) / sigma_x^2.
// The first term is the average power of the amplified RIS noise seen at
// one AP antenna.
double noise_loading(double static_noise_mw, double ris_noise_mw, double g_loss, double phi_norm2,
                     double sigma_x2);

// Diagonal of Delta_k: sigma_{x_i}^2 / sigma_x^2 for i != k and 1 at k.
// Throws std::invalid_argument for variances outside [0, sigma_x2].
RVec delta_matrix(std::span<const double> variances, double sigma_x2, int k);

// w_k = [loading * I + Hbar diag(delta) Hbar^H]^-1 hbar_k.
CVec mmse_filter(const CMat& heq, const RVec& delta, double loading, int k, OpCounter* counter = nullptr);

// Filter bank for Delta_k = I for every k: rows are w_k^H (K x M). One
// factorization shared by all users.
CMat mmse_filter_bank(const CMat& heq, double loading, OpCounter* counter = nullptr);

// Filter bank against a full normalized noise covariance C / sigma_x^2.
CMat mmse_filter_bank(const CMat& heq, const CMat& normalized_noise_cov, OpCounter* counter = nullptr);

// x_hat_k = w_k^H (y - sum_{i != k} hbar_i x~_i).
CVec sic_estimate(const CVec& y, const CMat& filters, const CVec& x_tilde, const CMat& heq);

// eta_k^2 = sigma_x^2 (mu - mu^2), floored at 1e-12 sigma_x^2.
double estimate_variance(double mu, double sigma_x2);

// Probabilities of the QPSK points [x00, x01, x10, x11].
struct QpskPriors {
    std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};

    static QpskPriors from_bit_llrs(double first, double second);
    // ln P(b = 1) / P(b = 0) of the marginals.
    double first_bit_llr() const;
    double second_bit_llr() const;
};

// Extrinsic (L_D^i, L_D^ii) by enumeration of the four points under the
// Gaussian likelihood exp(-|x_hat - mu x|^2 / eta2) / (pi eta2), minus the
// marginal prior LLR of each bit. Points follow Constellation::qpsk(sigma_x2).
std::array<double, 2> llr_exact_qpsk(std::complex<double> x_hat, double mu, double eta2, double sigma_x2,
                                     const QpskPriors& priors);

struct LlrApproxTerms {
    double a = 0.0;        // real-part metric 2 sqrt2 Re(x_hat) / (sigma_x (1 - mu))
    double a_imag = 0.0;   // imaginary-part metric
    double eta_i = 0.0;    // ln(P11 / P00) - L_C^i
    double eta_ii = 0.0;   // ln(P11 / P00) - L_C^ii
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double chi_i = 0.0;    // exact nonlinear term of L_D^i
    double chi_ii = 0.0;
    double gamma = 0.0;    // 2 sqrt2 Re[x_hat (1 + i)] / (sigma_x (1 - mu))
};

struct LlrApprox {
    std::array<double, 2> llr{};
    LlrApproxTerms terms;
};

// Linearized extrinsic LLRs, chi replaced by its asymptote with offset
// kappa. Exact for priors that factor over the two bits. Throws
// std::domain_error when 1 - mu <= 1e-12.
LlrApprox llr_linear_approx(std::complex<double> x_hat, double mu, double sigma_x2, const QpskPriors& priors);

// Extrinsic LLRs of every bit of one symbol for any labelled constellation,
// computed in the log domain. prior_llrs may be empty (uniform).
void extrinsic_llrs(const Constellation& c, std::complex<double> x_hat, double mu, double eta2,
                    std::span<const double> prior_llrs, std::span<double> out);

struct Sinr {
    double value = 0.0;
    bool infinite = false;
};

// gamma = mu^2 sigma_x^2 / eta^2; a vanishing eta^2 returns the +inf sentinel.
Sinr post_sic_sinr(double mu, double eta2, double sigma_x2);

struct DetectorState {
    CMat filters;               // K x M, rows w_k^H
    RVec mu;                    // w_k^H hbar_k
    RVec eta2;
    std::vector<Sinr> sinr;

    double sum_rate() const;    // sum_k log2(1 + gamma_k)
};

// Linear MMSE (uniform priors) state for one channel realization.
DetectorState linear_mmse_state(const CMat& heq, double loading, double sigma_x2, OpCounter* counter = nullptr);

// Soft-SIC MMSE detector over one block of T symbol periods. Per symbol
// period the filters are rebuilt from the prior variances; one Cholesky
// factorization of loading*I + Hbar D Hbar^H serves all users through a
// rank-one update for the k-th diagonal entry.
class SoftSicDetector {
public:
    SoftSicDetector(Constellation constellation, double loading);

    struct Output {
        std::vector<std::vector<double>> llr;  // per user, bits_per_symbol * T
        CMat x_hat;                             // K x T
        CMat mu;                                // K x T (real part used)
    };

    // prior_llrs: per user, bits_per_symbol * T values (empty vectors mean
    // uniform priors).
    Output detect(const CMat& y, const CMat& heq, const std::vector<std::vector<double>>& prior_llrs,
                  OpCounter* counter = nullptr) const;

    const Constellation& constellation() const { return constellation_; }

private:
    Constellation constellation_;
    double loading_;
};

}  // namespace risidd
