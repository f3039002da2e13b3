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


#include "risidd/linalg.hpp"

#include <stdexcept>

namespace risidd {

void OpCounter::record_cholesky(int size, int rhs)
{
    ++cholesky_solves[{size, rhs}];
    const auto n = static_cast<std::uint64_t>(size);
    complex_mul_adds += n * n * n / 3 + static_cast<std::uint64_t>(rhs) * n * n;
}

void OpCounter::merge(const OpCounter& other)
{
    complex_mul_adds += other.complex_mul_adds;
    for (const auto& [key, value] : other.cholesky_solves) cholesky_solves[key] += value;
}

std::uint64_t OpCounter::factorizations() const
{
    std::uint64_t total = 0;
    for (const auto& entry : cholesky_solves) total += entry.second;
    return total;
}

CMat hermitian_solve(const CMat& a, const CMat& b, OpCounter* counter)
{
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n) throw std::invalid_argument("hermitian_solve: dimension mismatch");
    if (counter != nullptr) counter->record_cholesky(static_cast<int>(n), static_cast<int>(b.cols()));
    if (n == 0) return CMat(0, b.cols());

    Eigen::LLT<CMat> llt(a);
    if (llt.info() == Eigen::Success) return llt.solve(b);

    const double scale = std::max(a.diagonal().real().sum() / static_cast<double>(n), 1e-300);
    for (double rel = 1e-10; rel <= 1e-4; rel *= 10.0) {
        CMat loaded = a;
        loaded.diagonal().array() += rel * scale;
        llt.compute(loaded);
        if (llt.info() == Eigen::Success) return llt.solve(b);
    }
    throw std::runtime_error("hermitian_solve: system is singular after diagonal loading");
}

CVec hermitian_solve(const CMat& a, const CVec& b, OpCounter* counter)
{
    return hermitian_solve(a, CMat(b), counter).col(0);
}

CMat counted_product(const CMat& a, const CMat& b, OpCounter* counter)
{
    count(counter, static_cast<std::uint64_t>(a.rows() * a.cols() * b.cols()));
    return a * b;
}

CMat counted_adjoint_product(const CMat& a, const CMat& b, OpCounter* counter)
{
    count(counter, static_cast<std::uint64_t>(a.cols() * a.rows() * b.cols()));
    return a.adjoint() * b;
}

}  // namespace risidd
