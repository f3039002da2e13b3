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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "risidd/op_counter.hpp"

namespace risidd {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Solves A X = B for Hermitian positive (semi)definite A through a Cholesky
// factorization. On a failed factorization, retries with diagonal loading of
// 1e-10 * trace(A) / n (growing tenfold up to 1e-4 relative). Throws
// std::runtime_error when no loading level makes the system factorizable.
// Counts n^3/3 for the factorization plus n^2 per right-hand side.
CMat hermitian_solve(const CMat& a, const CMat& b, OpCounter* counter = nullptr);
CVec hermitian_solve(const CMat& a, const CVec& b, OpCounter* counter = nullptr);

// Counted dense product a * b.
CMat counted_product(const CMat& a, const CMat& b, OpCounter* counter);
// Counted a^H * b.
CMat counted_adjoint_product(const CMat& a, const CMat& b, OpCounter* counter);

}  // namespace risidd
