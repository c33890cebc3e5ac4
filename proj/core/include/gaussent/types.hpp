// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gaussent {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance on the smallest eigenvalue in every Hermitian PSD test
/// (uncertainty relation, partial-transpose positivity, channel CP condition).
inline constexpr double kPsdTolerance = 1e-9;

/// Default max-norm tolerance for symplectic and orthogonality checks.
inline constexpr double kGroupTolerance = 1e-9;

/// Relative tolerance for the symmetry check of covariance-like inputs.
inline constexpr double kSymmetryTolerance = 1e-10;

/// Malformed input: wrong shape, odd dimension, asymmetric matrix, bad file.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that violates a physical constraint
/// (uncertainty relation, complete positivity, ...).
class PhysicalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physically valid input for which the requested computation is undefined
/// (normal form of a mixed state, truncation too coarse, ...).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaussent
