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

// Small dense linear-algebra helpers shared by the phase-space modules.

#pragma once

#include <span>
#include <vector>

#include "gaussent/types.hpp"

namespace gaussent::linalg {

/// Smallest eigenvalue of the Hermitian matrix re + i*im, where re is
/// symmetric and im antisymmetric. Evaluated on the real symmetric embedding
/// [[re, -im], [im, re]], whose spectrum is that of re + i*im doubled.
double min_eigenvalue_hermitian(const Matrix& re, const Matrix& im);

bool is_symmetric(const Matrix& m, double rel_tol = kSymmetryTolerance);

/// Max-abs entry.
double max_abs(const Matrix& m);

/// Symmetric square root and inverse square root of a positive definite matrix.
/// Throws PhysicalError when the smallest eigenvalue is not positive.
struct SqrtPair {
  Matrix sqrt;
  Matrix inv_sqrt;
};
SqrtPair sqrt_pd(const Matrix& m);

/// Moore-Penrose pseudo-inverse; singular values below
/// rel_cutoff * (largest singular value) are treated as zero.
Matrix pseudo_inverse(const Matrix& m, double rel_cutoff = 1e-12);

/// Block-diagonal direct sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Rows/columns of m restricted to the given (phase-space) indices.
Matrix submatrix(const Matrix& m, std::span<const int> rows, std::span<const int> cols);

/// Phase-space indices {2k, 2k+1} for every listed mode, in order.
std::vector<int> quadrature_indices(std::span<const int> modes);

/// Matrix exponential of a real square matrix.
Matrix expm(const Matrix& m);

/// Matrix exponential of a complex square matrix.
CMatrix expm(const CMatrix& m);

}  // namespace gaussent::linalg
