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

#include "gaussent/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

namespace gaussent::linalg {

double min_eigenvalue_hermitian(const Matrix& re, const Matrix& im) {
  const Eigen::Index d = re.rows();
  Matrix embed(2 * d, 2 * d);
  embed.topLeftCorner(d, d) = re;
  embed.topRightCorner(d, d) = -im;
  embed.bottomLeftCorner(d, d) = im;
  embed.bottomRightCorner(d, d) = re;
  // Symmetrize away round-off so the solver sees an exactly symmetric input.
  Matrix sym = 0.5 * (embed + embed.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.transpose()) <= rel_tol * scale;
}

SqrtPair sqrt_pd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  const Vector& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw PhysicalError(fmt::format(
        "matrix is not positive definite (smallest eigenvalue {:.3e})", ev.minCoeff()));
  }
  const Matrix& v = es.eigenvectors();
  Vector root = ev.cwiseSqrt();
  return {v * root.asDiagonal() * v.transpose(),
          v * root.cwiseInverse().asDiagonal() * v.transpose()};
}

Matrix pseudo_inverse(const Matrix& m, double rel_cutoff) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rel_cutoff * s(0) : 0.0;
  Vector inv = Vector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV().leftCols(s.size()) * inv.asDiagonal() *
         svd.matrixU().leftCols(s.size()).transpose();
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix submatrix(const Matrix& m, std::span<const int> rows, std::span<const int> cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

std::vector<int> quadrature_indices(std::span<const int> modes) {
  std::vector<int> idx;
  idx.reserve(2 * modes.size());
  for (int k : modes) {
    idx.push_back(2 * k);
    idx.push_back(2 * k + 1);
  }
  return idx;
}

Matrix expm(const Matrix& m) { return m.exp(); }

CMatrix expm(const CMatrix& m) { return m.exp(); }

}  // namespace gaussent::linalg
