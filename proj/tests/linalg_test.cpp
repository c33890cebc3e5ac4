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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace gaussent {
namespace {

using testing::max_abs_diff;

Matrix random_antisymmetric(std::mt19937_64& rng, int dim) {
  const Matrix m = testing::random_symmetric(rng, dim);
  return m.triangularView<Eigen::StrictlyUpper>().toDenseMatrix() -
         m.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().transpose();
}

TEST(MinEigenvalueHermitian, MatchesComplexSolver) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + trial % 6;
    const Matrix re = testing::random_symmetric(rng, dim);
    const Matrix im = random_antisymmetric(rng, dim);
    const CMatrix h = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    EXPECT_NEAR(linalg::min_eigenvalue_hermitian(re, im), es.eigenvalues().minCoeff(), 1e-12);
  }
}

TEST(MinEigenvalueHermitian, SigmaHasSpectrumPlusMinusOne) {
  EXPECT_NEAR(linalg::min_eigenvalue_hermitian(Matrix::Zero(4, 4), symplectic_form(2)), -1.0, 1e-14);
  EXPECT_NEAR(linalg::min_eigenvalue_hermitian(Matrix::Identity(4, 4), symplectic_form(2)), 0.0, 1e-14);
}

TEST(IsSymmetric, RelativeTolerance) {
  Matrix m = Matrix::Identity(3, 3) * 1e6;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0 + 1e-6;
  EXPECT_TRUE(linalg::is_symmetric(m));
  m(1, 0) = 2.0;
  EXPECT_FALSE(linalg::is_symmetric(m));
  EXPECT_FALSE(linalg::is_symmetric(Matrix::Zero(2, 3)));
}

TEST(MaxAbs, Basic) {
  Matrix m(2, 2);
  m << 1, -7, 3, 2;
  EXPECT_EQ(linalg::max_abs(m), 7.0);
}

TEST(SqrtPd, SquaresBack) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix g = testing::random_covariance(rng, 1 + trial % 3);
    const auto sp = linalg::sqrt_pd(g);
    EXPECT_LE(max_abs_diff(sp.sqrt * sp.sqrt, g), 1e-10);
    EXPECT_LE(max_abs_diff(sp.sqrt * sp.inv_sqrt, Matrix::Identity(g.rows(), g.cols())), 1e-10);
    EXPECT_LE(max_abs_diff(sp.sqrt, sp.sqrt.transpose()), 1e-12);
  }
}

TEST(SqrtPd, RejectsIndefinite) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -1e-3;
  EXPECT_THROW(linalg::sqrt_pd(m), PhysicalError);
  EXPECT_THROW(linalg::sqrt_pd(Matrix::Zero(2, 2)), PhysicalError);
}

TEST(PseudoInverse, PenroseConditions) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    // Rank-deficient 5 x 4 product.
    Matrix l(5, 2), r(2, 4);
    for (int i = 0; i < l.size(); ++i) l.data()[i] = n(rng);
    for (int i = 0; i < r.size(); ++i) r.data()[i] = n(rng);
    const Matrix a = l * r;
    const Matrix x = linalg::pseudo_inverse(a);
    EXPECT_LE(max_abs_diff(a * x * a, a), 1e-10);
    EXPECT_LE(max_abs_diff(x * a * x, x), 1e-10);
    EXPECT_LE(max_abs_diff(a * x, (a * x).transpose()), 1e-10);
    EXPECT_LE(max_abs_diff(x * a, (x * a).transpose()), 1e-10);
  }
  Matrix pi = Matrix::Zero(2, 2);
  pi(0, 0) = 4.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 0.25;
  EXPECT_EQ(linalg::pseudo_inverse(pi), expected);
}

TEST(DirectSum, Blocks) {
  const Matrix a = Matrix::Constant(1, 2, 3.0);
  const Matrix b = Matrix::Constant(2, 1, 5.0);
  const Matrix s = linalg::direct_sum(a, b);
  ASSERT_EQ(s.rows(), 3);
  ASSERT_EQ(s.cols(), 3);
  EXPECT_EQ(s.topLeftCorner(1, 2), a);
  EXPECT_EQ(s.bottomRightCorner(2, 1), b);
  EXPECT_EQ(s.topRightCorner(1, 1)(0, 0), 0.0);
  EXPECT_EQ(s.bottomLeftCorner(2, 2), Matrix::Zero(2, 2));
}

TEST(Submatrix, QuadratureIndices) {
  const std::vector<int> modes = {2, 0};
  const auto idx = linalg::quadrature_indices(modes);
  EXPECT_EQ(idx, (std::vector<int>{4, 5, 0, 1}));
  Matrix m(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) m(i, j) = 10 * i + j;
  }
  const Matrix sub = linalg::submatrix(m, idx, idx);
  EXPECT_EQ(sub(0, 0), 44.0);
  EXPECT_EQ(sub(0, 2), 40.0);
  EXPECT_EQ(sub(3, 1), 15.0);
}

TEST(Expm, RotationGenerator) {
  Matrix j(2, 2);
  j << 0, 1, -1, 0;
  for (double t : {0.0, 0.3, 2.0, 7.5}) {
    EXPECT_LE(max_abs_diff(linalg::expm(Matrix(t * j)), rotation(t)), 1e-13) << t;
  }
}

TEST(Expm, MatchesTaylorSeries) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = testing::random_symmetric(rng, 4, 0.3) + random_antisymmetric(rng, 4) * 0.3;
    Matrix term = Matrix::Identity(4, 4);
    Matrix sum = term;
    for (int k = 1; k < 40; ++k) {
      term = term * m / k;
      sum += term;
    }
    EXPECT_LE(max_abs_diff(linalg::expm(m), sum), 1e-13);
  }
}

TEST(Expm, ComplexHermitianGivesUnitary) {
  std::mt19937_64 rng(5);
  const Matrix re = testing::random_symmetric(rng, 3);
  const Matrix im = random_antisymmetric(rng, 3);
  const CMatrix h = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
  const CMatrix u = linalg::expm(CMatrix(Complex(0.0, 1.0) * h));
  EXPECT_LE((u * u.adjoint() - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_NEAR(std::abs(linalg::expm(CMatrix(CMatrix::Constant(1, 1, Complex(0.0, std::numbers::pi))))(0, 0) + 1.0), 0.0,
              1e-14);
}

}  // namespace
}  // namespace gaussent
