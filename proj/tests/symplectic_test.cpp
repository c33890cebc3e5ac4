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

#include "gaussent/symplectic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace gaussent {
namespace {

using testing::max_abs_diff;

TEST(SymplecticForm, SingleMode) {
  Matrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(symplectic_form(1), expected);
}

TEST(SymplecticForm, TwoModesIsBlockDiagonal) {
  const Matrix s = symplectic_form(2);
  EXPECT_EQ(s.topLeftCorner(2, 2), symplectic_form(1));
  EXPECT_EQ(s.bottomRightCorner(2, 2), symplectic_form(1));
  EXPECT_TRUE(s.topRightCorner(2, 2).isZero());
  EXPECT_TRUE(s.bottomLeftCorner(2, 2).isZero());
}

TEST(SymplecticForm, SquaresToMinusIdentity) {
  const Matrix s = symplectic_form(3);
  EXPECT_EQ(s * s, -Matrix::Identity(6, 6));
  EXPECT_EQ(s.transpose(), -s);
  EXPECT_DOUBLE_EQ(s.determinant(), 1.0);
}

TEST(SymplecticForm, RejectsZeroModes) { EXPECT_THROW(symplectic_form(0), StructuralError); }

TEST(ValidateCovariance, VacuumSaturates) {
  const auto rep = validate_covariance(Matrix::Identity(2, 2));
  EXPECT_TRUE(rep.valid);
  EXPECT_NEAR(rep.min_uncertainty_eigenvalue, 0.0, 1e-14);
  ASSERT_EQ(rep.symplectic_eigenvalues.size(), 1u);
  EXPECT_NEAR(rep.symplectic_eigenvalues[0], 1.0, 1e-14);
}

TEST(ValidateCovariance, HalfVacuumIsInvalid) {
  const auto rep = validate_covariance(0.5 * Matrix::Identity(2, 2));
  EXPECT_FALSE(rep.valid);
  EXPECT_NEAR(rep.min_uncertainty_eigenvalue, -0.5, 1e-14);
}

TEST(ValidateCovariance, PureSqueezedHasZeroWitness) {
  Matrix g(2, 2);
  g << 2.0, 0.0, 0.0, 0.5;
  const auto rep = validate_covariance(g);
  EXPECT_TRUE(rep.valid);
  // (a + b)/2 - sqrt(((a - b)/2)^2 + 1) with a = 2, b = 1/2.
  EXPECT_NEAR(rep.min_uncertainty_eigenvalue, 1.25 - std::sqrt(0.75 * 0.75 + 1.0), 1e-14);
  EXPECT_NEAR(rep.min_uncertainty_eigenvalue, 0.0, 1e-14);
}

TEST(ValidateCovariance, StructuralErrors) {
  Matrix asym(2, 2);
  asym << 1.0, 0.3, 0.0, 1.0;
  EXPECT_THROW(validate_covariance(asym), StructuralError);
  EXPECT_THROW(validate_covariance(Matrix::Identity(3, 3)), StructuralError);
  EXPECT_THROW(validate_covariance(Matrix::Identity(2, 4)), StructuralError);
}

TEST(ValidateCovariance, MatchesComplexHermitianOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix g = testing::random_covariance(rng, 1 + trial % 3, 1.0) - 0.4 * Matrix::Identity(2 + 2 * (trial % 3), 2 + 2 * (trial % 3));
    const auto rep = validate_covariance(g);
    EXPECT_NEAR(rep.min_uncertainty_eigenvalue, testing::uncertainty_min_eigenvalue(g), 1e-10);
  }
}

TEST(ValidateCovariance, ValidityMatchesSymplecticEigenvalues) {
  // Positive definite cores with symplectic eigenvalues on both sides of 1.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> nu(0.7, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    Matrix core = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) core(2 * k, 2 * k) = core(2 * k + 1, 2 * k + 1) = nu(rng);
    const Matrix s = testing::random_symplectic(rng, n);
    const Matrix g = s * core * s.transpose();
    const auto rep = validate_covariance(g);
    const double min_nu = testing::symplectic_spectrum(g).minCoeff();
    EXPECT_EQ(rep.valid, min_nu >= 1.0 - 1e-9) << "trial " << trial << " min nu " << min_nu;
  }
}

TEST(GaussianState, RejectsInvalidCovariance) {
  EXPECT_THROW(GaussianState(0.5 * Matrix::Identity(2, 2)), PhysicalError);
  EXPECT_THROW(GaussianState(Matrix::Identity(2, 2), Vector::Zero(3)), StructuralError);
}

TEST(IsSymplectic, Examples) {
  EXPECT_TRUE(is_symplectic(Matrix::Identity(4, 4)));
  Matrix d(2, 2);
  d << 3.0, 0.0, 0.0, 1.0 / 3.0;
  EXPECT_TRUE(is_symplectic(d));
  EXPECT_FALSE(is_symplectic(2.0 * Matrix::Identity(2, 2)));
  EXPECT_THROW(is_symplectic(Matrix::Identity(3, 3)), StructuralError);
}

TEST(IsPassive, Examples) {
  EXPECT_TRUE(is_passive(rotation(0.7)));
  Matrix d(2, 2);
  d << 2.0, 0.0, 0.0, 0.5;
  EXPECT_FALSE(is_passive(d));
  EXPECT_THROW(is_passive(2.0 * Matrix::Identity(2, 2)), PhysicalError);
}

TEST(IsPassive, BeamSplitterFromGenerator) {
  // G = X1 X2 + P1 P2; t = pi/4 is the 50:50 point.
  Matrix g = Matrix::Zero(4, 4);
  g(0, 2) = g(2, 0) = 0.5;
  g(1, 3) = g(3, 1) = 0.5;
  const Matrix s = symplectic_from_hamiltonian(g, std::numbers::pi / 4);
  EXPECT_TRUE(is_symplectic(s, 1e-12));
  EXPECT_TRUE(is_passive(s, 1e-12));
  // 50:50: every X_j mixes into both outputs with weight 1/sqrt(2).
  EXPECT_NEAR(std::abs(s(0, 0)), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(s(0, 3)), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(ApplySymplectic, Examples) {
  std::mt19937_64 rng(3);
  const Matrix k = testing::random_passive(rng, 3);
  const auto vac = apply_symplectic(GaussianState::vacuum(3), k);
  EXPECT_LT(max_abs_diff(vac.cov(), Matrix::Identity(6, 6)), 1e-12);

  const double r = 0.4;
  const auto sq = apply_symplectic(GaussianState::vacuum(1), single_mode_squeezer(r));
  EXPECT_NEAR(sq.cov()(0, 0), std::exp(2 * r), 1e-14);
  EXPECT_NEAR(sq.cov()(1, 1), std::exp(-2 * r), 1e-14);

  EXPECT_THROW(apply_symplectic(GaussianState::vacuum(1), Matrix::Identity(4, 4)), StructuralError);
}

TEST(ApplySymplectic, TwoModeSqueezerGeneratesTheNormalFormBlock) {
  // G = X1 P2 + P1 X2.
  Matrix g = Matrix::Zero(4, 4);
  g(0, 3) = g(3, 0) = 0.5;
  g(1, 2) = g(2, 1) = 0.5;
  const double r = 0.6;
  const auto out = apply_symplectic(GaussianState::vacuum(2), symplectic_from_hamiltonian(g, r));
  EXPECT_LT(max_abs_diff(out.cov(), two_mode_squeezed_cov(r)), 1e-12);
}

TEST(SymplecticFromHamiltonian, ZeroGeneratorIsIdentity) {
  EXPECT_LT(max_abs_diff(symplectic_from_hamiltonian(Matrix::Zero(4, 4), 3.0), Matrix::Identity(4, 4)), 1e-15);
}

TEST(SymplecticFromHamiltonian, OscillatorIsRotation) {
  for (double t : {0.0, 0.3, 1.1, 2.5}) {
    const Matrix s = symplectic_from_hamiltonian(Matrix::Identity(2, 2), t);
    EXPECT_TRUE(is_passive(s, 1e-12));
    // Rotation angle 2t: cos on the diagonal.
    EXPECT_NEAR(s(0, 0), std::cos(2 * t), 1e-12);
    EXPECT_NEAR(s(1, 1), std::cos(2 * t), 1e-12);
  }
}

TEST(SymplecticFromHamiltonian, RandomGeneratorsAreSymplectic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const Matrix s = symplectic_from_hamiltonian(testing::random_symmetric(rng, 2 * n));
    const Matrix sigma = symplectic_form(n);
    EXPECT_LE(max_abs_diff(s * sigma * s.transpose(), sigma), 1e-10);
    EXPECT_NEAR(s.determinant(), 1.0, 1e-8);
  }
}

TEST(SymplecticFromHamiltonian, RejectsAsymmetricGenerator) {
  Matrix g = Matrix::Zero(2, 2);
  g(0, 1) = 1.0;
  EXPECT_THROW(symplectic_from_hamiltonian(g), StructuralError);
}

TEST(Euler, PassiveHasUnitSqueezing) {
  std::mt19937_64 rng(6);
  const auto e = euler_decomposition(testing::random_passive(rng, 3));
  for (Eigen::Index j = 0; j < e.squeezing.size(); ++j) EXPECT_NEAR(e.squeezing(j), 1.0, 1e-8);
}

TEST(Euler, DiagonalSqueezer) {
  const double r = 0.7;
  const auto e = euler_decomposition(single_mode_squeezer(r));
  ASSERT_EQ(e.squeezing.size(), 1);
  EXPECT_NEAR(e.squeezing(0), std::exp(r), 1e-12);
  EXPECT_TRUE(is_passive(e.k, 1e-10));
  EXPECT_TRUE(is_passive(e.l, 1e-10));
}

TEST(Euler, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const Matrix s = testing::random_symplectic(rng, n, 0.7);
    const auto e = euler_decomposition(s);
    EXPECT_LE(max_abs_diff(e.reconstruct(), s), 1e-8);
    EXPECT_TRUE(is_passive(e.k, 1e-8));
    EXPECT_TRUE(is_passive(e.l, 1e-8));
    for (Eigen::Index j = 0; j < e.squeezing.size(); ++j) EXPECT_GT(e.squeezing(j), 0.0);
  }
}

TEST(Euler, RejectsNonSymplectic) { EXPECT_THROW(euler_decomposition(2.0 * Matrix::Identity(2, 2)), PhysicalError); }

TEST(Williamson, Examples) {
  const auto vac = williamson(Matrix::Identity(2, 2));
  EXPECT_NEAR(vac.nu(0), 1.0, 1e-14);
  EXPECT_TRUE(is_passive(vac.s, 1e-12));

  const auto th = williamson(2.0 * Matrix::Identity(2, 2));
  EXPECT_NEAR(th.nu(0), 2.0, 1e-14);

  const auto tms = williamson(two_mode_squeezed_cov(0.5));
  EXPECT_NEAR(tms.nu(0), 1.0, 1e-12);
  EXPECT_NEAR(tms.nu(1), 1.0, 1e-12);
}

TEST(Williamson, RandomResidualAndSpectrum) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const Matrix g = testing::random_covariance(rng, n, 2.0);
    const auto w = williamson(g);
    EXPECT_TRUE(is_symplectic(w.s, 1e-8));
    EXPECT_LE(max_abs_diff(w.s * g * w.s.transpose(), w.diagonal()), 1e-8);
    for (Eigen::Index j = 1; j < w.nu.size(); ++j) EXPECT_GE(w.nu(j - 1), w.nu(j));
    const Vector oracle = testing::symplectic_spectrum(g);
    for (int j = 0; j < n; ++j) EXPECT_NEAR(w.nu(n - 1 - j), oracle(j), 1e-8);
  }
}

TEST(Williamson, SymplecticEigenvaluesAgree) {
  std::mt19937_64 rng(9);
  const Matrix g = testing::random_covariance(rng, 3, 1.0);
  const Vector a = symplectic_eigenvalues(g);
  const Vector b = williamson(g).nu;
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(CharacteristicFunction, NormalizationAndVacuum) {
  const auto vac = GaussianState::vacuum(2);
  EXPECT_NEAR(std::abs(characteristic_function(vac, Vector::Zero(4)) - 1.0), 0.0, 1e-15);
  Vector xi(4);
  xi << 0.3, -1.2, 0.7, 0.1;
  EXPECT_NEAR(characteristic_function(vac, xi).real(), std::exp(-xi.squaredNorm() / 4), 1e-15);
  EXPECT_NEAR(characteristic_function(vac, xi).imag(), 0.0, 1e-15);
}

TEST(CharacteristicFunction, DisplacementOnlyChangesPhase) {
  Vector d(2);
  d << 0.4, -0.9;
  const GaussianState shifted(Matrix::Identity(2, 2), d);
  Vector xi(2);
  xi << 0.8, 0.3;
  const Complex chi = characteristic_function(shifted, xi);
  EXPECT_NEAR(std::abs(chi), std::exp(-xi.squaredNorm() / 4), 1e-15);
  // D = sigma d.
  const Vector big_d = symplectic_form(1) * d;
  EXPECT_NEAR(std::arg(chi), big_d.dot(xi), 1e-14);
}

TEST(CharacteristicFunction, BoundedByOne) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const GaussianState s(testing::random_covariance(rng, 2, 1.0), Vector::NullaryExpr(4, [&] { return n(rng); }));
    const Vector xi = Vector::NullaryExpr(4, [&] { return n(rng); });
    EXPECT_LE(std::abs(characteristic_function(s, xi)), 1.0 + 1e-15);
  }
}

TEST(Wigner, VacuumAtOrigin) {
  EXPECT_NEAR(wigner_at(GaussianState::vacuum(1), Vector::Zero(2)), 1.0 / std::numbers::pi, 1e-15);
}

TEST(Wigner, SymmetricAboutDisplacement) {
  std::mt19937_64 rng(13);
  Vector d(2);
  d << 0.5, -0.2;
  const GaussianState s(testing::random_covariance(rng, 1, 1.0), d);
  Vector xi(2);
  xi << 0.3, 0.9;
  EXPECT_NEAR(wigner_at(s, d + xi), wigner_at(s, d - xi), 1e-15);
}

TEST(Wigner, ThermalIntegratesToOne) {
  const GaussianState s(3.0 * Matrix::Identity(2, 2));
  const int steps = 400;
  const double h = 16.0 / steps;
  double sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      Vector xi(2);
      xi << -8.0 + i * h, -8.0 + j * h;
      const double w = (i == 0 || i == steps ? 0.5 : 1.0) * (j == 0 || j == steps ? 0.5 : 1.0);
      sum += w * wigner_at(s, xi);
    }
  }
  EXPECT_NEAR(sum * h * h, 1.0, 1e-6);
}

TEST(MeanPhotonNumber, Examples) {
  EXPECT_NEAR(mean_photon_number(GaussianState::vacuum(3)), 0.0, 1e-15);
  EXPECT_NEAR(mean_photon_number(GaussianState(3.0 * Matrix::Identity(2, 2))), 1.0, 1e-15);
  const double r = 0.7;
  EXPECT_NEAR(mean_photon_number(GaussianState(two_mode_squeezed_cov(r))), 2.0 * std::sinh(r) * std::sinh(r), 1e-13);
  Vector d(2);
  d << 1.0, 1.0;
  // Coherent state with |alpha|^2 = (1 + 1)/2.
  EXPECT_NEAR(mean_photon_number(GaussianState(Matrix::Identity(2, 2), d)), 1.0, 1e-15);
}

TEST(Properties, ApplySymplecticPreservesValidity) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const GaussianState s(testing::random_covariance(rng, n, 1.0));
    const auto out = apply_symplectic(s, testing::random_symplectic(rng, n));
    EXPECT_TRUE(validate_covariance(out.cov()).valid);
  }
}

TEST(Properties, PassiveInvariance) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    const GaussianState s(testing::random_covariance(rng, n, 1.0));
    const Matrix k = testing::random_passive(rng, n);
    const auto out = apply_symplectic(s, k);
    Eigen::SelfAdjointEigenSolver<Matrix> a(s.cov()), b(out.cov());
    EXPECT_LE((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(mean_photon_number(s), mean_photon_number(out), 1e-10);
  }
}

TEST(Properties, SqueezedIffSmallEigenvalueBelowOne) {
  EXPECT_FALSE(is_squeezed(Matrix::Identity(2, 2)));
  EXPECT_FALSE(is_squeezed(thermal_cov(2, 2.0)));
  EXPECT_TRUE(is_squeezed(two_mode_squeezed_cov(0.3)));
  Matrix sq = single_mode_squeezer(0.2);
  EXPECT_TRUE(is_squeezed(sq * sq.transpose()));
}

TEST(PassiveUnitary, RoundTrip) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix k = testing::random_passive(rng, 1 + trial % 4);
    EXPECT_TRUE(is_passive(k, 1e-10));
    EXPECT_LE(max_abs_diff(passive_from_unitary(unitary_from_passive(k)), k), 1e-12);
  }
}

TEST(BeamSplitter, SymplecticMatchesUnitary) {
  const Complex t(0.6, 0.0);
  const Complex r(0.0, 0.8);
  const Matrix s = beam_splitter_symplectic(t, r);
  EXPECT_TRUE(is_passive(s, 1e-12));
  EXPECT_LE(max_abs_diff(s, passive_from_unitary(beam_splitter_unitary(t, r))), 1e-15);
  EXPECT_THROW(beam_splitter_unitary(0.6, 0.6), PhysicalError);
}

}  // namespace
}  // namespace gaussent
