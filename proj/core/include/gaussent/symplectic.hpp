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

// Phase-space data model for n bosonic modes.
//
// Conventions used throughout the library:
//   * canonical operators are ordered (X_1, P_1, ..., X_n, P_n) with
//     X = (a + a^dag)/sqrt(2), P = -i (a - a^dag)/sqrt(2) and hbar = 1;
//   * the covariance matrix is gamma_jk = 2 Re tr[rho dO_j dO_k], so the
//     vacuum has gamma = identity and a state is physical iff
//     gamma + i sigma >= 0;
//   * a symplectic S acts as gamma -> S gamma S^T, d -> S d.

#pragma once

#include <vector>

#include "gaussent/types.hpp"

namespace gaussent {

enum class Quadrature { X, P };

/// Block-diagonal symplectic form with blocks [[0, 1], [-1, 0]].
Matrix symplectic_form(int modes);

/// Outcome of checking a covariance matrix against the uncertainty relation.
struct ValidityReport {
  bool valid = false;
  /// Smallest eigenvalue of the Hermitian matrix gamma + i sigma.
  double min_uncertainty_eigenvalue = 0.0;
  /// Descending symplectic eigenvalues; empty if gamma is not positive definite.
  std::vector<double> symplectic_eigenvalues;
};

/// Throws StructuralError for non-square, odd-sized, or asymmetric input.
/// Physical invalidity is reported, never thrown. The tolerance is relative
/// to max(1, max|gamma_ij|).
ValidityReport validate_covariance(const Matrix& gamma, double tol = kPsdTolerance);

/// Moduli of the eigenvalues of i sigma gamma, descending. gamma must be
/// symmetric positive definite.
Vector symplectic_eigenvalues(const Matrix& gamma);

/// A state is squeezed iff some eigenvalue of its covariance matrix is below 1.
bool is_squeezed(const Matrix& gamma, double tol = 1e-12);

/// Covariance matrix plus displacement vector. Constructing one validates the
/// covariance and throws PhysicalError if it violates the uncertainty relation.
class GaussianState {
 public:
  GaussianState(Matrix cov, Vector disp);
  explicit GaussianState(Matrix cov);

  static GaussianState vacuum(int modes);

  int modes() const { return static_cast<int>(cov_.rows() / 2); }
  const Matrix& cov() const { return cov_; }
  const Vector& disp() const { return disp_; }

 private:
  Matrix cov_;
  Vector disp_;
};

bool is_symplectic(const Matrix& s, double tol = kGroupTolerance);

/// Symplectic and orthogonal (beam splitters and phase shifts).
/// Throws PhysicalError when s is not symplectic.
bool is_passive(const Matrix& s, double tol = kGroupTolerance);

GaussianState apply_symplectic(const GaussianState& state, const Matrix& s);

/// Symplectic flow generated by the quadratic Hamiltonian
/// G = sum_jk g_jk (O_j O_k + O_k O_j) / 2 over time t, i.e. the phase-space
/// image of U = exp(-i t G):
///
///     S = exp(2 t sigma g).
///
/// The factor 2 follows from [G, O] = -2 i sigma g O and is pinned by the
/// beam-splitter and squeezer Fock-space checks in the test suite.
Matrix symplectic_from_hamiltonian(const Matrix& g, double t = 1.0);

/// S = K * diag(d_1, 1/d_1, ..., d_n, 1/d_n) * L with K, L passive.
struct EulerDecomposition {
  Matrix k;
  Vector squeezing;  // d_j >= 1
  Matrix l;

  Matrix middle() const;
  Matrix reconstruct() const { return k * middle() * l; }
};
EulerDecomposition euler_decomposition(const Matrix& s);

/// S gamma S^T = diag(nu_1, nu_1, ..., nu_n, nu_n), nu descending.
struct WilliamsonDecomposition {
  Matrix s;
  Vector nu;

  Matrix diagonal() const;
};
WilliamsonDecomposition williamson(const Matrix& gamma);

/// chi(xi) = tr[rho W_xi] with W_xi = exp(i xi^T sigma O):
///     chi(xi) = exp(-xi^T Gamma xi / 4 + i D^T xi),  Gamma = sigma^T gamma sigma,
///     D = sigma d.
Complex characteristic_function(const GaussianState& state, const Vector& xi);

/// Wigner function exp(-(xi-d)^T gamma^{-1} (xi-d)) / (pi^n sqrt(det gamma)).
double wigner_at(const GaussianState& state, const Vector& xi);

/// Total mean photon number
/// sum_k (gamma_xx + gamma_pp)/4 + (d_x^2 + d_p^2)/2 - 1/2.
double mean_photon_number(const GaussianState& state);

// ---------------------------------------------------------------------------
// Standard building blocks.

Matrix rotation(double theta);

/// diag(e^r, e^-r): squeezes P, stretches X. On the vacuum it yields
/// covariance diag(e^{2r}, e^{-2r}).
Matrix single_mode_squeezer(double r);

/// Covariance of a two-mode squeezed vacuum in ordering (X_A, P_A, X_B, P_B):
/// cosh(2r) on the diagonal, +sinh(2r) between the X's, -sinh(2r) between
/// the P's.
Matrix two_mode_squeezed_cov(double r);

/// nu * identity on n modes.
Matrix thermal_cov(int modes, double nu);

/// Passive symplectic of the mode transformation <a> -> u <a>, u unitary.
Matrix passive_from_unitary(const CMatrix& u);

/// Inverse of passive_from_unitary. Throws PhysicalError if k is not passive.
CMatrix unitary_from_passive(const Matrix& k);

/// Symplectic image of the beam splitter with transmission T and reflection
/// R (|T|^2 + |R|^2 = 1) in the operator convention
/// U a_1^dag U^dag = T^* a_1^dag - R^* a_2^dag, U a_2^dag U^dag = R a_1^dag + T a_2^dag.
Matrix beam_splitter_symplectic(Complex t, Complex r);

/// Mode matrix [[T^*, R], [-R^*, T]] of that beam splitter.
CMatrix beam_splitter_unitary(Complex t, Complex r);

}  // namespace gaussent
