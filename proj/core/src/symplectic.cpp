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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <Eigen/Eigenvalues>

#include "gaussent/linalg.hpp"

namespace gaussent {

namespace {

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw StructuralError(fmt::format("{} must be a non-empty square matrix of even size, got {}x{}",
                                      what, m.rows(), m.cols()));
  }
}

}  // namespace

Matrix symplectic_form(int modes) {
  if (modes < 1) {
    throw StructuralError(fmt::format("symplectic form needs at least one mode, got {}", modes));
  }
  Matrix sigma = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    sigma(2 * k, 2 * k + 1) = 1.0;
    sigma(2 * k + 1, 2 * k) = -1.0;
  }
  return sigma;
}

ValidityReport validate_covariance(const Matrix& gamma, double tol) {
  require_even_square(gamma, "covariance matrix");
  if (!linalg::is_symmetric(gamma)) {
    throw StructuralError("covariance matrix is not symmetric");
  }
  const Matrix sym = 0.5 * (gamma + gamma.transpose());
  const int n = static_cast<int>(sym.rows() / 2);

  ValidityReport report;
  report.min_uncertainty_eigenvalue = linalg::min_eigenvalue_hermitian(sym, symplectic_form(n));
  report.valid = report.min_uncertainty_eigenvalue >= -tol * std::max(1.0, linalg::max_abs(sym));

  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() > 0.0) {
    const Vector nu = symplectic_eigenvalues(sym);
    report.symplectic_eigenvalues.assign(nu.data(), nu.data() + nu.size());
  }
  return report;
}

Vector symplectic_eigenvalues(const Matrix& gamma) {
  require_even_square(gamma, "covariance matrix");
  const int n = static_cast<int>(gamma.rows() / 2);
  const auto roots = linalg::sqrt_pd(gamma);
  // i gamma^{1/2} sigma gamma^{1/2} is Hermitian and similar to i sigma gamma.
  const Matrix a = roots.sqrt * symplectic_form(n) * roots.sqrt;
  const CMatrix h = Complex(0.0, 1.0) * a.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  // Ascending: the top n are +nu_k, smallest-to-largest.
  Vector nu = es.eigenvalues().tail(n).reverse();
  return nu;
}

bool is_squeezed(const Matrix& gamma, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gamma + gamma.transpose()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() < 1.0 - tol;
}

GaussianState::GaussianState(Matrix cov, Vector disp) : cov_(std::move(cov)), disp_(std::move(disp)) {
  const auto report = validate_covariance(cov_);
  if (disp_.size() != cov_.rows()) {
    throw StructuralError(fmt::format("displacement has length {}, expected {}", disp_.size(),
                                      cov_.rows()));
  }
  if (!disp_.allFinite()) throw StructuralError("displacement has non-finite entries");
  if (!report.valid) {
    throw PhysicalError(fmt::format(
        "covariance matrix violates the uncertainty relation (min eigenvalue of gamma + i sigma = {:.6f})",
        report.min_uncertainty_eigenvalue));
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

GaussianState::GaussianState(Matrix cov)
    : GaussianState(cov, Vector::Zero(cov.rows())) {}

GaussianState GaussianState::vacuum(int modes) {
  return GaussianState(Matrix::Identity(2 * modes, 2 * modes));
}

bool is_symplectic(const Matrix& s, double tol) {
  require_even_square(s, "symplectic candidate");
  const Matrix sigma = symplectic_form(static_cast<int>(s.rows() / 2));
  if (linalg::max_abs(s * sigma * s.transpose() - sigma) > tol) return false;
  // SsigmaS^T = sigma forces det S = +1; this catches gross round-off.
  return std::abs(s.determinant() - 1.0) <= std::max(tol, 1e-8);
}

bool is_passive(const Matrix& s, double tol) {
  if (!is_symplectic(s, tol)) throw PhysicalError("matrix is not symplectic");
  return linalg::max_abs(s * s.transpose() - Matrix::Identity(s.rows(), s.cols())) <= tol;
}

GaussianState apply_symplectic(const GaussianState& state, const Matrix& s) {
  if (s.rows() != state.cov().rows() || s.cols() != state.cov().cols()) {
    throw StructuralError(fmt::format("symplectic is {}x{}, state has dimension {}", s.rows(),
                                      s.cols(), state.cov().rows()));
  }
  if (!is_symplectic(s, 1e-8)) throw PhysicalError("matrix is not symplectic");
  return GaussianState(s * state.cov() * s.transpose(), s * state.disp());
}

Matrix symplectic_from_hamiltonian(const Matrix& g, double t) {
  require_even_square(g, "Hamiltonian coefficient matrix");
  if (!linalg::is_symmetric(g)) throw StructuralError("Hamiltonian coefficient matrix is not symmetric");
  const Matrix sym = 0.5 * (g + g.transpose());
  const Matrix sigma = symplectic_form(static_cast<int>(g.rows() / 2));
  return linalg::expm(Matrix(2.0 * t * sigma * sym));
}

// ---------------------------------------------------------------------------
// Euler decomposition.
//
// M = S S^T is symmetric, positive and symplectic, so if M e = d^2 e then
// sigma^T e is an eigenvector with eigenvalue 1/d^2. Picking orthonormal
// e_1..e_n from the top of the spectrum and f_j = sigma^T e_j gives a passive
// K = [e_1 f_1 ... e_n f_n] with K^T M K = diag(d_1^2, d_1^-2, ...). Then
// S = K Delta L with L = Delta^{-1} K^T S.

Matrix EulerDecomposition::middle() const {
  const Eigen::Index n = squeezing.size();
  Vector diag(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    diag(2 * j) = squeezing(j);
    diag(2 * j + 1) = 1.0 / squeezing(j);
  }
  return diag.asDiagonal();
}

EulerDecomposition euler_decomposition(const Matrix& s) {
  require_even_square(s, "symplectic matrix");
  if (!is_symplectic(s, 1e-7)) throw PhysicalError("matrix is not symplectic");
  const int n = static_cast<int>(s.rows() / 2);
  const int dim = 2 * n;
  const Matrix sigma = symplectic_form(n);
  const Matrix m = s * s.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  const Matrix& vecs = es.eigenvectors();

  Matrix k = Matrix::Zero(dim, dim);
  std::vector<bool> used(dim, false);
  for (int j = 0; j < n; ++j) {
    // Residual of every unused eigenvector against the symplectic basis so far.
    std::vector<Vector> residual(dim);
    double best_norm = 0.0;
    for (int c = dim - 1; c >= 0; --c) {
      if (used[c]) continue;
      Vector r = vecs.col(c);
      for (int i = 0; i < 2 * j; ++i) r -= k.col(i).dot(r) * k.col(i);
      residual[c] = r;
      best_norm = std::max(best_norm, r.norm());
    }
    // Highest eigenvalue whose residual is not degenerate.
    int pick = -1;
    for (int c = dim - 1; c >= 0; --c) {
      if (!used[c] && residual[c].norm() >= 0.5 * best_norm) {
        pick = c;
        break;
      }
    }
    used[pick] = true;
    Vector e = residual[pick].normalized();
    k.col(2 * j) = e;
    k.col(2 * j + 1) = sigma.transpose() * e;
  }

  EulerDecomposition out;
  out.k = k;
  out.squeezing.resize(n);
  for (int j = 0; j < n; ++j) {
    const double d2 = k.col(2 * j).dot(m * k.col(2 * j));
    out.squeezing(j) = std::sqrt(std::max(d2, 1.0));
  }
  out.l = out.middle().inverse() * k.transpose() * s;
  return out;
}

// ---------------------------------------------------------------------------
// Williamson normal form.
//
// A = gamma^{-1/2} sigma gamma^{-1/2} is antisymmetric with eigenvalues
// +-i/nu_k. For each eigenvector x + i y of iA with eigenvalue 1/nu > 0,
// A x = y / nu and A y = -x / nu, so O = sqrt(2) [y_1 x_1 ...] is orthogonal
// with O^T A O = (+) [[0, 1/nu], [-1/nu, 0]]. Then
// S = diag(sqrt nu) O^T gamma^{-1/2} is symplectic and S gamma S^T = diag(nu).

Matrix WilliamsonDecomposition::diagonal() const {
  const Eigen::Index n = nu.size();
  Vector diag(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) diag(2 * j) = diag(2 * j + 1) = nu(j);
  return diag.asDiagonal();
}

WilliamsonDecomposition williamson(const Matrix& gamma) {
  require_even_square(gamma, "covariance matrix");
  if (!linalg::is_symmetric(gamma)) throw StructuralError("covariance matrix is not symmetric");
  const int n = static_cast<int>(gamma.rows() / 2);
  const auto roots = linalg::sqrt_pd(gamma);
  const Matrix a = roots.inv_sqrt * symplectic_form(n) * roots.inv_sqrt;
  const CMatrix h = Complex(0.0, 1.0) * a.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));

  WilliamsonDecomposition out;
  out.nu.resize(n);
  Matrix o(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    // Positive eigenvalues 1/nu sit at the top, ascending, so nu is descending.
    const Eigen::Index col = n + j;
    const double omega = es.eigenvalues()(col);
    out.nu(j) = 1.0 / omega;
    const CVector v = es.eigenvectors().col(col);
    o.col(2 * j) = std::sqrt(2.0) * v.imag();
    o.col(2 * j + 1) = std::sqrt(2.0) * v.real();
  }
  Vector scale(2 * n);
  for (int j = 0; j < n; ++j) scale(2 * j) = scale(2 * j + 1) = std::sqrt(out.nu(j));
  out.s = scale.asDiagonal() * o.transpose() * roots.inv_sqrt;
  return out;
}

// ---------------------------------------------------------------------------
// Phase-space functions.

Complex characteristic_function(const GaussianState& state, const Vector& xi) {
  if (xi.size() != state.cov().rows()) {
    throw StructuralError(fmt::format("xi has length {}, expected {}", xi.size(), state.cov().rows()));
  }
  const Matrix sigma = symplectic_form(state.modes());
  const Matrix big_gamma = sigma.transpose() * state.cov() * sigma;
  const Vector big_d = sigma * state.disp();
  const double quad = -0.25 * xi.dot(big_gamma * xi);
  return std::exp(Complex(quad, big_d.dot(xi)));
}

double wigner_at(const GaussianState& state, const Vector& xi) {
  if (xi.size() != state.cov().rows()) {
    throw StructuralError(fmt::format("xi has length {}, expected {}", xi.size(), state.cov().rows()));
  }
  Eigen::LLT<Matrix> llt(state.cov());
  if (llt.info() != Eigen::Success) throw PhysicalError("covariance matrix is singular");
  const Vector delta = xi - state.disp();
  const double det = state.cov().determinant();
  const double expo = -delta.dot(llt.solve(delta));
  return std::exp(expo) / (std::pow(std::numbers::pi, state.modes()) * std::sqrt(det));
}

double mean_photon_number(const GaussianState& state) {
  double total = 0.0;
  const Matrix& g = state.cov();
  const Vector& d = state.disp();
  for (int k = 0; k < state.modes(); ++k) {
    total += (g(2 * k, 2 * k) + g(2 * k + 1, 2 * k + 1)) / 4.0 +
             (d(2 * k) * d(2 * k) + d(2 * k + 1) * d(2 * k + 1)) / 2.0 - 0.5;
  }
  return total;
}

// ---------------------------------------------------------------------------

Matrix rotation(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

Matrix single_mode_squeezer(double r) {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = std::exp(r);
  s(1, 1) = std::exp(-r);
  return s;
}

Matrix two_mode_squeezed_cov(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Matrix g(4, 4);
  g << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return g;
}

Matrix thermal_cov(int modes, double nu) {
  return nu * Matrix::Identity(2 * modes, 2 * modes);
}

Matrix passive_from_unitary(const CMatrix& u) {
  if (u.rows() != u.cols()) throw StructuralError("mode unitary must be square");
  const Eigen::Index n = u.rows();
  Matrix k(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = u(i, j).real();
      const double im = u(i, j).imag();
      k(2 * i, 2 * j) = re;
      k(2 * i, 2 * j + 1) = -im;
      k(2 * i + 1, 2 * j) = im;
      k(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return k;
}

CMatrix unitary_from_passive(const Matrix& k) {
  if (!is_passive(k, 1e-7)) throw PhysicalError("matrix is not passive");
  const Eigen::Index n = k.rows() / 2;
  CMatrix u(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) u(i, j) = Complex(k(2 * i, 2 * j), k(2 * i + 1, 2 * j));
  }
  return u;
}

CMatrix beam_splitter_unitary(Complex t, Complex r) {
  if (!std::isfinite(std::abs(t)) || !std::isfinite(std::abs(r)) ||
      std::abs(std::norm(t) + std::norm(r) - 1.0) > 1e-10) {
    throw PhysicalError(fmt::format("beam splitter needs |T|^2 + |R|^2 = 1, got {:.12f}",
                                    std::norm(t) + std::norm(r)));
  }
  // <a> -> M^dag <a> where U a U^dag = M a, M = [[T, -R], [R^*, T]].
  CMatrix u(2, 2);
  u << std::conj(t), r, -std::conj(r), t;
  return u;
}

Matrix beam_splitter_symplectic(Complex t, Complex r) {
  return passive_from_unitary(beam_splitter_unitary(t, r));
}

}  // namespace gaussent
