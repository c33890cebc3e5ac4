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

#include "gaussent/channels.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "gaussent/linalg.hpp"

namespace gaussent {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

void check_shapes(const GaussianChannel& ch) {
  if (ch.a.rows() % 2 != 0 || ch.a.cols() % 2 != 0 || ch.a.rows() == 0 || ch.a.cols() == 0) {
    throw StructuralError(fmt::format("channel matrix A must have even, non-zero dimensions, got {}x{}",
                                      ch.a.rows(), ch.a.cols()));
  }
  if (ch.g.rows() != ch.a.rows() || ch.g.cols() != ch.a.rows()) {
    throw StructuralError(fmt::format("channel noise G is {}x{}, expected {}x{}", ch.g.rows(),
                                      ch.g.cols(), ch.a.rows(), ch.a.rows()));
  }
  if (ch.shift.size() != ch.a.rows()) {
    throw StructuralError(fmt::format("channel shift has length {}, expected {}", ch.shift.size(),
                                      ch.a.rows()));
  }
  if (!linalg::is_symmetric(ch.g)) throw StructuralError("channel noise G is not symmetric");
}

void check_mode(const GaussianState& state, int mode) {
  if (state.modes() < 2) {
    throw StructuralError("conditioning needs at least two modes (one measured, one kept)");
  }
  if (mode < 0 || mode >= state.modes()) {
    throw StructuralError(fmt::format("mode {} out of range for a {}-mode state", mode, state.modes()));
  }
}

struct Blocks {
  Matrix a;   // kept x kept
  Matrix b;   // measured 2x2
  Matrix c;   // kept x measured
  Vector d_b;
};

Blocks split_mode(const GaussianState& state, int mode) {
  std::vector<int> kept_modes;
  for (int k = 0; k < state.modes(); ++k) {
    if (k != mode) kept_modes.push_back(k);
  }
  const auto kept = linalg::quadrature_indices(kept_modes);
  const std::vector<int> measured = {2 * mode, 2 * mode + 1};
  Blocks out;
  out.a = linalg::submatrix(state.cov(), kept, kept);
  out.b = linalg::submatrix(state.cov(), measured, measured);
  out.c = linalg::submatrix(state.cov(), kept, measured);
  out.d_b = state.disp().segment(2 * mode, 2);
  return out;
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

LMatrix pseudo_inverse_ld(const LMatrix& m) {
  Eigen::JacobiSVD<LMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const LVector& s = svd.singularValues();
  const long double cutoff = s.size() > 0 ? 1e-12L * s(0) : 0.0L;
  LVector inv = LVector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) inv(i) = 1.0L / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

ChannelValidity channel_valid(const GaussianChannel& ch, double tol) {
  check_shapes(ch);
  const Matrix im = symplectic_form(ch.n_out()) - ch.a * symplectic_form(ch.n_in()) * ch.a.transpose();
  ChannelValidity out;
  out.min_eigenvalue = linalg::min_eigenvalue_hermitian(symmetrized(ch.g), 0.5 * (im - im.transpose()));
  out.valid = out.min_eigenvalue >= -tol;
  return out;
}

GaussianState apply_channel(const GaussianState& state, const GaussianChannel& ch) {
  const auto validity = channel_valid(ch);
  if (ch.n_in() != state.modes()) {
    throw StructuralError(fmt::format("channel expects {} input modes, state has {}", ch.n_in(),
                                      state.modes()));
  }
  if (!validity.valid) {
    throw PhysicalError(fmt::format("channel is not completely positive (min eigenvalue {:.6f})",
                                    validity.min_eigenvalue));
  }
  Matrix cov = symmetrized(ch.a * state.cov() * ch.a.transpose() + ch.g);
  Vector disp = ch.a * state.disp() + ch.shift;
  return GaussianState(std::move(cov), std::move(disp));
}

GaussianChannel identity_channel(int modes) {
  if (modes < 1) throw StructuralError("channel needs at least one mode");
  return {Matrix::Identity(2 * modes, 2 * modes), Matrix::Zero(2 * modes, 2 * modes),
          Vector::Zero(2 * modes)};
}

GaussianChannel symplectic_channel(const Matrix& s) {
  if (!is_symplectic(s)) throw PhysicalError("matrix is not symplectic");
  return {s, Matrix::Zero(s.rows(), s.rows()), Vector::Zero(s.rows())};
}

GaussianChannel dilated_channel(const Matrix& s, const Matrix& env_cov) {
  const Eigen::Index ne = env_cov.rows();
  const Eigen::Index ns = s.rows() - ne;
  if (s.rows() != s.cols() || ns <= 0 || ns % 2 != 0) {
    throw StructuralError(fmt::format("dilation of size {}x{} does not fit an environment of size {}",
                                      s.rows(), s.cols(), ne));
  }
  if (!validate_covariance(env_cov).valid) throw PhysicalError("environment state is not physical");
  if (!is_symplectic(s)) throw PhysicalError("dilation is not symplectic");
  const Matrix s_se = s.topRightCorner(ns, ne);
  return {s.topLeftCorner(ns, ns), symmetrized(s_se * env_cov * s_se.transpose()), Vector::Zero(ns)};
}

GaussianChannel attenuation_channel(double eta, int modes) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw StructuralError(fmt::format("transmissivity {} outside [0, 1]", eta));
  }
  if (modes < 1) throw StructuralError("channel needs at least one mode");
  const Eigen::Index d = 2 * modes;
  return {std::sqrt(eta) * Matrix::Identity(d, d), (1.0 - eta) * Matrix::Identity(d, d), Vector::Zero(d)};
}

GaussianChannel direct_sum(const GaussianChannel& a, const GaussianChannel& b) {
  check_shapes(a);
  check_shapes(b);
  Vector shift(a.shift.size() + b.shift.size());
  shift << a.shift, b.shift;
  return {linalg::direct_sum(a.a, b.a), linalg::direct_sum(a.g, b.g), shift};
}

ConditionalState vacuum_project(const GaussianState& state, int mode) {
  check_mode(state, mode);
  const Blocks blk = split_mode(state, mode);
  const Matrix b1 = blk.b + Matrix::Identity(2, 2);
  const Eigen::LLT<Matrix> llt(b1);
  Matrix cov = symmetrized(blk.a - blk.c * llt.solve(blk.c.transpose()));
  const double p = 2.0 / std::sqrt(b1.determinant()) * std::exp(-blk.d_b.dot(llt.solve(blk.d_b)));
  return {GaussianState(std::move(cov)), p};
}

GaussianState homodyne_condition(const GaussianState& state, int mode, Quadrature q) {
  check_mode(state, mode);
  return GaussianState(homodyne_schur(state.cov(), mode, q));
}

Matrix homodyne_schur(const Matrix& cov, int mode, Quadrature q) {
  const int modes = static_cast<int>(cov.rows() / 2);
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || modes < 2 || mode < 0 || mode >= modes) {
    throw StructuralError(fmt::format("cannot measure mode {} of a {}x{} covariance matrix", mode,
                                      cov.rows(), cov.cols()));
  }
  std::vector<int> kept_modes;
  for (int k = 0; k < modes; ++k) {
    if (k != mode) kept_modes.push_back(k);
  }
  const auto kept = linalg::quadrature_indices(kept_modes);
  const std::vector<int> measured = {2 * mode, 2 * mode + 1};
  const Matrix a = linalg::submatrix(cov, kept, kept);
  const Matrix b = linalg::submatrix(cov, measured, measured);
  const Matrix c = linalg::submatrix(cov, kept, measured);
  Matrix pi = Matrix::Zero(2, 2);
  if (q == Quadrature::X) {
    pi(0, 0) = 1.0;
  } else {
    pi(1, 1) = 1.0;
  }
  return symmetrized(a - c * linalg::pseudo_inverse(pi * b * pi) * c.transpose());
}

ChannelValidity cp_map_valid(const GaussianCPMap& m, double tol) {
  if (m.gamma.rows() != m.gamma.cols() || m.gamma.rows() == 0 || m.gamma.rows() % 4 != 0) {
    throw StructuralError(fmt::format("CP-map matrix must be 4n x 4n, got {}x{}", m.gamma.rows(),
                                      m.gamma.cols()));
  }
  if (m.displacement.size() != m.gamma.rows()) {
    throw StructuralError(fmt::format("CP-map displacement has length {}, expected {}",
                                      m.displacement.size(), m.gamma.rows()));
  }
  if (!linalg::is_symmetric(m.gamma)) throw StructuralError("CP-map matrix is not symmetric");
  ChannelValidity out;
  out.min_eigenvalue =
      linalg::min_eigenvalue_hermitian(symmetrized(m.gamma), symplectic_form(2 * m.modes()));
  out.valid = out.min_eigenvalue >= -tol * std::max(1.0, linalg::max_abs(m.gamma));
  return out;
}

GaussianState apply_cp_map(const GaussianState& state, const GaussianCPMap& m) {
  const auto validity = cp_map_valid(m);
  const int n = m.modes();
  if (state.modes() != n) {
    throw StructuralError(fmt::format("CP map acts on {} modes, state has {}", n, state.modes()));
  }
  if (!validity.valid) {
    throw PhysicalError(fmt::format("CP-map matrix violates the uncertainty relation (min eigenvalue {:.6e})",
                                    validity.min_eigenvalue));
  }
  const Eigen::Index d = 2 * n;
  Vector flip = Vector::Ones(d);
  for (Eigen::Index k = 1; k < d; k += 2) flip(k) = -1.0;

  const LMatrix g1 = m.gamma.topLeftCorner(d, d).cast<long double>();
  const LMatrix g12 = (m.gamma.topRightCorner(d, d) * flip.asDiagonal()).cast<long double>();
  const LMatrix g2 =
      (flip.asDiagonal() * m.gamma.bottomRightCorner(d, d) * flip.asDiagonal()).cast<long double>();
  const LVector d1 = m.displacement.head(d).cast<long double>();
  const LVector d2 = flip.cwiseProduct(m.displacement.tail(d)).cast<long double>();

  const LMatrix inv = pseudo_inverse_ld(g2 + state.cov().cast<long double>());
  const LMatrix cov = g1 - g12 * inv * g12.transpose();
  const LVector disp = d1 + g12 * inv * (state.disp().cast<long double>() - d2);
  return GaussianState(symmetrized(cov.cast<double>()), disp.cast<double>());
}

GaussianCPMap attenuation_cp_map(double eta, double a) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw StructuralError(fmt::format("transmissivity {} outside [0, 1]", eta));
  }
  if (!(a >= 1.0)) throw StructuralError(fmt::format("squeezing parameter a = {} must be >= 1", a));
  // The output is g1 - c^2 / (a + gamma); g1 and c^2 / a are of order a and
  // cancel. Step a until g1 - (c^2 + eta) / a equals 1 - eta to 1e-11 after
  // rounding g1 to double.
  double c = 0.0;
  double g1 = 0.0;
  for (int step = 0; step < 10'000'000; ++step, a += 1.0) {
    const long double al = a;
    c = static_cast<double>(std::sqrt(static_cast<long double>(eta) * (al * al - 1.0L)));
    const long double cl = c;
    const long double target = static_cast<long double>(1.0 - eta) + (cl * cl + eta) / al;
    g1 = static_cast<double>(target);
    if (std::abs(static_cast<long double>(g1) - target) < 1e-11L) break;
  }
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = g(1, 1) = g1;
  g(2, 2) = g(3, 3) = a;
  g(0, 2) = g(2, 0) = c;
  g(1, 3) = g(3, 1) = -c;
  return {g, Vector::Zero(4)};
}

GaussianCPMap vacuum_reprepare_cp_map(int modes) {
  if (modes < 1) throw StructuralError("CP map needs at least one mode");
  return {Matrix::Identity(4 * modes, 4 * modes), Vector::Zero(4 * modes)};
}

bool log_channel_verify(const Matrix& gamma, const Matrix& gamma_target,
                        const GaussianChannel& ch_a, const GaussianChannel& ch_b,
                        const ModePartition& p) {
  const int na = p.count(Party::A);
  const int nb = p.count(Party::B);
  if (gamma.rows() != 2 * p.modes() || gamma_target.rows() != gamma.rows() ||
      gamma_target.cols() != gamma.cols()) {
    throw StructuralError("covariance matrices do not match the partition");
  }
  if (ch_a.n_in() != na || ch_a.n_out() != na || ch_b.n_in() != nb || ch_b.n_out() != nb) {
    throw StructuralError(fmt::format("local channels must map {} -> {} and {} -> {} modes", na, na,
                                      nb, nb));
  }
  for (const auto* ch : {&ch_a, &ch_b}) {
    const auto v = channel_valid(*ch);
    if (!v.valid) {
      throw PhysicalError(fmt::format("local channel is not completely positive (min eigenvalue {:.6f})",
                                      v.min_eigenvalue));
    }
  }
  const GaussianChannel joint = direct_sum(ch_a, ch_b);
  const Matrix perm = p.ordering_permutation();
  const Matrix a = perm.transpose() * joint.a * perm;
  const Matrix g = perm.transpose() * joint.g * perm;
  const Matrix out = a * gamma * a.transpose() + g;
  return linalg::max_abs(out - gamma_target) <= 1e-8;
}

}  // namespace gaussent
