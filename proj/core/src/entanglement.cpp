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

#include "gaussent/entanglement.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>

#include <fmt/format.h>

#include "gaussent/linalg.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent {

namespace {

constexpr double kPurityTolerance = 1e-6;
constexpr double kNormalizationTolerance = 1e-9;

void require_valid(const Matrix& gamma) {
  const auto report = validate_covariance(gamma);
  if (!report.valid) {
    throw PhysicalError(fmt::format(
        "invalid covariance matrix (min eigenvalue of gamma + i sigma = {:.6f})",
        report.min_uncertainty_eigenvalue));
  }
}

void require_partition(const Matrix& gamma, const ModePartition& p) {
  if (gamma.rows() != 2 * p.modes()) {
    throw StructuralError(fmt::format("partition covers {} modes, covariance matrix has {}",
                                      p.modes(), gamma.rows() / 2));
  }
}

std::vector<double> sorted_padded(std::span<const double> v, std::size_t size) {
  std::vector<double> out(v.begin(), v.end());
  out.resize(std::max(size, out.size()), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double shannon_bits(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Entropy (bits) of the geometric distribution (1-q) q^n.
double geometric_entropy(double q) {
  if (q <= 0.0) return 0.0;
  const double log_q = std::log2(q);
  const double log_1mq = std::log2(1.0 - q);
  // Closed form -log2(1-q) - q log2(q) / (1-q) once the series gets long.
  const double terms_needed = std::log(1e-12) / std::log(q);
  if (terms_needed > 1e6) return -log_1mq - q * log_q / (1.0 - q);

  double total = 0.0;
  double qn = 1.0;
  for (long n = 0;; ++n) {
    const double p = (1.0 - q) * qn;
    total += shannon_bits(p);
    qn *= q;
    // Exact remaining sum of -p_m log2 p_m for m > n.
    const double m0 = static_cast<double>(n + 1);
    const double tail = qn * (-log_1mq + (-log_q) * (m0 + q / (1.0 - q)));
    if (tail < 1e-12) break;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModePartition

ModePartition::ModePartition(std::vector<Party> parties) : parties_(std::move(parties)) {
  if (parties_.empty()) throw StructuralError("partition must cover at least one mode");
}

ModePartition ModePartition::split(int n_a, int n_b) {
  if (n_a < 0 || n_b < 0 || n_a + n_b == 0) {
    throw StructuralError(fmt::format("invalid split {} x {}", n_a, n_b));
  }
  std::vector<Party> parties(static_cast<std::size_t>(n_a), Party::A);
  parties.insert(parties.end(), static_cast<std::size_t>(n_b), Party::B);
  return ModePartition(std::move(parties));
}

ModePartition ModePartition::parse(std::string_view labels) {
  std::vector<Party> parties;
  for (char c : labels) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u == 'A') {
      parties.push_back(Party::A);
    } else if (u == 'B') {
      parties.push_back(Party::B);
    } else if (u == ',' || u == ' ' || u == '\t') {
      continue;
    } else {
      throw StructuralError(fmt::format("bad partition label '{}'", c));
    }
  }
  return ModePartition(std::move(parties));
}

int ModePartition::count(Party p) const {
  return static_cast<int>(std::count(parties_.begin(), parties_.end(), p));
}

std::vector<int> ModePartition::modes_of(Party p) const {
  std::vector<int> out;
  for (int k = 0; k < modes(); ++k) {
    if (parties_[static_cast<std::size_t>(k)] == p) out.push_back(k);
  }
  return out;
}

std::string ModePartition::to_string() const {
  std::string s;
  for (Party p : parties_) s += (p == Party::A ? 'A' : 'B');
  return s;
}

Matrix ModePartition::ordering_permutation() const {
  const int n = modes();
  Matrix perm = Matrix::Zero(2 * n, 2 * n);
  int row = 0;
  for (Party group : {Party::A, Party::B}) {
    for (int k : modes_of(group)) {
      perm(row, 2 * k) = 1.0;
      perm(row + 1, 2 * k + 1) = 1.0;
      row += 2;
    }
  }
  return perm;
}

Matrix ModePartition::time_reversal() const {
  Vector diag = Vector::Ones(2 * modes());
  for (int k : modes_of(Party::B)) diag(2 * k + 1) = -1.0;
  return diag.asDiagonal();
}

// ---------------------------------------------------------------------------

Matrix partial_transpose_cov(const Matrix& gamma, const ModePartition& p) {
  require_partition(gamma, p);
  const Matrix f = p.time_reversal();
  return f * gamma * f;
}

PptReport ppt_verdict(const Matrix& gamma, const ModePartition& p) {
  require_partition(gamma, p);
  require_valid(gamma);
  const Matrix pt = partial_transpose_cov(gamma, p);
  PptReport report;
  report.min_eigenvalue = linalg::min_eigenvalue_hermitian(pt, symplectic_form(p.modes()));
  const double scale = std::max(1.0, linalg::max_abs(gamma));
  report.verdict =
      report.min_eigenvalue < -kPsdTolerance * scale ? PptVerdict::NptEntangled : PptVerdict::Ppt;
  report.ppt_implies_separable = std::min(p.count(Party::A), p.count(Party::B)) <= 1;
  return report;
}

double log_negativity_gaussian(const Matrix& gamma, const ModePartition& p) {
  require_partition(gamma, p);
  if (ppt_verdict(gamma, p).verdict == PptVerdict::Ppt) return 0.0;
  const Vector nu = symplectic_eigenvalues(partial_transpose_cov(gamma, p));
  double total = 0.0;
  for (double v : nu) {
    if (v < 1.0) total -= std::log2(v);
  }
  return total;
}

bool separability_witness_verify(const Matrix& gamma, const Matrix& gamma_a,
                                 const Matrix& gamma_b, const ModePartition& p) {
  require_partition(gamma, p);
  if (gamma_a.rows() != 2 * p.count(Party::A) || gamma_b.rows() != 2 * p.count(Party::B)) {
    throw StructuralError(fmt::format("witness blocks are {}x{} and {}x{}, partition needs {} and {}",
                                      gamma_a.rows(), gamma_a.cols(), gamma_b.rows(),
                                      gamma_b.cols(), 2 * p.count(Party::A),
                                      2 * p.count(Party::B)));
  }
  require_valid(gamma);
  if (!validate_covariance(gamma_a).valid || !validate_covariance(gamma_b).valid) return false;
  const Matrix perm = p.ordering_permutation();
  const Matrix blocks = perm.transpose() * linalg::direct_sum(gamma_a, gamma_b) * perm;
  const Matrix gap = gamma - blocks;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gap + gap.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -kPsdTolerance;
}

// ---------------------------------------------------------------------------
// Normal forms

Matrix schmidt_target(const Vector& r) {
  const Eigen::Index n = r.size();
  Matrix g = Matrix::Zero(4 * n, 4 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double c = std::cosh(2.0 * r(k));
    const double s = std::sinh(2.0 * r(k));
    const Eigen::Index a = 2 * k;
    const Eigen::Index b = 2 * n + 2 * k;
    g(a, a) = g(a + 1, a + 1) = g(b, b) = g(b + 1, b + 1) = c;
    g(a, b) = g(b, a) = s;
    g(a + 1, b + 1) = g(b + 1, a + 1) = -s;
  }
  return g;
}

SchmidtNormalForm schmidt_normal_form(const Matrix& gamma, const ModePartition& p) {
  require_partition(gamma, p);
  const int n = p.count(Party::A);
  if (n != p.count(Party::B)) {
    throw StructuralError(fmt::format("normal form needs an n x n partition, got {} x {}", n,
                                      p.count(Party::B)));
  }
  require_valid(gamma);
  const Matrix perm = p.ordering_permutation();
  const Matrix g = perm * gamma * perm.transpose();
  const Vector nu = symplectic_eigenvalues(g);
  for (double v : nu) {
    if (std::abs(v - 1.0) > kPurityTolerance) {
      throw InfeasibleError(fmt::format(
          "state is mixed (symplectic eigenvalue {:.9f}); the Schmidt normal form needs a pure state", v));
    }
  }

  const int d = 2 * n;
  const Matrix a = g.topLeftCorner(d, d);
  const Matrix b = g.bottomRightCorner(d, d);
  const Matrix c = g.topRightCorner(d, d);
  const auto wa = williamson(a);
  const auto wb = williamson(b);
  Matrix cp = wa.s * c * wb.s.transpose();

  // Two-mode squeezing amplitude per mode from the cross block rows, then
  // reorder modes so that r comes out descending.
  Vector s(n);
  for (int k = 0; k < n; ++k) {
    s(k) = std::sqrt(0.5 * (cp.row(2 * k).squaredNorm() + cp.row(2 * k + 1).squaredNorm()));
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return s(i) > s(j); });
  Matrix mode_perm = Matrix::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    mode_perm(2 * k, 2 * order[k]) = 1.0;
    mode_perm(2 * k + 1, 2 * order[k] + 1) = 1.0;
  }
  const Matrix s_a = mode_perm * wa.s;
  const Matrix s_b1 = mode_perm * wb.s;
  cp = mode_perm * cp * mode_perm.transpose();
  Vector s_sorted(n);
  for (int k = 0; k < n; ++k) s_sorted(k) = s(order[k]);

  // Local passive on B turning the cross block into (+) s_k diag(1, -1):
  // C' U^T = Z_s  =>  U = Z_s C'^{-T}, restricted to the entangled modes.
  Matrix u_b = Matrix::Identity(d, d);
  const double scale = std::max(1.0, s_sorted.maxCoeff());
  std::vector<int> entangled;
  for (int k = 0; k < n; ++k) {
    if (s_sorted(k) > 1e-10 * scale) entangled.push_back(k);
  }
  if (!entangled.empty()) {
    const auto idx = linalg::quadrature_indices(entangled);
    const Matrix c_sub = linalg::submatrix(cp, idx, idx);
    Vector zs(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < entangled.size(); ++i) {
      zs(2 * i) = s_sorted(entangled[i]);
      zs(2 * i + 1) = -s_sorted(entangled[i]);
    }
    Matrix u_sub = zs.asDiagonal() * c_sub.inverse().transpose();
    Eigen::JacobiSVD<Matrix> svd(u_sub, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u_sub = svd.matrixU() * svd.matrixV().transpose();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        u_b(idx[i], idx[j]) = u_sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }

  SchmidtNormalForm out;
  out.s_a = s_a;
  out.s_b = u_b * s_b1;
  out.r.resize(n);
  for (int k = 0; k < n; ++k) out.r(k) = 0.5 * std::asinh(s_sorted(k));
  return out;
}

Matrix SimonNormalForm::matrix() const {
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = g(1, 1) = x1;
  g(2, 2) = g(3, 3) = x2;
  g(0, 2) = g(2, 0) = x3;
  g(1, 3) = g(3, 1) = x4;
  return g;
}

SimonNormalForm simon_normal_form(const Matrix& gamma) {
  if (gamma.rows() != 4 || gamma.cols() != 4) {
    throw StructuralError(fmt::format("Simon normal form needs a two-mode covariance matrix, got {}x{}",
                                      gamma.rows(), gamma.cols()));
  }
  require_valid(gamma);
  const Matrix g = 0.5 * (gamma + gamma.transpose());
  const auto wa = williamson(g.topLeftCorner(2, 2));
  const auto wb = williamson(g.bottomRightCorner(2, 2));
  const Matrix cp = wa.s * g.topRightCorner(2, 2) * wb.s.transpose();

  // Rotations are the only local symplectics that keep x I invariant; align
  // the cross block with its singular vectors.
  Eigen::JacobiSVD<Matrix> svd(cp, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix u = svd.matrixU();
  Matrix v = svd.matrixV();
  Vector sv = svd.singularValues();
  if (u.determinant() < 0) {
    u.col(1) *= -1.0;
    sv(1) *= -1.0;
  }
  if (v.determinant() < 0) {
    v.col(1) *= -1.0;
    sv(1) *= -1.0;
  }

  SimonNormalForm out;
  out.s_a = u.transpose() * wa.s;
  out.s_b = v.transpose() * wb.s;
  out.x1 = wa.nu(0);
  out.x2 = wb.nu(0);
  out.x3 = sv(0);
  out.x4 = sv(1);
  return out;
}

// ---------------------------------------------------------------------------
// Pure-state convertibility

std::vector<double> two_mode_squeezed_schmidt(double r, int cutoff) {
  if (cutoff < 1) throw StructuralError("cutoff must be positive");
  const double q = std::pow(std::tanh(r), 2);
  std::vector<double> p(static_cast<std::size_t>(cutoff));
  double qn = 1.0;
  for (auto& x : p) {
    x = (1.0 - q) * qn;
    qn *= q;
  }
  return p;
}

double entropy_of_entanglement_pure(std::span<const double> r) {
  double total = 0.0;
  for (double rk : r) {
    if (!(rk >= 0.0) || !std::isfinite(rk)) {
      throw StructuralError(fmt::format("squeezing parameters must be finite and non-negative, got {}", rk));
    }
    total += geometric_entropy(std::pow(std::tanh(rk), 2));
  }
  return total;
}

bool glocc_convertible(std::span<const double> r, std::span<const double> r_target) {
  const std::size_t size = std::max(r.size(), r_target.size());
  const auto a = sorted_padded(r, size);
  const auto b = sorted_padded(r_target, size);
  for (std::size_t k = 0; k < size; ++k) {
    if (a[k] < b[k]) return false;
  }
  return true;
}

bool locc_convertible_pure(std::span<const double> alpha, std::span<const double> alpha_target) {
  for (auto v : {alpha, alpha_target}) {
    double sum = 0.0;
    for (double x : v) {
      if (x < -kNormalizationTolerance || !std::isfinite(x)) {
        throw StructuralError(fmt::format("Schmidt coefficient {} is not a probability", x));
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
      throw StructuralError(fmt::format("Schmidt spectrum sums to {}, expected 1", sum));
    }
  }
  const std::size_t size = std::max(alpha.size(), alpha_target.size());
  const auto a = sorted_padded(alpha, size);
  const auto b = sorted_padded(alpha_target, size);
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t l = 0; l < size; ++l) {
    sa += a[l];
    sb += b[l];
    if (sa > sb + 1e-12) return false;
  }
  return true;
}

GloccLoccGap glocc_vs_locc_gap(double r, double r_target, int cutoff) {
  if (r < 0.0 || r_target < 0.0) throw StructuralError("squeezing parameters must be non-negative");
  const auto single = two_mode_squeezed_schmidt(r, cutoff);
  std::vector<double> source;
  source.reserve(single.size() * single.size());
  for (double x : single) {
    for (double y : single) source.push_back(x * y);
  }
  auto target = two_mode_squeezed_schmidt(r_target, cutoff);

  const double source_sum = std::accumulate(source.begin(), source.end(), 0.0);
  const double target_sum = std::accumulate(target.begin(), target.end(), 0.0);
  GloccLoccGap out;
  out.tail_mass = std::max(1.0 - source_sum, 1.0 - target_sum);
  if (out.tail_mass > 1e-8) {
    throw InfeasibleError(fmt::format("cutoff {} leaves tail mass {:.3e} > 1e-8", cutoff, out.tail_mass));
  }
  for (double& x : source) x /= source_sum;
  for (double& x : target) x /= target_sum;

  const std::vector<double> two_copies = {r, r};
  const std::vector<double> one_copy = {r_target, 0.0};
  out.glocc = glocc_convertible(two_copies, one_copy);
  out.locc = locc_convertible_pure(source, target);
  return out;
}

std::optional<double> find_locc_only_target(double r, double r_max, int steps, int cutoff) {
  for (int i = 1; i <= steps; ++i) {
    const double rp = r + (r_max - r) * static_cast<double>(i) / steps;
    const auto gap = glocc_vs_locc_gap(r, rp, cutoff);
    if (gap.locc && !gap.glocc) return rp;
  }
  return std::nullopt;
}

}  // namespace gaussent
