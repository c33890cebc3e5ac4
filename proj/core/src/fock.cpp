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

#include "gaussent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "gaussent/linalg.hpp"

namespace gaussent {

namespace {

constexpr std::int64_t kMaxDimension = std::int64_t{1} << 24;

using Tuple = std::vector<int>;

std::int64_t flat_index(const Tuple& t, int cutoff) {
  std::int64_t idx = 0;
  for (int n : t) idx = idx * cutoff + n;
  return idx;
}

Tuple digits(std::int64_t idx, int modes, int cutoff) {
  Tuple t(static_cast<std::size_t>(modes));
  for (int k = modes - 1; k >= 0; --k) {
    t[static_cast<std::size_t>(k)] = static_cast<int>(idx % cutoff);
    idx /= cutoff;
  }
  return t;
}

// All photon tuples of `modes` modes with the given total and every entry
// below `limit`, in lexicographic order.
std::vector<Tuple> sector_tuples(int modes, int total, int limit) {
  std::vector<Tuple> out;
  Tuple t(static_cast<std::size_t>(modes), 0);
  auto rec = [&](auto&& self, int k, int remaining) -> void {
    if (k == modes - 1) {
      if (remaining < limit) {
        t[static_cast<std::size_t>(k)] = remaining;
        out.push_back(t);
      }
      return;
    }
    for (int n = 0; n <= std::min(remaining, limit - 1); ++n) {
      t[static_cast<std::size_t>(k)] = n;
      self(self, k + 1, remaining - n);
    }
  };
  rec(rec, 0, total);
  return out;
}

std::int64_t tuple_key(const Tuple& t, int base) {
  std::int64_t key = 0;
  for (int n : t) key = key * base + n;
  return key;
}

void require_unitary(const CMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw StructuralError("mode unitary must be square and non-empty");
  const double err = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw PhysicalError(fmt::format("mode matrix is not unitary (error {:.3e})", err));
}

// Sector matrices of the passive unitary for totals 0..max_total over
// tuples with entries below `limit`. Column n is built from column n - e_j
// by one application of sum_i u_ij a_i^dag; entries with some photon number
// >= limit never feed back into entries below it, so the retained block is
// exact.
struct Sectors {
  std::vector<std::vector<Tuple>> tuples;
  std::vector<CMatrix> blocks;
};

Sectors build_sectors(const CMatrix& u, int max_total, int limit) {
  const int m = static_cast<int>(u.rows());
  const int base = std::max(limit, max_total + 1) + 1;
  Sectors s;
  std::unordered_map<std::int64_t, int> prev_pos;
  for (int total = 0; total <= max_total; ++total) {
    auto tuples = sector_tuples(m, total, limit);
    std::unordered_map<std::int64_t, int> pos;
    for (std::size_t i = 0; i < tuples.size(); ++i) pos[tuple_key(tuples[i], base)] = static_cast<int>(i);
    const auto size = static_cast<Eigen::Index>(tuples.size());
    CMatrix block = CMatrix::Zero(size, size);
    if (total == 0) {
      if (size == 1) block(0, 0) = 1.0;
    } else {
      const auto& prev_tuples = s.tuples.back();
      const CMatrix& prev = s.blocks.back();
      for (Eigen::Index c = 0; c < size; ++c) {
        Tuple lower = tuples[static_cast<std::size_t>(c)];
        int j = 0;
        while (lower[static_cast<std::size_t>(j)] == 0) ++j;
        const double nj = lower[static_cast<std::size_t>(j)];
        --lower[static_cast<std::size_t>(j)];
        const int pc = prev_pos.at(tuple_key(lower, base));
        for (std::size_t r = 0; r < prev_tuples.size(); ++r) {
          const Complex coef = prev(static_cast<Eigen::Index>(r), pc);
          if (coef == Complex(0.0)) continue;
          Tuple raised = prev_tuples[r];
          for (int i = 0; i < m; ++i) {
            const Complex uij = u(i, j);
            if (uij == Complex(0.0)) continue;
            const int ni = raised[static_cast<std::size_t>(i)];
            if (ni + 1 >= limit) continue;
            ++raised[static_cast<std::size_t>(i)];
            block(pos.at(tuple_key(raised, base)), c) += uij * std::sqrt(ni + 1.0) * coef;
            --raised[static_cast<std::size_t>(i)];
          }
        }
        block.col(c) /= std::sqrt(nj);
      }
    }
    s.tuples.push_back(std::move(tuples));
    s.blocks.push_back(std::move(block));
    prev_pos = std::move(pos);
  }
  return s;
}

void require_mode(int mode, int modes) {
  if (mode < 0 || mode >= modes) {
    throw StructuralError(fmt::format("mode {} out of range for a {}-mode register", mode, modes));
  }
}

void require_local(const FockOperator& op, int cutoff) {
  if (op.modes != 1 || op.cutoff != cutoff) {
    throw StructuralError(fmt::format("expected a single-mode operator with cutoff {}, got {} modes, cutoff {}",
                                      cutoff, op.modes, op.cutoff));
  }
}

// out[l, i, r] = sum_j op(i, j) in[l, j, r] for every column of `in`.
CMatrix apply_local_columns(const CMatrix& op, int mode, int modes, int cutoff, const CMatrix& in) {
  std::int64_t r_size = 1;
  for (int k = mode + 1; k < modes; ++k) r_size *= cutoff;
  const std::int64_t l_size = in.rows() / (cutoff * r_size);
  CMatrix out = CMatrix::Zero(in.rows(), in.cols());
  for (Eigen::Index col = 0; col < in.cols(); ++col) {
    for (std::int64_t l = 0; l < l_size; ++l) {
      for (std::int64_t rr = 0; rr < r_size; ++rr) {
        const std::int64_t base = l * cutoff * r_size + rr;
        for (int j = 0; j < cutoff; ++j) {
          const Complex v = in(base + j * r_size, col);
          if (v == Complex(0.0)) continue;
          for (int i = 0; i < cutoff; ++i) out(base + i * r_size, col) += op(i, j) * v;
        }
      }
    }
  }
  return out;
}

std::vector<std::int64_t> crop_indices(int modes, int from, int to) {
  std::vector<std::int64_t> idx;
  const std::int64_t dim = fock_dimension(modes, to);
  idx.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) idx.push_back(flat_index(digits(i, modes, to), from));
  return idx;
}

bool is_hermitian(const CMatrix& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_density(const FockDensity& rho) {
  const auto dim = fock_dimension(rho.modes, rho.cutoff);
  if (rho.rho.rows() != dim || rho.rho.cols() != dim) {
    throw StructuralError(fmt::format("density matrix is {}x{}, register needs {}", rho.rho.rows(),
                                      rho.rho.cols(), dim));
  }
  if (!is_hermitian(rho.rho)) throw PhysicalError("density matrix is not Hermitian");
}

struct PureSetup {
  Vector nu;
  EulerDecomposition euler;
};

PureSetup gaussian_factors(const GaussianState& state) {
  const auto w = williamson(state.cov());
  const Matrix s = w.s.inverse();
  return {w.nu, euler_decomposition(s)};
}

// Squeezers on every mode, then the passive K, then displacement, on the
// padded register.
template <typename Apply>
void apply_gaussian_tail(const GaussianState& state, const EulerDecomposition& e, int padded, Apply&& apply_op,
                         const std::function<void(const Eigen::SparseMatrix<Complex>&)>& apply_passive) {
  const int m = state.modes();
  for (int k = 0; k < m; ++k) {
    const double r = std::log(e.squeezing(k));
    if (r != 0.0) apply_op(squeezer_fock(r, padded), k);
  }
  const CMatrix u = unitary_from_passive(e.k);
  if (!u.isIdentity(1e-14)) apply_passive(passive_fock_sparse(u, padded, padded - 1));
  for (int k = 0; k < m; ++k) {
    const Vector d = state.disp().segment(2 * k, 2);
    if (d.squaredNorm() > 0.0) apply_op(displacement_fock(d, padded), k);
  }
}

}  // namespace

std::int64_t fock_dimension(int modes, int cutoff) {
  if (modes < 1 || cutoff < 1) {
    throw StructuralError(fmt::format("invalid register: {} modes, cutoff {}", modes, cutoff));
  }
  std::int64_t dim = 1;
  for (int k = 0; k < modes; ++k) {
    dim *= cutoff;
    if (dim > kMaxDimension) {
      throw StructuralError(fmt::format("register with {} modes at cutoff {} is too large", modes, cutoff));
    }
  }
  return dim;
}

FockVector fock_vacuum(int modes, int cutoff) {
  FockVector v{modes, cutoff, CVector::Zero(fock_dimension(modes, cutoff)), 0.0};
  v.amplitudes(0) = 1.0;
  return v;
}

FockVector number_state(std::span<const int> photons, int cutoff) {
  const int modes = static_cast<int>(photons.size());
  FockVector v{modes, cutoff, CVector::Zero(fock_dimension(modes, cutoff)), 0.0};
  Tuple t(photons.begin(), photons.end());
  for (int n : t) {
    if (n < 0 || n >= cutoff) throw StructuralError(fmt::format("photon number {} outside cutoff {}", n, cutoff));
  }
  v.amplitudes(flat_index(t, cutoff)) = 1.0;
  return v;
}

FockVector two_mode_squeezed_fock(double r, int cutoff) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw StructuralError(fmt::format("squeezing r = {} must be >= 0", r));
  if (cutoff < 2) throw StructuralError("cutoff must be at least 2");
  const double l = std::tanh(r);
  FockVector v{2, cutoff, CVector::Zero(fock_dimension(2, cutoff)), 0.0};
  const double norm0 = std::sqrt(1.0 - l * l);
  double ln = 1.0;
  for (int n = 0; n < cutoff; ++n) {
    v.amplitudes(static_cast<Eigen::Index>(n) * cutoff + n) = norm0 * ln;
    ln *= l;
  }
  v.tail_mass = std::pow(l, 2.0 * cutoff);
  v.amplitudes.normalize();
  return v;
}

CMatrix passive_sector(const CMatrix& u, int photons) {
  require_unitary(u);
  if (photons < 0) throw StructuralError("photon number must be non-negative");
  return build_sectors(u, photons, photons + 1).blocks.back();
}

std::vector<CMatrix> passive_sectors(const CMatrix& u, int max_total) {
  require_unitary(u);
  if (max_total < 0) throw StructuralError("photon number must be non-negative");
  return build_sectors(u, max_total, max_total + 1).blocks;
}

Eigen::SparseMatrix<Complex> passive_fock_sparse(const CMatrix& u, int cutoff, int max_total) {
  require_unitary(u);
  const int m = static_cast<int>(u.rows());
  const auto dim = fock_dimension(m, cutoff);
  if (max_total < 0) max_total = m * (cutoff - 1);
  max_total = std::min(max_total, m * (cutoff - 1));
  const Sectors s = build_sectors(u, max_total, cutoff);
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t total = 0; total < s.blocks.size(); ++total) {
    const auto& tuples = s.tuples[total];
    const CMatrix& block = s.blocks[total];
    for (std::size_t c = 0; c < tuples.size(); ++c) {
      const auto col = flat_index(tuples[c], cutoff);
      for (std::size_t r = 0; r < tuples.size(); ++r) {
        const Complex v = block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (v != Complex(0.0)) triplets.emplace_back(flat_index(tuples[r], cutoff), col, v);
      }
    }
  }
  Eigen::SparseMatrix<Complex> out(dim, dim);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

FockOperator passive_fock(const CMatrix& u, int cutoff) {
  return {static_cast<int>(u.rows()), cutoff, CMatrix(passive_fock_sparse(u, cutoff))};
}

FockOperator beam_splitter_fock(Complex t, Complex r, int cutoff) {
  return passive_fock(beam_splitter_unitary(t, r), cutoff);
}

Complex beam_splitter_amplitude(Complex t, Complex r, int a, int m, int n, int k) {
  if (std::min({a, m, n, k}) < 0) throw StructuralError("photon numbers must be non-negative");
  if (a + m != n + k) return 0.0;
  return passive_sector(beam_splitter_unitary(t, r), n + k)(a, n);
}

FockOperator squeezer_fock(double r, int cutoff, int padding) {
  if (!std::isfinite(r)) throw StructuralError("squeezing must be finite");
  const int big = cutoff + std::max(padding, 0);
  fock_dimension(1, big);
  Matrix g = Matrix::Zero(big, big);
  for (int n = 0; n + 2 < big; ++n) {
    const double c = 0.5 * r * std::sqrt((n + 1.0) * (n + 2.0));
    g(n + 2, n) += c;  // a^dag^2
    g(n, n + 2) -= c;  // -a^2
  }
  const Matrix e = linalg::expm(g);
  return {1, cutoff, e.topLeftCorner(cutoff, cutoff).cast<Complex>()};
}

FockOperator weyl_fock(const Vector& xi, int cutoff, int padding) {
  if (xi.size() != 2) throw StructuralError("single-mode Weyl operator needs a 2-vector");
  const Complex alpha = -Complex(xi(0), xi(1)) / std::sqrt(2.0);
  const int big = cutoff + std::max(padding, 0);
  fock_dimension(1, big);
  CMatrix g = CMatrix::Zero(big, big);
  for (int n = 0; n + 1 < big; ++n) {
    const double s = std::sqrt(n + 1.0);
    g(n + 1, n) += alpha * s;
    g(n, n + 1) -= std::conj(alpha) * s;
  }
  const CMatrix e = linalg::expm(g);
  return {1, cutoff, e.topLeftCorner(cutoff, cutoff)};
}

FockOperator displacement_fock(const Vector& d, int cutoff, int padding) {
  return weyl_fock(-d, cutoff, padding);
}

FockVector apply_local(const FockOperator& op, int mode, const FockVector& psi) {
  require_mode(mode, psi.modes);
  require_local(op, psi.cutoff);
  FockVector out = psi;
  out.amplitudes = apply_local_columns(op.op, mode, psi.modes, psi.cutoff, psi.amplitudes);
  return out;
}

FockDensity apply_local(const FockOperator& op, int mode, const FockDensity& rho) {
  require_mode(mode, rho.modes);
  require_local(op, rho.cutoff);
  FockDensity out = rho;
  const CMatrix half = apply_local_columns(op.op, mode, rho.modes, rho.cutoff, rho.rho);
  out.rho = apply_local_columns(op.op, mode, rho.modes, rho.cutoff, half.adjoint()).adjoint();
  return out;
}

FockVector apply(const FockOperator& op, const FockVector& psi) {
  if (op.modes != psi.modes || op.cutoff != psi.cutoff) throw StructuralError("operator and state registers differ");
  FockVector out = psi;
  out.amplitudes = op.op * psi.amplitudes;
  return out;
}

FockDensity apply(const FockOperator& op, const FockDensity& rho) {
  if (op.modes != rho.modes || op.cutoff != rho.cutoff) throw StructuralError("operator and state registers differ");
  FockDensity out = rho;
  out.rho = op.op * rho.rho * op.op.adjoint();
  return out;
}

FockDensity to_density(const FockVector& psi) {
  return {psi.modes, psi.cutoff, psi.amplitudes * psi.amplitudes.adjoint(), 1.0, psi.tail_mass};
}

FockDensity partial_trace(const FockDensity& rho, std::span<const int> keep) {
  require_density(rho);
  std::vector<bool> kept(static_cast<std::size_t>(rho.modes), false);
  for (int k : keep) {
    require_mode(k, rho.modes);
    if (kept[static_cast<std::size_t>(k)]) throw StructuralError(fmt::format("mode {} listed twice", k));
    kept[static_cast<std::size_t>(k)] = true;
  }
  if (keep.empty()) throw StructuralError("partial trace must keep at least one mode");
  const int d = rho.cutoff;
  const int nk = static_cast<int>(keep.size());
  const auto dim = fock_dimension(rho.modes, d);
  const auto kdim = fock_dimension(nk, d);
  const auto tdim = dim / kdim;

  // Group full indices by their traced-out digits.
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> groups(static_cast<std::size_t>(tdim));
  for (std::int64_t i = 0; i < dim; ++i) {
    const Tuple t = digits(i, rho.modes, d);
    std::int64_t ki = 0;
    std::int64_t ti = 0;
    for (int k : keep) ki = ki * d + t[static_cast<std::size_t>(k)];
    for (int k = 0; k < rho.modes; ++k) {
      if (!kept[static_cast<std::size_t>(k)]) ti = ti * d + t[static_cast<std::size_t>(k)];
    }
    groups[static_cast<std::size_t>(ti)].emplace_back(i, ki);
  }
  CMatrix out = CMatrix::Zero(kdim, kdim);
  for (const auto& g : groups) {
    for (const auto& [i, ki] : g) {
      for (const auto& [j, kj] : g) out(ki, kj) += rho.rho(i, j);
    }
  }
  return {nk, d, out, rho.probability, rho.tail_mass};
}

FockOperator partial_transpose_fock(const FockDensity& rho, const ModePartition& p) {
  require_density(rho);
  if (p.modes() != rho.modes) throw StructuralError("partition does not match the register");
  const int d = rho.cutoff;
  const auto dim = fock_dimension(rho.modes, d);
  // index = A-part + B-part, each with the other party's digits zeroed.
  std::vector<std::int64_t> a_part(static_cast<std::size_t>(dim));
  std::vector<std::int64_t> b_part(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) {
    const Tuple t = digits(i, rho.modes, d);
    std::int64_t a = 0;
    std::int64_t b = 0;
    for (int k = 0; k < rho.modes; ++k) {
      const bool is_b = p.party(k) == Party::B;
      a = a * d + (is_b ? 0 : t[static_cast<std::size_t>(k)]);
      b = b * d + (is_b ? t[static_cast<std::size_t>(k)] : 0);
    }
    a_part[static_cast<std::size_t>(i)] = a;
    b_part[static_cast<std::size_t>(i)] = b;
  }
  CMatrix out(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    for (std::int64_t i = 0; i < dim; ++i) {
      const auto si = static_cast<std::size_t>(i);
      const auto sj = static_cast<std::size_t>(j);
      out(i, j) = rho.rho(a_part[si] + b_part[sj], a_part[sj] + b_part[si]);
    }
  }
  return {rho.modes, d, out};
}

Vector hermitian_eigenvalues(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw StructuralError("eigenvalues need a square matrix");
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      if (m(i, j) != Complex(0.0) || m(j, i) != Complex(0.0)) {
        const auto a = find(i);
        const auto b = find(j);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
      }
    }
  }
  std::unordered_map<Eigen::Index, std::vector<int>> blocks;
  for (Eigen::Index i = 0; i < n; ++i) blocks[find(i)].push_back(static_cast<int>(i));

  std::vector<double> eig;
  eig.reserve(static_cast<std::size_t>(n));
  for (const auto& [root, idx] : blocks) {
    const auto size = static_cast<Eigen::Index>(idx.size());
    if (size == 1) {
      eig.push_back(m(idx[0], idx[0]).real());
      continue;
    }
    CMatrix sub(size, size);
    for (Eigen::Index a = 0; a < size; ++a) {
      for (Eigen::Index b = 0; b < size; ++b) sub(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
    sub = 0.5 * (sub + sub.adjoint());
    Vector values;
    if (sub.imag().cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(sub.real(), Eigen::EigenvaluesOnly);
      values = es.eigenvalues();
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(sub, Eigen::EigenvaluesOnly);
      values = es.eigenvalues();
    }
    eig.insert(eig.end(), values.data(), values.data() + values.size());
  }
  std::sort(eig.begin(), eig.end());
  return Eigen::Map<Vector>(eig.data(), static_cast<Eigen::Index>(eig.size()));
}

double trace_norm(const CMatrix& m) {
  if (is_hermitian(m, 1e-12)) return hermitian_eigenvalues(m).cwiseAbs().sum();
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double trace_norm(const FockOperator& m) { return trace_norm(m.op); }

double von_neumann_entropy(const FockDensity& rho) {
  require_density(rho);
  const Vector ev = hermitian_eigenvalues(rho.rho);
  const double tr = ev.sum();
  double s = 0.0;
  for (double v : ev) {
    const double p = v / tr;
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return std::max(0.0, s);
}

double log_negativity_fock(const FockDensity& rho, const ModePartition& p) {
  const auto pt = partial_transpose_fock(rho, p);
  const double tr = rho.rho.trace().real();
  return std::max(0.0, std::log2(trace_norm(pt) / tr));
}

double mean_energy_fock(const FockDensity& rho, std::span<const double> weights) {
  require_density(rho);
  if (static_cast<int>(weights.size()) != rho.modes) {
    throw StructuralError(fmt::format("{} weights for {} modes", weights.size(), rho.modes));
  }
  const auto dim = fock_dimension(rho.modes, rho.cutoff);
  double e = 0.0;
  for (std::int64_t i = 0; i < dim; ++i) {
    const Tuple t = digits(i, rho.modes, rho.cutoff);
    double w = 0.0;
    for (int k = 0; k < rho.modes; ++k) w += weights[static_cast<std::size_t>(k)] * t[static_cast<std::size_t>(k)];
    e += w * rho.rho(i, i).real();
  }
  return e / rho.rho.trace().real();
}

FockMoments fock_moments(const FockDensity& rho) {
  require_density(rho);
  const int m = rho.modes;
  const int d = rho.cutoff;
  const auto dim = fock_dimension(m, d);
  const Complex tr = rho.rho.trace();
  CVector a1 = CVector::Zero(m);       // <a_i>
  CMatrix aa = CMatrix::Zero(m, m);    // <a_i a_l>
  CMatrix ada = CMatrix::Zero(m, m);   // <a_i^dag a_l>

  std::vector<std::int64_t> stride(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::int64_t s = 1;
    for (int q = k + 1; q < m; ++q) s *= d;
    stride[static_cast<std::size_t>(k)] = s;
  }
  // <A> = sum_y rho(y, x) <x|A|y> with x the image of y.
  for (std::int64_t y = 0; y < dim; ++y) {
    const Tuple t = digits(y, m, d);
    for (int l = 0; l < m; ++l) {
      const int nl = t[static_cast<std::size_t>(l)];
      if (nl == 0) continue;
      const double sl = std::sqrt(static_cast<double>(nl));
      const std::int64_t x1 = y - stride[static_cast<std::size_t>(l)];
      a1(l) += rho.rho(y, x1) * sl;
      for (int i = 0; i < m; ++i) {
        const int ni = t[static_cast<std::size_t>(i)] - (i == l ? 1 : 0);
        if (ni > 0) {
          aa(i, l) += rho.rho(y, x1 - stride[static_cast<std::size_t>(i)]) * sl * std::sqrt(static_cast<double>(ni));
        }
        if (ni + 1 < d) {
          ada(i, l) += rho.rho(y, x1 + stride[static_cast<std::size_t>(i)]) * sl * std::sqrt(ni + 1.0);
        }
      }
    }
  }
  a1 /= tr;
  aa /= tr;
  ada /= tr;

  FockMoments out;
  out.disp.resize(2 * m);
  for (int i = 0; i < m; ++i) {
    out.disp(2 * i) = std::sqrt(2.0) * a1(i).real();
    out.disp(2 * i + 1) = std::sqrt(2.0) * a1(i).imag();
  }
  out.cov.resize(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int l = 0; l < m; ++l) {
      const double delta = i == l ? 1.0 : 0.0;
      const Complex mm = aa(i, l);
      const Complex nn = ada(i, l);
      const double xi = out.disp(2 * i);
      const double pi = out.disp(2 * i + 1);
      const double xl = out.disp(2 * l);
      const double pl = out.disp(2 * l + 1);
      out.cov(2 * i, 2 * l) = 2.0 * mm.real() + 2.0 * nn.real() + delta - 2.0 * xi * xl;
      out.cov(2 * i + 1, 2 * l + 1) = -2.0 * mm.real() + 2.0 * nn.real() + delta - 2.0 * pi * pl;
      out.cov(2 * i, 2 * l + 1) = 2.0 * mm.imag() + 2.0 * nn.imag() - 2.0 * xi * pl;
      out.cov(2 * l + 1, 2 * i) = out.cov(2 * i, 2 * l + 1);
    }
  }
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

ContinuityPoint continuity_demo(std::int64_t k) {
  if (k < 3) {
    throw StructuralError(fmt::format("continuity demo needs k >= 3 (1/ln(k)^2 exceeds 1 below), got {}", k));
  }
  const double kd = static_cast<double>(k);
  const double eps = 1.0 / std::pow(std::log(kd), 2);
  ContinuityPoint p;
  p.k = k;
  p.epsilon = eps;
  p.trace_distance = 2.0 * std::sqrt(eps);
  p.entanglement = -(1.0 - eps) * std::log2(1.0 - eps) - eps * std::log2(eps / kd);
  p.mean_energy = eps * (kd + 1.0) / 2.0;
  return p;
}

FockVector gaussian_to_fock(const GaussianState& state, int cutoff, int padding) {
  const auto setup = gaussian_factors(state);
  for (double v : setup.nu) {
    if (std::abs(v - 1.0) > 1e-6) {
      throw InfeasibleError(fmt::format("state is mixed (symplectic eigenvalue {:.9f})", v));
    }
  }
  const int m = state.modes();
  const int padded = cutoff + std::max(padding, 0);
  FockVector psi = fock_vacuum(m, padded);
  apply_gaussian_tail(
      state, setup.euler, padded, [&](const FockOperator& op, int mode) { psi = apply_local(op, mode, psi); },
      [&](const Eigen::SparseMatrix<Complex>& u) { psi.amplitudes = u * psi.amplitudes; });

  const auto idx = crop_indices(m, padded, cutoff);
  FockVector out{m, cutoff, CVector(static_cast<Eigen::Index>(idx.size())), 0.0};
  for (std::size_t i = 0; i < idx.size(); ++i) out.amplitudes(static_cast<Eigen::Index>(i)) = psi.amplitudes(idx[i]);
  const double kept = out.amplitudes.squaredNorm();
  out.tail_mass = std::max(0.0, 1.0 - kept);
  if (kept <= 0.0) throw InfeasibleError("no weight left below the cutoff");
  out.amplitudes /= std::sqrt(kept);
  return out;
}

FockDensity gaussian_density_fock(const GaussianState& state, int cutoff, int padding) {
  const auto setup = gaussian_factors(state);
  const int m = state.modes();
  const int padded = cutoff + std::max(padding, 0);
  const auto dim = fock_dimension(m, padded);

  // Thermal core prod_k (1 - q_k) q_k^n_k, q = (nu - 1)/(nu + 1).
  Vector diag(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    const Tuple t = digits(i, m, padded);
    double p = 1.0;
    for (int k = 0; k < m; ++k) {
      const double q = (setup.nu(k) - 1.0) / (setup.nu(k) + 1.0);
      p *= (1.0 - q) * std::pow(q, t[static_cast<std::size_t>(k)]);
    }
    diag(i) = p;
  }
  FockDensity rho{m, padded, CMatrix(diag.cast<Complex>().asDiagonal()), 1.0, 0.0};
  const CMatrix ul = unitary_from_passive(setup.euler.l);
  if (!ul.isIdentity(1e-14)) {
    const auto u = passive_fock_sparse(ul, padded, padded - 1);
    rho.rho = u * rho.rho;
    rho.rho = (u * rho.rho.adjoint()).adjoint();
  }
  apply_gaussian_tail(
      state, setup.euler, padded, [&](const FockOperator& op, int mode) { rho = apply_local(op, mode, rho); },
      [&](const Eigen::SparseMatrix<Complex>& u) {
        rho.rho = u * rho.rho;
        rho.rho = (u * rho.rho.adjoint()).adjoint();
      });

  const auto idx = crop_indices(m, padded, cutoff);
  const auto n = static_cast<Eigen::Index>(idx.size());
  FockDensity out{m, cutoff, CMatrix(n, n), 1.0, 0.0};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out.rho(i, j) = rho.rho(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
  }
  const double kept = out.rho.trace().real();
  if (kept <= 0.0) throw InfeasibleError("no weight left below the cutoff");
  out.tail_mass = std::max(0.0, 1.0 - kept);
  out.rho /= kept;
  out.rho = 0.5 * (out.rho + out.rho.adjoint());
  return out;
}

FockDensity measure_mode(const FockDensity& rho, int mode, std::span<const double> povm) {
  require_density(rho);
  require_mode(mode, rho.modes);
  if (rho.modes < 2) throw StructuralError("measuring needs a second mode to keep");
  const int d = rho.cutoff;
  std::int64_t right = 1;
  for (int k = mode + 1; k < rho.modes; ++k) right *= d;
  const auto odim = fock_dimension(rho.modes - 1, d);
  auto full = [&](std::int64_t x, int n) {
    const std::int64_t hi = x / right;
    const std::int64_t lo = x % right;
    return (hi * d + n) * right + lo;
  };
  CMatrix out = CMatrix::Zero(odim, odim);
  for (int n = 0; n < d; ++n) {
    const double w = n < static_cast<int>(povm.size()) ? povm[static_cast<std::size_t>(n)] : 0.0;
    if (w == 0.0) continue;
    for (std::int64_t j = 0; j < odim; ++j) {
      const auto fj = full(j, n);
      for (std::int64_t i = 0; i < odim; ++i) out(i, j) += w * rho.rho(full(i, n), fj);
    }
  }
  const double total = rho.rho.trace().real();
  const double p = out.trace().real();
  if (!(p > 0.0)) throw InfeasibleError("measurement outcome has zero probability");
  return {rho.modes - 1, d, out / p, p / total, rho.tail_mass};
}

FockDensity vacuum_project_fock(const FockDensity& rho, int mode) {
  const std::vector<double> povm = {1.0};
  return measure_mode(rho, mode, povm);
}

double fidelity(const FockDensity& rho, const FockDensity& sigma) {
  require_density(rho);
  require_density(sigma);
  if (rho.modes != sigma.modes || rho.cutoff != sigma.cutoff) throw StructuralError("registers differ");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho.rho + rho.rho.adjoint()));
  // Eigenvalues at round-off level would contribute their square roots.
  const double floor_rho = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const Vector root = es.eigenvalues().unaryExpr([&](double v) { return v > floor_rho ? std::sqrt(v) : 0.0; });
  const CMatrix sq = es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix inner = sq * sigma.rho * sq;
  const Vector ev = hermitian_eigenvalues(0.5 * (inner + inner.adjoint()));
  const double floor_inner = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  double f = 0.0;
  for (double v : ev) {
    if (v > floor_inner) f += std::sqrt(v);
  }
  return f * f;
}

double trace_distance(const FockDensity& rho, const FockDensity& sigma) {
  if (rho.modes != sigma.modes || rho.cutoff != sigma.cutoff) throw StructuralError("registers differ");
  return trace_norm(CMatrix(rho.rho - sigma.rho));
}

}  // namespace gaussent
