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

#include "gaussent/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

#include <fmt/format.h>

#include "gaussent/channels.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/linalg.hpp"

namespace gaussent {

namespace {

void require_local_symplectic(const Matrix& s, Eigen::Index dim, const char* what) {
  if (s.rows() != dim || s.cols() != dim) {
    throw StructuralError(fmt::format("{} must be {}x{}, got {}x{}", what, dim, dim, s.rows(), s.cols()));
  }
  const Matrix sigma = symplectic_form(static_cast<int>(dim / 2));
  const double scale = std::max(1.0, linalg::max_abs(s) * linalg::max_abs(s));
  if (linalg::max_abs(s * sigma * s.transpose() - sigma) > kGroupTolerance * scale) {
    throw PhysicalError(fmt::format("{} is not symplectic", what));
  }
}

Matrix random_symmetric(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) g(i, j) = g(j, i) = u(rng);
  }
  return g;
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double two_mode_log_negativity(const Matrix& gamma) {
  return log_negativity_gaussian(gamma, ModePartition::split(1, 1));
}

// Smooth stand-in for the logarithmic negativity of a two-mode reduction:
// -log2 of the smallest partially transposed symplectic eigenvalue, which
// equals E_N whenever E_N > 0 and keeps a slope where E_N is flat.
double negativity_surrogate(const Matrix& gamma4) {
  Matrix pt = gamma4;
  pt.row(3) *= -1.0;
  pt.col(3) *= -1.0;
  return -std::log2(symplectic_eigenvalues(pt).minCoeff());
}

struct PairScore {
  double value = -std::numeric_limits<double>::infinity();
  int a = 0;
  int b = 1;
};

PairScore best_pair_surrogate(const Matrix& gamma) {
  const int n = static_cast<int>(gamma.rows() / 2);
  PairScore best;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::vector<int> modes = {i, j};
      const auto idx = linalg::quadrature_indices(modes);
      const double v = negativity_surrogate(linalg::submatrix(gamma, idx, idx));
      if (v > best.value) best = {v, i, j};
    }
  }
  return best;
}

Matrix passive_from_parameters(const Vector& x, int n) {
  CMatrix h = CMatrix::Zero(n, n);
  int p = 0;
  for (int i = 0; i < n; ++i) h(i, i) = x(p++);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = Complex(x(p), x(p + 1));
      h(j, i) = std::conj(h(i, j));
      p += 2;
    }
  }
  const CMatrix u = linalg::expm(CMatrix(Complex(0.0, 1.0) * h));
  return passive_from_unitary(u);
}

// Minimizes f from x0 with a Nelder-Mead simplex of initial edge `step`.
template <typename F>
Vector nelder_mead(F&& f, const Vector& x0, double step, int max_evals) {
  const Eigen::Index dim = x0.size();
  std::vector<Vector> pts(static_cast<std::size_t>(dim + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(dim + 1));
  for (Eigen::Index i = 0; i < dim; ++i) pts[static_cast<std::size_t>(i + 1)](i) += step;
  int evals = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = f(pts[i]);
    ++evals;
  }
  std::vector<std::size_t> order(pts.size());
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (std::abs(vals[worst] - vals[best]) < 1e-13) break;

    Vector centroid = Vector::Zero(dim);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += pts[order[i]];
    centroid /= static_cast<double>(dim);

    const Vector reflected = centroid + (centroid - pts[worst]);
    const double fr = f(reflected);
    ++evals;
    if (fr < vals[best]) {
      const Vector expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector contracted = outside ? Vector(centroid + 0.5 * (reflected - centroid))
                                      : Vector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(contracted);
    ++evals;
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
      ++evals;
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return pts[static_cast<std::size_t>(it - vals.begin())];
}

}  // namespace

// ---------------------------------------------------------------------------
// Gaussian protocols

Matrix two_copy_covariance(const Matrix& gamma_in) {
  if (gamma_in.rows() != 4 || gamma_in.cols() != 4) {
    throw StructuralError(fmt::format("expected a two-mode covariance matrix, got {}x{}", gamma_in.rows(),
                                      gamma_in.cols()));
  }
  // copy c occupies A_c = mode c and B_c = mode 2 + c.
  Matrix out = Matrix::Zero(8, 8);
  for (int c = 0; c < 2; ++c) {
    const int modes[2] = {c, 2 + c};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        out.block(2 * modes[x], 2 * modes[y], 2, 2) = gamma_in.block(2 * x, 2 * y, 2, 2);
      }
    }
  }
  return out;
}

Matrix gaussian_locc_step(const Matrix& gamma_in, const GaussianLoccProtocol& proto) {
  const GaussianState in(gamma_in);
  if (in.modes() != 2) throw StructuralError("protocol input must be a two-mode state");
  require_local_symplectic(proto.s_a, 4, "local symplectic on A");
  require_local_symplectic(proto.s_b, 4, "local symplectic on B");
  require_local_symplectic(proto.post_a, 2, "post-processing on A");
  require_local_symplectic(proto.post_b, 2, "post-processing on B");

  const Matrix s = linalg::direct_sum(proto.s_a, proto.s_b);
  Matrix g = s * two_copy_covariance(gamma_in) * s.transpose();
  g = homodyne_schur(g, 3, proto.quadrature_b);  // B2; leaves (A1, A2, B1)
  g = homodyne_schur(g, 1, proto.quadrature_a);  // A2; leaves (A1, B1)
  const Matrix post = linalg::direct_sum(proto.post_a, proto.post_b);
  g = post * g * post.transpose();
  return 0.5 * (g + g.transpose());
}

GaussianLoccProtocol random_protocol(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution coin(0.5);
  GaussianLoccProtocol p;
  const Matrix pre_a = linalg::direct_sum(Matrix::Identity(2, 2), rotation(angle(rng)));
  p.s_a = pre_a * symplectic_from_hamiltonian(random_symmetric(rng, 4));
  const Matrix pre_b = linalg::direct_sum(Matrix::Identity(2, 2), rotation(angle(rng)));
  p.s_b = pre_b * symplectic_from_hamiltonian(random_symmetric(rng, 4));
  p.quadrature_a = coin(rng) ? Quadrature::X : Quadrature::P;
  p.quadrature_b = coin(rng) ? Quadrature::X : Quadrature::P;
  p.post_a = symplectic_from_hamiltonian(random_symmetric(rng, 2));
  p.post_b = symplectic_from_hamiltonian(random_symmetric(rng, 2));
  return p;
}

NoGoResult no_go_monte_carlo(const Matrix& gamma_in, int trials, std::uint64_t seed) {
  if (trials < 1) throw StructuralError("need at least one trial");
  const double e_in = two_mode_log_negativity(gamma_in);
  NoGoResult out;
  out.max_gain = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_engine(seed, static_cast<std::uint64_t>(t));
    const auto proto = random_protocol(rng);
    const double gain = two_mode_log_negativity(gaussian_locc_step(gamma_in, proto)) - e_in;
    sum += gain;
    if (gain > out.max_gain) {
      out.max_gain = gain;
      out.argmax_trial = t;
      out.argmax = proto;
    }
  }
  out.mean_gain = sum / trials;
  return out;
}

// ---------------------------------------------------------------------------
// Non-Gaussian distillation

FockDensity nongaussian_first_step(double r, double v, int cutoff, double efficiency) {
  if (!(r > 0.0) || !std::isfinite(r)) throw StructuralError(fmt::format("squeezing r = {} must be > 0", r));
  if (!(v > 0.0 && v < 1.0)) throw StructuralError(fmt::format("transmissivity {} must lie in (0, 1)", v));
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw StructuralError(fmt::format("detector efficiency {} must lie in (0, 1]", efficiency));
  }
  const auto tms = two_mode_squeezed_fock(r, cutoff);
  if (tms.tail_mass > kTruncationWarning) {
    throw InfeasibleError(fmt::format("cutoff {} leaves tail mass {:.3e} for r = {}", cutoff, tms.tail_mass, r));
  }
  const int d = cutoff;
  Vector c(d);
  for (int n = 0; n < d; ++n) c(n) = tms.amplitudes(static_cast<Eigen::Index>(n) * d + n).real();

  const int n_max = 2 * (d - 1);
  const double refl = std::sqrt(1.0 - v * v);
  const auto sectors_a = passive_sectors(beam_splitter_unitary(v, refl), n_max);
  const auto sectors_b = passive_sectors(beam_splitter_unitary(v, -refl), n_max);
  auto click = [&](int m) { return m == 0 ? 0.0 : 1.0 - std::pow(1.0 - efficiency, m); };

  // psi[N](a, b): amplitude of |a, N - a>_A |b, N - b>_B after both splitters.
  std::vector<CMatrix> psi(static_cast<std::size_t>(n_max + 1));
  double p_success = 0.0;
  for (int total = 0; total <= n_max; ++total) {
    const auto idx = static_cast<std::size_t>(total);
    CVector coeff = CVector::Zero(total + 1);
    for (int n = std::max(0, total - d + 1); n <= std::min(total, d - 1); ++n) coeff(n) = c(n) * c(total - n);
    CMatrix& p = psi[static_cast<std::size_t>(total)];
    p = sectors_a[idx] * coeff.asDiagonal() * sectors_b[idx].transpose();
    for (int a = 0; a <= total; ++a) {
      for (int b = 0; b <= total; ++b) p_success += std::norm(p(a, b)) * click(total - a) * click(total - b);
    }
  }
  if (!(p_success > 0.0)) throw InfeasibleError("click outcome has zero probability");

  const auto dim = fock_dimension(2, d);
  CMatrix rho = CMatrix::Zero(dim, dim);
  CVector x(d);
  for (int ma = 1; ma <= n_max; ++ma) {
    for (int mb = 1; mb <= n_max; ++mb) {
      const double weight = click(ma) * click(mb);
      x.setZero();
      std::vector<Eigen::Index> rows;
      for (int a = 0; a < d; ++a) {
        const int total = a + ma;
        const int b = total - mb;
        if (total > n_max || b < 0 || b >= d) continue;
        x(a) = psi[static_cast<std::size_t>(total)](a, b);
        rows.push_back(static_cast<Eigen::Index>(a) * d + b);
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Complex xi = x(rows[i] / d);
        for (std::size_t j = 0; j < rows.size(); ++j) {
          rho(rows[i], rows[j]) += weight * xi * std::conj(x(rows[j] / d));
        }
      }
    }
  }
  const double kept = rho.trace().real();
  FockDensity out{2, d, rho / kept, p_success, std::max(0.0, 1.0 - kept / p_success)};
  return out;
}

FockDensity gaussify_step(const FockDensity& rho_in) {
  if (rho_in.modes != 2) throw StructuralError("the Gaussifier acts on two-mode states");
  const int d = rho_in.cutoff;
  const auto dim = fock_dimension(2, d);
  if (rho_in.rho.rows() != dim || rho_in.rho.cols() != dim) throw StructuralError("density matrix shape mismatch");
  const double tr = rho_in.rho.trace().real();
  if (!(tr > 0.0)) throw PhysicalError("density matrix has non-positive trace");
  const CMatrix rho = rho_in.rho / tr;

  const int n_max = 2 * (d - 1);
  const double h = 1.0 / std::sqrt(2.0);
  const auto sectors = passive_sectors(beam_splitter_unitary(h, h), n_max);
  // <n + k, 0| U |n, k>
  auto w = [&](int n, int k) { return sectors[static_cast<std::size_t>(n + k)](n + k, n); };

  struct Term {
    Eigen::Index first;   // (n, m) in copy one
    Eigen::Index second;  // (a - n, b - m) in copy two
    Complex coef;
  };
  const int side = n_max + 1;
  std::vector<std::vector<Term>> terms(static_cast<std::size_t>(side * side));
  for (int a = 0; a <= n_max; ++a) {
    for (int b = 0; b <= n_max; ++b) {
      auto& list = terms[static_cast<std::size_t>(a * side + b)];
      for (int n = std::max(0, a - d + 1); n <= std::min(a, d - 1); ++n) {
        for (int m = std::max(0, b - d + 1); m <= std::min(b, d - 1); ++m) {
          list.push_back({static_cast<Eigen::Index>(n) * d + m,
                          static_cast<Eigen::Index>(a - n) * d + (b - m), w(n, a - n) * w(m, b - m)});
        }
      }
    }
  }
  auto element = [&](int a, int b, int a2, int b2) {
    Complex sum = 0.0;
    for (const auto& s : terms[static_cast<std::size_t>(a * side + b)]) {
      for (const auto& t : terms[static_cast<std::size_t>(a2 * side + b2)]) {
        sum += s.coef * std::conj(t.coef) * rho(s.first, t.first) * rho(s.second, t.second);
      }
    }
    return sum;
  };

  double p_success = 0.0;
  for (int a = 0; a <= n_max; ++a) {
    for (int b = 0; b <= n_max; ++b) p_success += element(a, b, a, b).real();
  }
  if (!(p_success > 0.0)) throw InfeasibleError("vacuum outcome has zero probability");

  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      const Complex e = element(static_cast<int>(i / d), static_cast<int>(i % d), static_cast<int>(j / d),
                                static_cast<int>(j % d));
      out(i, j) = e;
      out(j, i) = std::conj(e);
    }
  }
  const double kept = out.trace().real();
  return {2, d, out / kept, p_success, std::max(0.0, 1.0 - kept / p_success)};
}

double gaussianity_distance(const FockDensity& rho) {
  const auto m = fock_moments(rho);
  const GaussianState g(m.cov, m.disp);
  const FockDensity reference = gaussian_density_fock(g, rho.cutoff);
  FockDensity normalized = rho;
  normalized.rho /= rho.rho.trace().real();
  return trace_distance(normalized, reference);
}

DistillationTrace distill_pipeline(double r, double v, int iterations, int cutoff) {
  if (iterations < 0) throw StructuralError("iterations must be non-negative");
  DistillationTrace trace;
  trace.initial_log_negativity = two_mode_log_negativity(two_mode_squeezed_cov(r));
  const auto p = ModePartition::split(1, 1);
  FockDensity rho = nongaussian_first_step(r, v, cutoff);
  double cumulative = 1.0;
  for (int it = 0; it <= iterations; ++it) {
    if (it > 0) rho = gaussify_step(rho);
    cumulative *= rho.probability;
    DistillationRecord rec;
    rec.iteration = it;
    rec.log_negativity = log_negativity_fock(rho, p);
    rec.probability = rho.probability;
    rec.cumulative_probability = cumulative;
    rec.gaussianity_distance = gaussianity_distance(rho);
    rec.tail_mass = rho.tail_mass;
    trace.records.push_back(rec);
  }
  return trace;
}

std::vector<double> transmissivity_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(std::sqrt(0.05 * i));
  return grid;
}

TunedPipeline tune_transmissivity(double r, int iterations, int cutoff) {
  TunedPipeline best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (double v : transmissivity_grid()) {
    auto trace = distill_pipeline(r, v, iterations, cutoff);
    const double value = trace.records.back().log_negativity;
    if (value > best_value) {
      best_value = value;
      best = {v, std::move(trace)};
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Passive entangling transformations

double passive_max_entanglement(const Matrix& gamma) {
  const auto report = validate_covariance(gamma);
  if (!report.valid) {
    throw PhysicalError(fmt::format("invalid covariance matrix (min eigenvalue of gamma + i sigma = {:.6f})",
                                    report.min_uncertainty_eigenvalue));
  }
  if (gamma.rows() < 4) throw StructuralError("passive entangling needs at least two modes");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gamma + gamma.transpose()), Eigen::EigenvaluesOnly);
  const double l1 = es.eigenvalues()(0);
  const double l2 = es.eigenvalues()(1);
  return std::max(0.0, -std::log2(l1 * l2) / 2.0);
}

PassiveOptimum best_mode_pair(const Matrix& gamma, const Matrix& k) {
  const Matrix out = k * gamma * k.transpose();
  const auto best = best_pair_surrogate(0.5 * (out + out.transpose()));
  return {k, std::max(0.0, best.value), best.a, best.b};
}

PassiveOptimum passive_optimizer(const Matrix& gamma, int restarts, std::uint64_t seed) {
  const auto report = validate_covariance(gamma);
  if (!report.valid) throw PhysicalError("invalid covariance matrix");
  const int n = static_cast<int>(gamma.rows() / 2);
  if (n < 2) throw StructuralError("passive optimizer needs at least two modes");
  if (restarts < 1) throw StructuralError("need at least one restart");

  auto objective = [&](const Vector& x) {
    const Matrix k = passive_from_parameters(x, n);
    const Matrix out = k * gamma * k.transpose();
    return -best_pair_surrogate(0.5 * (out + out.transpose())).value;
  };
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * n;
  PassiveOptimum best = best_mode_pair(gamma, Matrix::Identity(2 * n, 2 * n));
  double best_value = objective(Vector::Zero(dim));
  for (int r = 0; r < restarts; ++r) {
    auto rng = trial_engine(seed, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    Vector x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = u(rng);
    for (double step : {0.5, 0.1, 0.01}) x = nelder_mead(objective, x, step, 400 * static_cast<int>(dim));
    const double value = objective(x);
    if (value < best_value) {
      best_value = value;
      best = best_mode_pair(gamma, passive_from_parameters(x, n));
    }
  }
  return best;
}

}  // namespace gaussent
