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

// Acceptance suite AC-1 .. AC-9. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Optional arguments select criteria by id.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gaussent/channels.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/fock.hpp"
#include "gaussent/protocols.hpp"
#include "gaussent/symplectic.hpp"
#include "test_util.hpp"

namespace gaussent {
namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  double limit_seconds;
  std::function<Outcome()> run;
};

const ModePartition kOneOne = ModePartition::split(1, 1);

Outcome ac1_negativity_oracle() {
  double worst = 0.0;
  double at_half = 0.0;
  for (double r : {0.2, 0.5, 0.8, 1.0}) {
    const double gauss = log_negativity_gaussian(two_mode_squeezed_cov(r), kOneOne);
    const double fock = log_negativity_fock(to_density(two_mode_squeezed_fock(r, 40)), kOneOne);
    worst = std::max(worst, std::abs(gauss - fock));
    if (r == 0.5) at_half = fock;
  }
  const bool ok = worst <= 1e-3 && std::abs(at_half - std::numbers::log2e) <= 1e-3;
  return {ok, fmt::format("max |E_N gauss - fock| = {:.3e}, E_N(0.5) = {:.6f}", worst, at_half)};
}

Outcome ac2_ppt_witness() {
  std::mt19937_64 rng(20260201);
  std::uniform_real_distribution<double> nu(1.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int npt = 0;
  int ppt = 0;
  int contradictions = 0;

  for (int i = 0; i < 500; ++i) {
    Matrix core = Matrix::Zero(4, 4);
    core(0, 0) = core(1, 1) = nu(rng);
    core(2, 2) = core(3, 3) = nu(rng);
    const Matrix s = testing::random_symplectic(rng, 2, 0.6);
    const Matrix g = s * core * s.transpose();
    const auto rep = ppt_verdict(g, kOneOne);
    if (rep.verdict == PptVerdict::Ppt) {
      ++ppt;
      continue;
    }
    ++npt;
    const Matrix a = g.topLeftCorner(2, 2);
    const Matrix b = g.bottomRightCorner(2, 2);
    const double nu_a = std::sqrt(a.determinant());
    const double nu_b = std::sqrt(b.determinant());
    for (int w = 0; w < 200; ++w) {
      Matrix ga;
      Matrix gb;
      if (w % 2 == 0) {
        // Local blocks shrunk towards their uncertainty limit.
        ga = a * std::pow(nu_a, -unit(rng));
        gb = b * std::pow(nu_b, -unit(rng));
      } else {
        ga = testing::random_covariance(rng, 1, 0.5, 0.6);
        gb = testing::random_covariance(rng, 1, 0.5, 0.6);
      }
      if (separability_witness_verify(g, ga, gb, kOneOne)) ++contradictions;
    }
  }

  int constructed_failures = 0;
  for (int i = 0; i < 500; ++i) {
    const Matrix ga = testing::random_covariance(rng, 1, 1.0, 0.6);
    const Matrix gb = testing::random_covariance(rng, 1, 1.0, 0.6);
    const Matrix x = testing::random_symmetric(rng, 4, 0.5);
    const Matrix g = linalg::direct_sum(ga, gb) + x * x.transpose();
    const bool is_ppt = ppt_verdict(g, kOneOne).verdict == PptVerdict::Ppt;
    const bool verified = separability_witness_verify(g, ga, gb, kOneOne);
    if (!is_ppt || !verified) ++constructed_failures;
  }
  contradictions += constructed_failures;
  return {contradictions == 0,
          fmt::format("random states: {} NPT, {} PPT; constructed separable: 500; contradictions = {}", npt, ppt,
                      contradictions)};
}

Outcome ac3_gaussian_nogo() {
  const auto res = no_go_monte_carlo(two_mode_squeezed_cov(0.5), 1000, 2026);
  return {res.max_gain <= 1e-9,
          fmt::format("1000 protocols, max gain = {:.3e}, mean gain = {:.3e}", res.max_gain, res.mean_gain)};
}

Outcome ac4_nongaussian_distillation() {
  const double r = 0.3;
  const double en_in = log_negativity_gaussian(two_mode_squeezed_cov(r), kOneOne);
  for (double v : transmissivity_grid()) {
    const auto trace = distill_pipeline(r, v, 2, 12);
    const auto& recs = trace.records;
    bool monotone = true;
    for (std::size_t i = 1; i < recs.size(); ++i) {
      monotone = monotone && recs[i].gaussianity_distance < recs[i - 1].gaussianity_distance;
    }
    if (monotone && recs.back().log_negativity > en_in) {
      return {true, fmt::format("V = {:.4f}: E_N {:.4f} -> {:.4f} (input {:.4f}), distance {:.4f} -> {:.4f} -> {:.4f}",
                                v, recs.front().log_negativity, recs.back().log_negativity, en_in,
                                recs[0].gaussianity_distance, recs[1].gaussianity_distance,
                                recs[2].gaussianity_distance)};
    }
  }
  return {false, "no grid value of V meets both conditions"};
}

Outcome ac5_glocc_locc_gap() {
  const auto rp = find_locc_only_target(0.5, 1.2, 70, 60);
  if (!rp) return {false, "no r' in (0.5, 1.2] with locc true and glocc false"};
  const auto gap = glocc_vs_locc_gap(0.5, *rp, 60);
  const bool ok = *rp > 0.5 && gap.locc && !gap.glocc && gap.tail_mass <= 1e-8;
  return {ok, fmt::format("r' = {:.4f}: locc = {}, glocc = {}, tail = {:.2e}", *rp, gap.locc, gap.glocc,
                          gap.tail_mass)};
}

Outcome ac6_decompositions() {
  std::mt19937_64 rng(20260206);
  double euler_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix s = testing::random_symplectic(rng, 1 + i % 4, 0.6);
    const auto e = euler_decomposition(s);
    euler_err = std::max(euler_err, testing::max_abs_diff(e.reconstruct(), s));
  }
  double williamson_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix g = testing::random_covariance(rng, 1 + i % 4, 1.0, 0.6);
    const auto w = williamson(g);
    williamson_err = std::max(williamson_err, testing::max_abs_diff(w.s * g * w.s.transpose(), w.diagonal()));
  }
  int mismatches = 0;
  std::uniform_real_distribution<double> nu(0.7, 1.5);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    Matrix core = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) core(2 * k, 2 * k) = core(2 * k + 1, 2 * k + 1) = nu(rng);
    const Matrix s = testing::random_symplectic(rng, n, 0.6);
    const Matrix g = s * core * s.transpose();
    const bool valid = validate_covariance(g).valid;
    if (valid != (williamson(g).nu.minCoeff() >= 1.0 - 1e-9)) ++mismatches;
  }
  const bool ok = euler_err <= 1e-8 && williamson_err <= 1e-8 && mismatches == 0;
  return {ok, fmt::format("Euler residual = {:.2e}, Williamson residual = {:.2e}, validity mismatches = {}", euler_err,
                          williamson_err, mismatches)};
}

Matrix squeezed_pair(double r1, double r2) {
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = std::exp(2 * r1);
  g(1, 1) = std::exp(-2 * r1);
  g(2, 2) = std::exp(2 * r2);
  g(3, 3) = std::exp(-2 * r2);
  return g;
}

Outcome ac7_passive_bound() {
  std::mt19937_64 rng(20260207);
  std::uniform_real_distribution<double> sq(0.1, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Matrix k = testing::random_passive(rng, 2);
    const Matrix g = k * squeezed_pair(sq(rng), sq(rng)) * k.transpose();
    const auto opt = passive_optimizer(g, 8, static_cast<std::uint64_t>(i));
    worst = std::max(worst, std::abs(opt.log_negativity - passive_max_entanglement(g)));
  }
  const double half = passive_optimizer(squeezed_pair(0.5, 0.5), 8, 1).log_negativity;
  const bool ok = worst <= 1e-3 && std::abs(half - 1.4427) <= 1e-3;
  return {ok, fmt::format("max |achieved - bound| = {:.2e}, r = 0.5 achieves {:.6f}", worst, half)};
}

Outcome ac8_continuity() {
  bool distance_decreasing = true;
  double prev = continuity_demo(8).trace_distance;
  for (std::int64_t k = 9; k <= 100000; ++k) {
    const double t = continuity_demo(k).trace_distance;
    distance_decreasing = distance_decreasing && t < prev;
    prev = t;
  }
  bool energy_increasing = true;
  double prev_energy = -1.0;
  std::string entropies;
  for (std::int64_t k = 10; k <= 1000000; k *= 10) {
    const auto p = continuity_demo(k);
    distance_decreasing = distance_decreasing && (k == 10 || p.trace_distance < prev);
    prev = p.trace_distance;
    energy_increasing = energy_increasing && p.mean_energy > prev_energy;
    prev_energy = p.mean_energy;
    entropies += fmt::format(" {:.3f}", p.entanglement);
  }
  return {distance_decreasing && energy_increasing,
          fmt::format("distance decreasing = {}, energy increasing = {}, entanglement over k = 1e1..1e6:{}",
                      distance_decreasing, energy_increasing, entropies)};
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Two-mode squeezed state with mode 1 sent through pure loss, built from the
// loss Kraus operators directly in the number basis.
FockDensity lossy_tms_density(double r, double eta, int cutoff) {
  const double lambda = std::tanh(r);
  std::vector<double> c(static_cast<std::size_t>(cutoff));
  for (int n = 0; n < cutoff; ++n) c[static_cast<std::size_t>(n)] = std::pow(lambda, n) / std::cosh(r);
  const auto idx = [cutoff](int a, int b) { return static_cast<Eigen::Index>(a) * cutoff + b; };
  const auto dim = static_cast<Eigen::Index>(cutoff) * cutoff;
  FockDensity rho{2, cutoff, CMatrix::Zero(dim, dim), 1.0, 0.0};
  for (int n = 0; n < cutoff; ++n) {
    for (int m = 0; m < cutoff; ++m) {
      for (int k = 0; k <= std::min(n, m); ++k) {
        const double amp = c[static_cast<std::size_t>(n)] * c[static_cast<std::size_t>(m)] *
                           std::sqrt(binomial(n, k) * binomial(m, k)) * std::pow(eta, 0.5 * (n + m) - k) *
                           std::pow(1.0 - eta, k);
        rho.rho(idx(n, n - k), idx(m, m - k)) = amp;
      }
    }
  }
  rho.rho /= rho.rho.trace();
  return rho;
}

Outcome ac9_conditional_measurements() {
  double homodyne_err = 0.0;
  for (double r : {0.2, 0.5, 1.0}) {
    const auto out = homodyne_condition(GaussianState(two_mode_squeezed_cov(r)), 1, Quadrature::X);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1.0 / std::cosh(2 * r);
    expected(1, 1) = std::cosh(2 * r);
    homodyne_err = std::max(homodyne_err, testing::max_abs_diff(out.cov(), expected));
  }
  double vacuum_err = 0.0;
  for (double r : {0.2, 0.5, 0.8}) {
    const auto gauss = vacuum_project(GaussianState(two_mode_squeezed_cov(r)), 1);
    const auto fock = vacuum_project_fock(to_density(two_mode_squeezed_fock(r, 40)), 1);
    vacuum_err = std::max(vacuum_err, testing::max_abs_diff(fock_moments(fock).cov, gauss.state.cov()));
  }
  {
    // Mixed input: attenuated two-mode squeezed state.
    const auto att = direct_sum(identity_channel(1), attenuation_channel(0.8, 1));
    const auto mixed = apply_channel(GaussianState(two_mode_squeezed_cov(0.5)), att);
    const auto gauss = vacuum_project(mixed, 1);
    const auto fock = vacuum_project_fock(lossy_tms_density(0.5, 0.8, 40), 1);
    vacuum_err = std::max(vacuum_err, testing::max_abs_diff(fock_moments(fock).cov, gauss.state.cov()));
  }
  const bool ok = homodyne_err <= 1e-10 && vacuum_err <= 1e-3;
  return {ok, fmt::format("homodyne error = {:.2e}, vacuum projection vs Fock = {:.2e}", homodyne_err, vacuum_err)};
}

}  // namespace
}  // namespace gaussent

int main(int argc, char** argv) {
  using namespace gaussent;
  const std::vector<Criterion> criteria = {
      {"AC-1", 30, ac1_negativity_oracle},   {"AC-2", 60, ac2_ppt_witness},
      {"AC-3", 120, ac3_gaussian_nogo},      {"AC-4", 600, ac4_nongaussian_distillation},
      {"AC-5", 30, ac5_glocc_locc_gap},      {"AC-6", 10, ac6_decompositions},
      {"AC-7", 120, ac7_passive_bound},      {"AC-8", 5, ac8_continuity},
      {"AC-9", 20, ac9_conditional_measurements},
  };
  const std::vector<std::string> selected(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::cout << fmt::format("{} {} ({:.2f} s / {:.0f} s{}) {}", c.id, pass ? "PASS" : "FAIL", secs, c.limit_seconds,
                             in_time ? "" : ", over time limit", o.detail)
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
