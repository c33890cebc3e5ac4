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

// Entanglement distillation and generation procedures built from the
// phase-space and Fock-space layers.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gaussent/fock.hpp"
#include "gaussent/symplectic.hpp"
#include "gaussent/types.hpp"

namespace gaussent {

/// Two copies of a two-mode state, modes ordered (A1, A2, B1, B2) with copy
/// one on (A1, B1). Each side applies a local two-mode symplectic, measures
/// its second mode by homodyne detection, and post-processes the first mode.
struct GaussianLoccProtocol {
  Matrix s_a = Matrix::Identity(4, 4);  // on (A1, A2)
  Matrix s_b = Matrix::Identity(4, 4);  // on (B1, B2)
  Quadrature quadrature_a = Quadrature::X;
  Quadrature quadrature_b = Quadrature::X;
  Matrix post_a = Matrix::Identity(2, 2);
  Matrix post_b = Matrix::Identity(2, 2);
};

/// Four-mode covariance of two copies in (A1, A2, B1, B2) order.
Matrix two_copy_covariance(const Matrix& gamma_in);

/// Returns the (A1, B1) covariance after the protocol. Throws StructuralError
/// for wrong shapes and PhysicalError for non-symplectic factors or an
/// invalid input.
Matrix gaussian_locc_step(const Matrix& gamma_in, const GaussianLoccProtocol& proto);

/// Local symplectics exp(2 sigma g) with g symmetric and entries uniform in
/// [-1, 1], a uniformly random phase rotation in front of each measurement
/// and a uniformly random measured quadrature.
GaussianLoccProtocol random_protocol(std::mt19937_64& rng);

struct NoGoResult {
  double max_gain = 0.0;
  double mean_gain = 0.0;
  int argmax_trial = -1;
  GaussianLoccProtocol argmax;
};

/// Runs `trials` random protocols; trial i draws from an engine seeded with
/// (seed, i), so results do not depend on evaluation order.
NoGoResult no_go_monte_carlo(const Matrix& gamma_in, int trials, std::uint64_t seed);

/// Two copies of the two-mode squeezed state (cutoff per mode), a beam
/// splitter with amplitude transmissivity v on each side, and the click
/// outcome 1 - |0><0| on each side's second output mode, which is then
/// discarded. A uses reflectivity sqrt(1 - v^2) and B its mirror image
/// -sqrt(1 - v^2); identically oriented splitters leave the pair of two-mode
/// squeezed states invariant. A detector efficiency below one
/// weights n photons by 1 - (1 - efficiency)^n. The result keeps photon
/// numbers below `cutoff`, is renormalized, and carries the success
/// probability; tail_mass is the weight lost to the output cutoff.
FockDensity nongaussian_first_step(double r, double v, int cutoff, double efficiency = 1.0);

/// One iteration of the Gaussifier: two copies of rho, 50:50 beam splitters
/// pairing the copies on each side, vacuum outcome on each side's second
/// mode.
FockDensity gaussify_step(const FockDensity& rho);

/// ||rho - rho_G||_1 with rho_G the Gaussian state with the same first and
/// second moments, built at the same cutoff.
double gaussianity_distance(const FockDensity& rho);

struct DistillationRecord {
  int iteration = 0;  // 0 = after the non-Gaussian step
  double log_negativity = 0.0;
  double probability = 1.0;             // success probability of this step
  double cumulative_probability = 1.0;  // product over steps so far
  double gaussianity_distance = 0.0;
  double tail_mass = 0.0;
};

struct DistillationTrace {
  /// Logarithmic negativity of the untruncated input two-mode squeezed state.
  double initial_log_negativity = 0.0;
  std::vector<DistillationRecord> records;
};

DistillationTrace distill_pipeline(double r, double v, int iterations, int cutoff);

/// Grid values of v: sqrt of 0.05, 0.10, ..., 0.95.
std::vector<double> transmissivity_grid();

struct TunedPipeline {
  double v = 0.0;
  DistillationTrace trace;
};

/// Runs distill_pipeline over transmissivity_grid() and keeps the run with
/// the largest final logarithmic negativity.
TunedPipeline tune_transmissivity(double r, int iterations, int cutoff);

/// Largest logarithmic negativity of a two-mode reduction reachable by a
/// passive transformation: max(0, -log2(l1 l2) / 2) with l1, l2 the two
/// smallest eigenvalues of gamma.
double passive_max_entanglement(const Matrix& gamma);

struct PassiveOptimum {
  Matrix k;  // passive symplectic
  double log_negativity = 0.0;
  int mode_a = 0;
  int mode_b = 1;
};

/// Logarithmic negativity of the best two-mode reduction of K gamma K^T.
PassiveOptimum best_mode_pair(const Matrix& gamma, const Matrix& k);

/// Nelder-Mead over u = exp(i H) (H Hermitian, n^2 real parameters) with
/// random restarts. Throws StructuralError for fewer than two modes.
PassiveOptimum passive_optimizer(const Matrix& gamma, int restarts, std::uint64_t seed);

}  // namespace gaussent
