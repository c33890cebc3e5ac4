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

// Gaussian channels gamma -> A gamma A^T + G, conditional Gaussian
// measurements, and CP maps described by a bipartite covariance matrix.
//
// Conditional operations (vacuum projection, homodyne detection) track the
// covariance matrix exactly. Their output displacement is set to zero: the
// conditional mean depends on the measurement outcome and none of the
// entanglement quantities in this library depend on first moments.

#pragma once

#include "gaussent/entanglement.hpp"
#include "gaussent/symplectic.hpp"
#include "gaussent/types.hpp"

namespace gaussent {

struct GaussianChannel {
  Matrix a;      // 2 n_out x 2 n_in
  Matrix g;      // 2 n_out x 2 n_out, symmetric
  Vector shift;  // 2 n_out

  int n_in() const { return static_cast<int>(a.cols() / 2); }
  int n_out() const { return static_cast<int>(a.rows() / 2); }
};

struct ChannelValidity {
  bool valid = false;
  /// Smallest eigenvalue of the Hermitian test matrix.
  double min_eigenvalue = 0.0;
};

/// G + i sigma_out - i A sigma_in A^T >= -tol. Throws StructuralError for
/// inconsistent shapes or asymmetric G.
ChannelValidity channel_valid(const GaussianChannel& ch, double tol = kPsdTolerance);

/// gamma' = A gamma A^T + G, d' = A d + shift. Throws PhysicalError if the
/// channel is not completely positive.
GaussianState apply_channel(const GaussianState& state, const GaussianChannel& ch);

GaussianChannel identity_channel(int modes);

/// Unitary channel A = S, G = 0.
GaussianChannel symplectic_channel(const Matrix& s);

/// Channel obtained by coupling the system to an environment in state
/// env_cov through the joint symplectic s (system modes first) and
/// discarding the environment: A = S_ss, G = S_se env_cov S_se^T.
GaussianChannel dilated_channel(const Matrix& s, const Matrix& env_cov);

/// Pure loss: A = sqrt(eta) 1, G = (1 - eta) 1 on every mode.
GaussianChannel attenuation_channel(double eta, int modes);

/// Block-diagonal combination acting on (modes of a, modes of b).
GaussianChannel direct_sum(const GaussianChannel& a, const GaussianChannel& b);

struct ConditionalState {
  GaussianState state;
  /// Probability of the conditioning outcome.
  double probability = 1.0;
};

/// Projects `mode` onto the vacuum: gamma' = A - C (B + 1)^{-1} C^T on the
/// remaining modes, with success probability
/// 2 / sqrt(det(B + 1)) * exp(-d_B^T (B + 1)^{-1} d_B).
ConditionalState vacuum_project(const GaussianState& state, int mode);

/// Homodyne detection of quadrature q on `mode`:
/// gamma' = A - C (pi B pi)^+ C^T with pi = diag(1, 0) for X and diag(0, 1)
/// for P. The update does not depend on the measurement outcome.
GaussianState homodyne_condition(const GaussianState& state, int mode, Quadrature q);

/// The covariance update of homodyne_condition on a bare matrix, without
/// validity checks on input or output.
Matrix homodyne_schur(const Matrix& cov, int mode, Quadrature q);

/// CP map on n modes represented by a 2n-mode covariance-like matrix
/// gamma_map = [[G1, G12], [G12^T, G2]]. With F reversing the momenta of the
/// second block and tilde denoting F-conjugation, a state maps as
///     gamma -> G1~ - G12~ (G2~ + gamma)^{-1} G12~^T,
///     d     -> D1 + G12~ (G2~ + gamma)^{-1} (d - D2~).
/// The second block is contracted with the input, the first block is the
/// output.
struct GaussianCPMap {
  Matrix gamma;         // 4n x 4n
  Vector displacement;  // 4n

  int modes() const { return static_cast<int>(gamma.rows() / 4); }
};

/// gamma_map + i sigma >= -tol * max(1, max|gamma_map|).
ChannelValidity cp_map_valid(const GaussianCPMap& m, double tol = kPsdTolerance);

/// Evaluates the map in extended precision so that maps with large entries
/// (near-trace-preserving limits) stay accurate. Falls back to a
/// pseudo-inverse when G2~ + gamma is singular.
GaussianState apply_cp_map(const GaussianState& state, const GaussianCPMap& m);

/// Attenuated two-mode squeezed state with cosh(2r) = a:
/// G1 = (eta a + 1 - eta) 1, G2 = a 1, G12 = sqrt(eta (a^2 - 1)) diag(1, -1).
/// The induced map tends to attenuation_channel(eta, 1) as a -> infinity,
/// with error of order eta (|gamma|^2 + 1) / a. a is nudged upward (by at
/// most a few 1e5) so that the stored doubles reproduce G1 - G12 G12^T / a
/// = (1 - eta) 1 to 1e-11.
GaussianCPMap attenuation_cp_map(double eta, double a = 3e10);

/// Gamma = identity: discards the input and prepares the vacuum.
GaussianCPMap vacuum_reprepare_cp_map(int modes);

/// True iff (ch_a (+) ch_b) applied to gamma along partition p reproduces
/// gamma_target within 1e-8 (max-abs). Both channels must preserve their
/// party's mode count.
bool log_channel_verify(const Matrix& gamma, const Matrix& gamma_target,
                        const GaussianChannel& ch_a, const GaussianChannel& ch_b,
                        const ModePartition& p);

}  // namespace gaussent
