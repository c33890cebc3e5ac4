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

// Dense truncated Fock-space backend.
//
// A register of m modes with cutoff D holds photon numbers 0..D-1 per mode.
// Basis states |n_0, ..., n_{m-1}> are flattened with mode 0 as the most
// significant digit: index = sum_k n_k D^(m-1-k).

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "gaussent/entanglement.hpp"
#include "gaussent/symplectic.hpp"
#include "gaussent/types.hpp"

namespace gaussent {

/// Tail mass above which a truncated state is flagged.
inline constexpr double kTruncationWarning = 1e-6;

/// D^m; throws StructuralError for non-positive arguments or registers
/// larger than 2^24 basis states.
std::int64_t fock_dimension(int modes, int cutoff);

struct FockVector {
  int modes = 0;
  int cutoff = 0;
  CVector amplitudes;
  /// Probability lost to truncation before renormalization.
  double tail_mass = 0.0;

  bool truncation_warning() const { return tail_mass > kTruncationWarning; }
};

struct FockDensity {
  int modes = 0;
  int cutoff = 0;
  CMatrix rho;
  /// Success probability of the conditioning that produced this state.
  double probability = 1.0;
  double tail_mass = 0.0;
};

struct FockOperator {
  int modes = 0;
  int cutoff = 0;
  CMatrix op;
};

FockVector fock_vacuum(int modes, int cutoff);
FockVector number_state(std::span<const int> photons, int cutoff);

/// sqrt(1 - l^2) sum_n l^n |n, n> with l = tanh(r), truncated at the cutoff
/// and renormalized. tail_mass = l^(2 cutoff).
FockVector two_mode_squeezed_fock(double r, int cutoff);

/// Matrix elements <out|U|in> of the passive unitary with mode matrix u,
/// U a_j^dag U^dag = sum_i u_ij a_i^dag, restricted to one photon-number
/// sector. Rows and columns enumerate the photon tuples with total
/// `photons` in lexicographic order (for two modes: index = n_0).
CMatrix passive_sector(const CMatrix& u, int photons);

/// passive_sector for every total 0..max_total.
std::vector<CMatrix> passive_sectors(const CMatrix& u, int max_total);

/// Passive unitary on the m-mode register (m = u.rows()). Sectors with total
/// photon number up to max_total are included (default: all that fit);
/// sectors with total <= cutoff - 1 are complete and exactly unitary.
Eigen::SparseMatrix<Complex> passive_fock_sparse(const CMatrix& u, int cutoff, int max_total = -1);
FockOperator passive_fock(const CMatrix& u, int cutoff);

/// Beam splitter with mode matrix u = [[T^*, R], [-R^*, T]], i.e.
/// U a_1^dag U^dag = T^* a_1^dag - R^* a_2^dag and
/// U a_2^dag U^dag = R a_1^dag + T a_2^dag, matching
/// beam_splitter_symplectic. Rejects |T|^2 + |R|^2 != 1 with PhysicalError.
FockOperator beam_splitter_fock(Complex t, Complex r, int cutoff);

/// <a, m| U |n, k> for the beam splitter above.
Complex beam_splitter_amplitude(Complex t, Complex r, int a, int m, int n, int k);

/// exp(r (a^dag^2 - a^2) / 2): the Fock image of single_mode_squeezer(r).
/// Built at cutoff + padding and cropped.
FockOperator squeezer_fock(double r, int cutoff, int padding = 40);

/// Weyl operator W_xi = exp(i xi^T sigma O) = D(alpha), alpha = -(xi_1 + i xi_2)/sqrt(2).
FockOperator weyl_fock(const Vector& xi, int cutoff, int padding = 40);

/// Displacement producing first moments d from the vacuum (= W_{-d}).
FockOperator displacement_fock(const Vector& d, int cutoff, int padding = 40);

/// Applies a single-mode operator to `mode` of a register.
FockVector apply_local(const FockOperator& op, int mode, const FockVector& psi);
FockDensity apply_local(const FockOperator& op, int mode, const FockDensity& rho);

/// Full-register operator application.
FockVector apply(const FockOperator& op, const FockVector& psi);
FockDensity apply(const FockOperator& op, const FockDensity& rho);

FockDensity to_density(const FockVector& psi);

/// Reduced state on the listed modes (kept in their original order).
FockDensity partial_trace(const FockDensity& rho, std::span<const int> keep);

/// Transposes the B modes.
FockOperator partial_transpose_fock(const FockDensity& rho, const ModePartition& p);

/// Eigenvalues of a Hermitian matrix, ascending. Exactly decoupled blocks
/// are diagonalized separately.
Vector hermitian_eigenvalues(const CMatrix& m);

/// tr |M|: eigenvalue moduli for Hermitian input, singular values otherwise.
double trace_norm(const CMatrix& m);
double trace_norm(const FockOperator& m);

/// -tr rho log2 rho. Throws PhysicalError for non-Hermitian input.
double von_neumann_entropy(const FockDensity& rho);

/// log2 ||rho^{T_B}||_1 (rho normalized by its trace first).
double log_negativity_fock(const FockDensity& rho, const ModePartition& p);

/// sum_k w_k <n_k>.
double mean_energy_fock(const FockDensity& rho, std::span<const double> weights);

struct FockMoments {
  Vector disp;
  Matrix cov;
};

/// First and second moments in the phase-space conventions of the library,
/// computed exactly for the truncated density.
FockMoments fock_moments(const FockDensity& rho);

/// Sequence psi_k = sqrt(1 - e) |00> + sqrt(e / k) sum_{n=1..k} |nn>,
/// e = 1 / ln(k)^2, compared with psi_0 = |00>. Requires k >= 3 (e > 1 at
/// k = 2).
struct ContinuityPoint {
  std::int64_t k = 0;
  double epsilon = 0.0;
  double trace_distance = 0.0;  // ||psi_k - psi_0||_1 = 2 sqrt(e)
  double entanglement = 0.0;    // entropy of the Schmidt vector, bits
  double mean_energy = 0.0;     // e (k + 1) / 2 photons per mode
};
ContinuityPoint continuity_demo(std::int64_t k);

/// Pure Gaussian state in Fock space: displacement, passive and squeezing
/// factors of its Euler decomposition applied to the vacuum at
/// cutoff + padding, then cropped and renormalized. Mixed input raises
/// InfeasibleError.
FockVector gaussian_to_fock(const GaussianState& state, int cutoff, int padding = 30);

/// Gaussian density matrix (mixed allowed): thermal core from the Williamson
/// form, then the Euler factors of the symplectic and the displacement.
FockDensity gaussian_density_fock(const GaussianState& state, int cutoff, int padding = 20);

/// Measures `mode` with the diagonal POVM element sum_n povm[n] |n><n| and
/// discards it. The returned state is renormalized; probability holds the
/// outcome probability relative to tr(rho).
FockDensity measure_mode(const FockDensity& rho, int mode, std::span<const double> povm);

/// measure_mode with the vacuum projector.
FockDensity vacuum_project_fock(const FockDensity& rho, int mode);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const FockDensity& rho, const FockDensity& sigma);

/// ||rho - sigma||_1.
double trace_distance(const FockDensity& rho, const FockDensity& sigma);

}  // namespace gaussent
