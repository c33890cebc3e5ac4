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

// Bipartite entanglement of Gaussian states on the level of covariance
// matrices, plus the pure-state convertibility orders (GLOCC and LOCC).

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaussent/types.hpp"

namespace gaussent {

enum class Party { A, B };

/// Assignment of each mode to party A or B.
class ModePartition {
 public:
  explicit ModePartition(std::vector<Party> parties);

  /// First n_a modes to A, the next n_b to B.
  static ModePartition split(int n_a, int n_b);

  /// Parses "AB", "AAB", "A,B,B" (case-insensitive).
  static ModePartition parse(std::string_view labels);

  int modes() const { return static_cast<int>(parties_.size()); }
  int count(Party p) const;
  Party party(int mode) const { return parties_.at(static_cast<std::size_t>(mode)); }
  std::vector<int> modes_of(Party p) const;
  const std::vector<Party>& parties() const { return parties_; }
  std::string to_string() const;

  /// Permutation P on phase space such that P gamma P^T lists all A modes,
  /// then all B modes, each group in original order.
  Matrix ordering_permutation() const;

  /// F = diag(1, -1) on every B mode, identity elsewhere.
  Matrix time_reversal() const;

 private:
  std::vector<Party> parties_;
};

/// gamma~ = F gamma F: momenta of every B mode reversed.
Matrix partial_transpose_cov(const Matrix& gamma, const ModePartition& p);

enum class PptVerdict { NptEntangled, Ppt };

struct PptReport {
  PptVerdict verdict = PptVerdict::Ppt;
  /// Smallest eigenvalue of gamma~ + i sigma.
  double min_eigenvalue = 0.0;
  /// PPT implies separability when one party holds a single mode.
  bool ppt_implies_separable = false;
};

/// Throws PhysicalError for an invalid covariance matrix.
PptReport ppt_verdict(const Matrix& gamma, const ModePartition& p);

/// Logarithmic negativity sum_k max(0, -log2 nu~_k) from the symplectic
/// eigenvalues of the partially transposed covariance matrix. Exactly zero
/// whenever ppt_verdict reports PPT.
double log_negativity_gaussian(const Matrix& gamma, const ModePartition& p);

/// True iff gamma_a and gamma_b are valid covariance matrices and
/// gamma >= gamma_a (+) gamma_b (embedded along the partition). A true result
/// certifies separability.
bool separability_witness_verify(const Matrix& gamma, const Matrix& gamma_a,
                                 const Matrix& gamma_b, const ModePartition& p);

/// Local symplectics bringing a pure n x n state to a product of two-mode
/// squeezed states. Matrices act on A-then-B ordering:
///     (S_A + S_B) P gamma P^T (S_A + S_B)^T = schmidt_target(r)
/// where P = p.ordering_permutation().
struct SchmidtNormalForm {
  Matrix s_a;
  Matrix s_b;
  Vector r;  // descending
};

/// Rejects mixed input (some symplectic eigenvalue further than 1e-6 from 1)
/// with InfeasibleError and n_A != n_B with StructuralError.
SchmidtNormalForm schmidt_normal_form(const Matrix& gamma, const ModePartition& p);

/// Covariance of (+)_k TMS(r_k) in A-then-B ordering: cosh(2 r_k) on the
/// diagonal, sinh(2 r_k) diag(1, -1) between A_k and B_k.
Matrix schmidt_target(const Vector& r);

struct SimonNormalForm {
  Matrix s_a;
  Matrix s_b;
  double x1 = 0, x2 = 0, x3 = 0, x4 = 0;

  /// [[x1 I, diag(x3, x4)], [diag(x3, x4), x2 I]].
  Matrix matrix() const;
};

/// Two-mode (1 x 1) covariance matrices only; sign fixed by x3 >= |x4|.
SimonNormalForm simon_normal_form(const Matrix& gamma);

/// Entropy of entanglement (bits) of (+)_k TMS(r_k), summing the Shannon
/// entropy of each geometric Schmidt distribution until the tail is below
/// 1e-12.
double entropy_of_entanglement_pure(std::span<const double> r);

/// Schmidt coefficients (1 - q) q^n, q = tanh(r)^2, for n < cutoff.
/// The sum falls short of 1 by the truncated tail q^cutoff.
std::vector<double> two_mode_squeezed_schmidt(double r, int cutoff);

/// r >= r' componentwise after sorting both descending and zero-padding.
bool glocc_convertible(std::span<const double> r, std::span<const double> r_target);

/// Majorization test: alpha is majorized by alpha_target (partial sums of
/// the sorted alpha never exceed those of alpha_target). Inputs must be
/// normalized probability vectors (StructuralError otherwise).
bool locc_convertible_pure(std::span<const double> alpha, std::span<const double> alpha_target);

struct GloccLoccGap {
  bool glocc = false;
  bool locc = false;
  /// Worse of the two truncation tails before renormalization.
  double tail_mass = 0.0;
};

/// Compares TMS(r) (x) TMS(r) -> TMS(r') (x) vacuum under GLOCC and LOCC.
/// Schmidt spectra are truncated at `cutoff` photons per mode and
/// renormalized; a tail above 1e-8 raises InfeasibleError.
GloccLoccGap glocc_vs_locc_gap(double r, double r_target, int cutoff);

/// Scans r' over (r, r_max] in `steps` equal steps and returns the first r'
/// with locc = true and glocc = false.
std::optional<double> find_locc_only_target(double r, double r_max, int steps, int cutoff);

}  // namespace gaussent
