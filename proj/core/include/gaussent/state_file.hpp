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

// Plain-text file formats.
//
// State file ('#' starts a comment, blank lines ignored):
//
//     n 2
//     gamma
//     <2n rows of 2n numbers, row-major>
//     d
//     <2n numbers>            (optional, default zeros)
//     partition A B           (optional, one label per mode)
//
// Channel file:
//
//     n_in 1
//     n_out 1
//     A
//     <2 n_out rows of 2 n_in numbers>
//     G
//     <2 n_out rows of 2 n_out numbers>
//     shift
//     <2 n_out numbers>       (optional, default zeros)
//
// Vector files hold whitespace-separated numbers; matrix files hold one
// matrix row per line. Numbers are written with 17 significant digits so a
// write/read round trip is exact.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaussent/channels.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/symplectic.hpp"
#include "gaussent/types.hpp"

namespace gaussent {

/// Parsed state file before any physical validation.
struct StateFile {
  Matrix gamma;
  Vector d;
  std::optional<ModePartition> partition;

  int modes() const { return static_cast<int>(gamma.rows() / 2); }

  /// Validates via validate_covariance; throws PhysicalError if invalid.
  GaussianState state() const;
};

/// All parsers throw StructuralError with a line number on malformed input.
StateFile parse_state_file(std::string_view text);
StateFile read_state_file(const std::string& path);

std::string format_state_file(const GaussianState& state,
                              const std::optional<ModePartition>& partition = std::nullopt);
void write_state_file(const std::string& path, const GaussianState& state,
                      const std::optional<ModePartition>& partition = std::nullopt);

GaussianChannel parse_channel_file(std::string_view text);
GaussianChannel read_channel_file(const std::string& path);

std::vector<double> parse_vector_file(std::string_view text);
std::vector<double> read_vector_file(const std::string& path);

Matrix parse_matrix_file(std::string_view text);
Matrix read_matrix_file(const std::string& path);

/// x with 17 significant digits; reads back to exactly x.
std::string format_number(double x);

}  // namespace gaussent
