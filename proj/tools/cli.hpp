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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gaussent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitStructural = 1;
inline constexpr int kExitPhysical = 2;
inline constexpr int kExitInfeasible = 3;

/// Environment variable holding the default seed of seeded subcommands.
inline constexpr const char* kSeedEnv = "GAUSSENT_SEED";

/// Runs the command line `args` (args[0] is the program name). Tables go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussent::cli
