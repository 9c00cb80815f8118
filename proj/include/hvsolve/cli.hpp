// Copyright 2026 The hvsolve Authors
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

#ifndef HVSOLVE_CLI_HPP_
#define HVSOLVE_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hvsolve/pipeline.hpp"

namespace hvsolve {

enum class Subcommand { kSolve, kTranslate, kCheck, kOracle, kGen };
enum class InputFormat { kAuto, kXcsp, kNative };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalFault = 2;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

struct CliConfig {
  Subcommand subcommand = Subcommand::kSolve;
  std::string input = "-";  // "-" reads the input stream
  InputFormat format = InputFormat::kAuto;
  bool stats = false;
  bool verify = false;
  std::uint64_t oracle_cap = kDefaultOracleCap;
  std::optional<std::uint64_t> max_steps;
  GenConfig gen;
  // Testing hook: alters the decoded solution before it is printed.
  bool debug_corrupt_solution = false;
};

// .xml selects XCSP, anything else the native format.
InputFormat detect_format(const std::string& path, InputFormat requested);

int run(const CliConfig& cfg, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace hvsolve

#endif  // HVSOLVE_CLI_HPP_
