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
//
// End-to-end n-ary solving (encode, solve the binary network, decode) plus
// the exhaustive oracles and the random network generator used to test it.

#ifndef HVSOLVE_PIPELINE_HPP_
#define HVSOLVE_PIPELINE_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hvsolve/binary_solver.hpp"
#include "hvsolve/core.hpp"
#include "hvsolve/hve.hpp"

namespace hvsolve {

class IllFormedNetwork : public std::runtime_error {
 public:
  explicit IllFormedNetwork(WellFormedReport report);
  const WellFormedReport& report() const { return report_; }

 private:
  WellFormedReport report_;
};

struct NResult {
  Status status = Status::kUnknown;
  AssignmentN assignment;  // total over the network's variables when kSat
  SolveStats stats;
  std::size_t hidden_vars = 0;
};

// Throws IllFormedNetwork when check_network_inv_n fails. A kSat answer is
// re-checked with is_solution_n; any internal inconsistency raises
// ContractError.
NResult solve_n(const NetworkN& net, const InterpRegistry& reg,
                const SolveLimits& limits = {});

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

// Every solution, by plain enumeration of all total assignments (declared
// variable order, first variable slowest). Refuses when the product of the
// domain sizes exceeds `cap`.
std::vector<AssignmentN> brute_force_solutions(
    const NetworkN& net, const InterpRegistry& reg,
    std::uint64_t cap = kDefaultOracleCap);

// Every solution of a binary network in the same order. The enumeration
// prunes a partial assignment as soon as a constraint between two assigned
// variables fails (no propagation), and refuses once more than `cap`
// partial assignments have been visited.
std::vector<AssignmentBin> brute_force_solutions_bin(
    const NetworkBin& net, const InterpRegistry& reg,
    std::uint64_t cap = kDefaultOracleCap);

struct SizeRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct GenConfig {
  SizeRange vars{2, 6};
  SizeRange domain_size{1, 4};
  SizeRange constraints{1, 5};
  SizeRange arity{2, 4};
  // Domain values are drawn from [0, max(value_span, size)).
  std::size_t value_span = 6;
  double extensional_fraction = 0.3;
  // Probability of turning the last linear constraint into an equality at
  // an extreme of its range, which is satisfied by very few tuples.
  double tight_fraction = 0.25;
  std::uint64_t seed = 0;
};

struct GeneratedNetwork {
  NetworkN net;
  InterpRegistry reg;
};

// Well formed by construction and deterministic in cfg. Variables that end
// up in no constraint are dropped. Throws std::invalid_argument on an empty
// range.
GeneratedNetwork gen_random_network(const GenConfig& cfg);

}  // namespace hvsolve

#endif  // HVSOLVE_PIPELINE_HPP_
