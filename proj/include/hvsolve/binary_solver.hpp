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
// Generic binary CSP solver: AC3 propagation and a backtracking search that
// re-establishes arc consistency after every decision. The solver only
// relies on vars_of and interp_binary, so it does not care whether a
// constraint is an original binary constraint or a projection.

#ifndef HVSOLVE_BINARY_SOLVER_HPP_
#define HVSOLVE_BINARY_SOLVER_HPP_

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hvsolve/core.hpp"
#include "hvsolve/hve.hpp"

namespace hvsolve {

// Faults on a shape mismatch: a Proj expects a tuple of its arity for `vx`
// and a raw value for `vy`; a Basic expects two raw values.
bool interp_binary(const EncConstraint& c, const EncValue& vx,
                   const EncValue& vy, const InterpRegistry& reg);

std::pair<EncVariable, EncVariable> vars_of(const EncConstraint& c);

enum class BClause {
  kVariables,          // domain keys = declared vars = constraint vars
  kNormalization,      // no two constraints over the same pair
  kDistinctVariables,  // the two variables of a constraint differ
};

using BinWellFormedReport = Report<BClause>;

const char* clause_name(BClause c);

BinWellFormedReport check_network_inv(const NetworkBin& net,
                                      const InterpRegistry& reg);

// Total over net.vars, every value in its initial domain, every constraint
// true.
bool is_solution(const AssignmentBin& a, const NetworkBin& net,
                 const InterpRegistry& reg);

enum class Side : std::uint8_t { kFirst, kSecond };

// Revise `side`'s variable of constraint `constraint` against the other one.
struct Arc {
  std::size_t constraint = 0;
  Side side = Side::kFirst;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t revisions = 0;
  std::uint64_t arcs_processed = 0;
  std::uint64_t values_removed = 0;
  double seconds = 0.0;
};

struct ReviseResult {
  bool changed = false;
  bool emptied = false;
};

// Working domains and AC3 worklist over a fixed binary network. Working
// domains are index lists into the initial domains and keep their order.
// Copying a state snapshots the domains; the compiled network and the
// statistics counters are shared between copies.
class SolverState {
 public:
  // Faults when a constraint variable is undeclared or a domain value has the
  // wrong shape for the constraints it takes part in. The worklist starts
  // with every arc in constraint order, first side before second side.
  SolverState(const NetworkBin& net, const InterpRegistry& reg);

  const NetworkBin& network() const;
  std::size_t var_count() const;
  std::size_t var_index(const EncVariable& v) const;

  std::vector<EncValue> domain(const EncVariable& v) const;
  std::vector<EncValue> domain(std::size_t var) const;
  std::size_t domain_size(std::size_t var) const {
    return current_[var].size();
  }

  // Keeps only the values of `keep` (order of the current domain is kept).
  void restrict_domain(const EncVariable& v,
                       const std::vector<EncValue>& keep);
  // Reduces `var` to its `pos`-th current value.
  void assign(std::size_t var, std::size_t pos);

  std::deque<Arc>& worklist() { return worklist_; }
  const std::deque<Arc>& worklist() const { return worklist_; }
  void enqueue(Arc arc);
  void enqueue_all();
  // Every arc revising a neighbour of `var` against it.
  void enqueue_neighbours(std::size_t var);
  void clear_worklist();

  // The variable an arc revises, and the one it revises against.
  std::size_t revised_var(Arc arc) const;
  std::size_t support_var(Arc arc) const;
  std::size_t constraint_count() const;

  SolveStats& stats() { return *stats_; }
  const SolveStats& stats() const { return *stats_; }

  AssignmentBin assignment() const;  // requires singleton domains

 private:
  friend ReviseResult revise(SolverState& state, Arc arc);
  friend bool propagate_ac3(SolverState& state);

  struct Compiled;
  bool check(std::size_t c, std::uint32_t first, std::uint32_t second) const;

  std::shared_ptr<const Compiled> net_;
  std::vector<std::vector<std::uint32_t>> current_;
  std::deque<Arc> worklist_;
  std::vector<char> queued_;
  std::shared_ptr<SolveStats> stats_;
};

ReviseResult revise(SolverState& state, Arc arc);

// Runs AC3 until the worklist drains (true) or a domain empties (false).
// When a revision changes a variable, every arc revising one of its other
// neighbours is re-queued.
bool propagate_ac3(SolverState& state);

struct SolveLimits {
  std::optional<std::uint64_t> max_nodes;
};

enum class Status { kSat, kUnsat, kUnknown };

const char* status_name(Status s);

struct BinResult {
  Status status = Status::kUnknown;
  AssignmentBin assignment;  // total when status == kSat
  SolveStats stats;
};

// Faults when check_network_inv(net) reports violations. kUnknown only when
// the node limit is hit.
BinResult solve_csp(const NetworkBin& net, const InterpRegistry& reg,
                    const SolveLimits& limits = {});

}  // namespace hvsolve

#endif  // HVSOLVE_BINARY_SOLVER_HPP_
