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
// The n-ary constraint network model: variables, finite integer domains,
// binary and n-ary constraints resolved through an interpretation registry,
// the structural well-formedness check and the solution predicate.

#ifndef HVSOLVE_CORE_HPP_
#define HVSOLVE_CORE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hvsolve {

using Value = std::int64_t;

// Raised when a caller breaks an operation's precondition (incomplete
// assignment, unresolved operator, tuple index out of range, ...). These are
// programming faults, never input errors.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A symbolic identifier. The tag keeps variable names, operator names and
// basic-constraint names from being mixed up.
template <class Tag>
class Name {
 public:
  Name() = default;
  explicit Name(std::string name) : name_(std::move(name)) {}
  Name(const char* name) : name_(name) {}  // NOLINT: literal convenience

  const std::string& str() const { return name_; }

  friend auto operator<=>(const Name&, const Name&) = default;
  friend bool operator==(const Name&, const Name&) = default;

 private:
  std::string name_;
};

using VarId = Name<struct VarTag>;
using OpId = Name<struct OpTag>;
using BasicId = Name<struct BasicTag>;

// Finite domain: strictly ascending, duplicate free.
class Domain {
 public:
  Domain() = default;
  Domain(std::initializer_list<Value> values);
  explicit Domain(std::vector<Value> values);
  static Domain range(Value lo, Value hi);

  const std::vector<Value>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(Value v) const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<Value> values_;
};

using Predicate = std::function<bool(std::span<const Value>)>;

// Semantics of a constraint of fixed arity: either an explicit table of
// accepted rows or a predicate. Copies share the immutable payload.
class Interpretation {
 public:
  // Throws std::invalid_argument when a row has the wrong width or a row is
  // repeated.
  static Interpretation extension(std::size_t arity,
                                  std::vector<std::vector<Value>> rows);
  // `source` is the prefix-expression text of the predicate when known; it
  // is what the native printer emits.
  static Interpretation intention(std::size_t arity, Predicate pred,
                                  std::string source = {});

  std::size_t arity() const;
  bool is_extension() const;
  // Rows in the order they were given. Empty for intentions.
  const std::vector<std::vector<Value>>& table() const;
  const std::string& source() const;

  // Faults when values.size() != arity().
  bool holds(std::span<const Value> values) const;

 private:
  struct Impl;
  explicit Interpretation(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Resolves n-ary operators (by name and arity) and basic binary constraints
// (by name) to their interpretations.
class InterpRegistry {
 public:
  // Throws std::invalid_argument on a duplicate key or an interpretation
  // whose arity differs from `arity`.
  void define(const OpId& op, std::size_t arity, Interpretation interp);
  // Basic interpretations are binary.
  void define_basic(const BasicId& id, Interpretation interp);

  const Interpretation* find(const OpId& op, std::size_t arity) const;
  const Interpretation* find_basic(const BasicId& id) const;

  const std::map<std::pair<OpId, std::size_t>, Interpretation>& ops() const {
    return ops_;
  }
  const std::map<BasicId, Interpretation>& basics() const { return basics_; }

 private:
  std::map<std::pair<OpId, std::size_t>, Interpretation> ops_;
  std::map<BasicId, Interpretation> basics_;
};

struct BasicConstraint {
  BasicId id;
  VarId x;
  VarId y;
  friend bool operator==(const BasicConstraint&,
                         const BasicConstraint&) = default;
};

struct NaryConstraint {
  OpId op;
  std::size_t arity = 0;
  std::vector<VarId> scope;
  friend bool operator==(const NaryConstraint&,
                         const NaryConstraint&) = default;
};

using ConstraintN = std::variant<BasicConstraint, NaryConstraint>;

std::vector<VarId> scope_of(const ConstraintN& c);

struct NetworkN {
  std::vector<VarId> vars;
  std::map<VarId, Domain> doms;
  std::vector<ConstraintN> csts;
  friend bool operator==(const NetworkN&, const NetworkN&) = default;
};

using AssignmentN = std::map<VarId, Value>;

// One failed well-formedness clause. `constraint` is the index of the
// offending constraint when the clause is about a single constraint (or the
// later of two clashing ones).
template <class Clause>
struct Violation {
  Clause clause;
  std::optional<std::size_t> constraint;
  std::string message;
};

template <class Clause>
struct Report {
  std::vector<Violation<Clause>> violations;
  bool ok() const { return violations.empty(); }
};

enum class NClause {
  kVariables,       // constraint vars = declared vars = domain keys
  kNormalization,   // no two constraints over the same variable set
  kDistinctScope,   // no repeated variable within a scope
  kNaryArity,       // Nary(op, k, l): |l| = k and k > 2
  kUnresolved,      // operator / basic name missing from the registry
};

using WellFormedReport = Report<NClause>;

const char* clause_name(NClause c);

WellFormedReport check_network_inv_n(const NetworkN& net,
                                     const InterpRegistry& reg);

// Faults (ContractError) when the constraint does not resolve or a scope
// variable is unassigned.
bool eval_constraint_n(const ConstraintN& c, const InterpRegistry& reg,
                       const AssignmentN& a);

// True when every variable is assigned, every assigned variable has a
// domain containing its value and every constraint holds.
bool is_solution_n(const AssignmentN& a, const NetworkN& net,
                   const InterpRegistry& reg);

}  // namespace hvsolve

#endif  // HVSOLVE_CORE_HPP_
