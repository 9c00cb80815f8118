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
// Hidden variable encoding. Every n-ary constraint c becomes a hidden
// variable whose domain is the list of tuples satisfying c, linked to each
// of c's original variables by a projection constraint. Binary constraints
// are carried over unchanged.

#ifndef HVSOLVE_HVE_HPP_
#define HVSOLVE_HVE_HPP_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hvsolve/core.hpp"

namespace hvsolve {

// Fixed-length value sequence with constant-time positional access.
class Tuple {
 public:
  Tuple() = default;

  std::size_t size() const { return values_.size(); }
  const Value* data() const { return values_.data(); }
  std::span<const Value> view() const { return values_; }

  friend auto operator<=>(const Tuple&, const Tuple&) = default;
  friend bool operator==(const Tuple&, const Tuple&) = default;

 private:
  friend Tuple tuple_from_list(std::vector<Value> vs);
  explicit Tuple(std::vector<Value> vs) : values_(std::move(vs)) {}
  std::vector<Value> values_;
};

Tuple tuple_from_list(std::vector<Value> vs);
// Faults when n != t.size().
std::vector<Value> tuple_to_list(std::size_t n, const Tuple& t);
// Faults when i >= t.size().
Value proj_tuple(std::size_t i, const Tuple& t);

// Original variable of the n-ary network.
struct OVar {
  VarId var;
  friend auto operator<=>(const OVar&, const OVar&) = default;
  friend bool operator==(const OVar&, const OVar&) = default;
};

// Hidden variable of the n-ary constraint Nary(op, arity, scope).
struct HVar {
  OpId op;
  std::size_t arity = 0;
  std::vector<VarId> scope;
  friend auto operator<=>(const HVar&, const HVar&) = default;
  friend bool operator==(const HVar&, const HVar&) = default;
};

// Ordered with every OVar before every HVar.
using EncVariable = std::variant<OVar, HVar>;

struct RawV {
  Value v = 0;
  friend auto operator<=>(const RawV&, const RawV&) = default;
  friend bool operator==(const RawV&, const RawV&) = default;
};

struct TupleV {
  std::size_t arity = 0;
  Tuple t;
  friend auto operator<=>(const TupleV&, const TupleV&) = default;
  friend bool operator==(const TupleV&, const TupleV&) = default;
};

using EncValue = std::variant<RawV, TupleV>;

// Projection: component `idx` of the tuple bound to HVar(op, arity, scope)
// equals the value of original variable `x` (= scope[idx]).
struct Proj {
  OpId op;
  std::size_t arity = 0;
  std::vector<VarId> scope;
  std::size_t idx = 0;
  VarId x;
  friend bool operator==(const Proj&, const Proj&) = default;
};

using EncConstraint = std::variant<BasicConstraint, Proj>;

struct NetworkBin {
  std::vector<EncVariable> vars;
  std::map<EncVariable, std::vector<EncValue>> doms;
  std::vector<EncConstraint> csts;
  friend bool operator==(const NetworkBin&, const NetworkBin&) = default;
};

using AssignmentBin = std::map<EncVariable, EncValue>;
using DualDomain = std::pair<EncVariable, std::vector<Tuple>>;

std::string to_string(const EncVariable& v);
std::string to_string(const EncValue& v);
std::string to_string(const EncConstraint& c);

// Tuples of the hidden variable for Nary(op, arity, scope), in lexicographic
// order of the scope domains (leftmost variable slowest) for intentions and
// in table order for extensions; extension rows with a component outside its
// variable's domain are dropped. Absent when a scope variable has no domain.
std::optional<std::vector<Tuple>> expand(const OpId& op, std::size_t arity,
                                         const std::vector<VarId>& scope,
                                         const std::map<VarId, Domain>& doms,
                                         const InterpRegistry& reg);

std::optional<std::pair<std::vector<EncConstraint>, std::vector<DualDomain>>>
cstsn_to_csts2(const std::vector<ConstraintN>& csts,
               const std::map<VarId, Domain>& doms,
               const InterpRegistry& reg);

std::map<EncVariable, std::vector<EncValue>> new_domain(
    std::map<EncVariable, std::vector<EncValue>> raw,
    const std::vector<DualDomain>& duals);

std::optional<NetworkBin> translate_csp_n(const NetworkN& net,
                                          const InterpRegistry& reg);

// Faults when `a` does not assign every variable of `net`.
AssignmentBin translate_sol_n(const AssignmentN& a, const NetworkN& net);

// Faults when some OVar of `orig_vars` is unbound or bound to a tuple.
AssignmentN translate_sol_back(const AssignmentBin& a,
                               const std::vector<VarId>& orig_vars);

}  // namespace hvsolve

#endif  // HVSOLVE_HVE_HPP_
