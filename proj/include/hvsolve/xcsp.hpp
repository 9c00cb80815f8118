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
// Reader for the XCSP 2.1 subset used by classic CSP benchmark libraries:
// integer domains, extensional relations (supports or conflicts),
// functional predicates and constraints referencing either. Soft
// constraints, global constraints and other expression syntaxes are
// rejected with an "unsupported" diagnostic.

#ifndef HVSOLVE_XCSP_HPP_
#define HVSOLVE_XCSP_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hvsolve/core.hpp"
#include "hvsolve/parse_error.hpp"
#include "hvsolve/pred_expr.hpp"

namespace hvsolve {

struct XcspDomain {
  std::string name;
  std::vector<Value> values;
  std::size_t line = 0;
};

struct XcspVariable {
  std::string name;
  std::string domain;
  std::size_t line = 0;
};

struct XcspRelation {
  std::string name;
  std::size_t arity = 0;
  bool supports = true;
  std::vector<std::vector<Value>> rows;
  std::size_t line = 0;
};

struct XcspPredicate {
  std::string name;
  std::vector<std::string> formals;
  PredExpr expr;
  std::size_t line = 0;
};

struct XcspConstraint {
  std::string name;
  std::size_t arity = 0;
  std::vector<std::string> scope;
  std::string reference;
  // Effective parameters of a predicate reference: variable names or
  // integer literals.
  std::vector<std::string> parameters;
  std::size_t line = 0;
};

struct XcspInstance {
  std::string name;
  std::vector<XcspDomain> domains;
  std::vector<XcspVariable> variables;
  std::vector<XcspRelation> relations;
  std::vector<XcspPredicate> predicates;
  std::vector<XcspConstraint> constraints;
};

// Throws ParseError with the line and element of the first problem found:
// malformed XML, unresolved references, arity mismatches, non-integer
// values, unsupported features.
XcspInstance parse_xcsp(std::string_view text);

struct LoweringStats {
  std::size_t binary_constraints = 0;
  std::size_t nary_constraints = 0;
  // Predicate evaluations that divided by zero or overflowed; such tuples
  // are rejected. Updated while the network is being solved.
  std::shared_ptr<std::atomic<std::uint64_t>> eval_faults =
      std::make_shared<std::atomic<std::uint64_t>>(0);
};

struct LoweredNetwork {
  NetworkN net;
  InterpRegistry reg;
  LoweringStats stats;
};

// Supports relations become extension tables, conflicts relations become
// negated-membership predicates, predicate references become predicates
// with the effective parameters bound. Two-variable constraints become
// basic constraints named after the constraint; wider ones are Nary with
// the relation name (relations) or the constraint name (predicates) as
// operator. Throws ParseError when the result is not well formed.
LoweredNetwork lower_to_network(const XcspInstance& inst);

}  // namespace hvsolve

#endif  // HVSOLVE_XCSP_HPP_
