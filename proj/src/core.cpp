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

#include "hvsolve/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hvsolve {

Domain::Domain(std::initializer_list<Value> values)
    : Domain(std::vector<Value>(values)) {}

Domain::Domain(std::vector<Value> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

Domain Domain::range(Value lo, Value hi) {
  std::vector<Value> vs;
  for (Value v = lo; v <= hi; ++v) vs.push_back(v);
  return Domain(std::move(vs));
}

bool Domain::contains(Value v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

struct Interpretation::Impl {
  std::size_t arity = 0;
  bool extension = false;
  std::vector<std::vector<Value>> rows;
  std::vector<std::vector<Value>> sorted_rows;
  Predicate pred;
  std::string source;
};

Interpretation Interpretation::extension(std::size_t arity,
                                         std::vector<std::vector<Value>> rows) {
  auto impl = std::make_shared<Impl>();
  impl->arity = arity;
  impl->extension = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != arity) {
      std::ostringstream msg;
      msg << "table row " << i << " has " << rows[i].size()
          << " values, expected " << arity;
      throw std::invalid_argument(msg.str());
    }
  }
  impl->sorted_rows = rows;
  std::sort(impl->sorted_rows.begin(), impl->sorted_rows.end());
  auto dup = std::adjacent_find(impl->sorted_rows.begin(),
                                impl->sorted_rows.end());
  if (dup != impl->sorted_rows.end()) {
    std::ostringstream msg;
    msg << "table contains a repeated row (";
    for (std::size_t i = 0; i < dup->size(); ++i) {
      msg << (i ? " " : "") << (*dup)[i];
    }
    msg << ")";
    throw std::invalid_argument(msg.str());
  }
  impl->rows = std::move(rows);
  return Interpretation(std::move(impl));
}

Interpretation Interpretation::intention(std::size_t arity, Predicate pred,
                                         std::string source) {
  if (!pred) throw std::invalid_argument("intention without a predicate");
  auto impl = std::make_shared<Impl>();
  impl->arity = arity;
  impl->pred = std::move(pred);
  impl->source = std::move(source);
  return Interpretation(std::move(impl));
}

std::size_t Interpretation::arity() const { return impl_->arity; }
bool Interpretation::is_extension() const { return impl_->extension; }
const std::vector<std::vector<Value>>& Interpretation::table() const {
  return impl_->rows;
}
const std::string& Interpretation::source() const { return impl_->source; }

bool Interpretation::holds(std::span<const Value> values) const {
  if (values.size() != impl_->arity) {
    throw ContractError("interpretation of arity " +
                        std::to_string(impl_->arity) + " applied to " +
                        std::to_string(values.size()) + " values");
  }
  if (!impl_->extension) return impl_->pred(values);
  return std::binary_search(
      impl_->sorted_rows.begin(), impl_->sorted_rows.end(), values,
      [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                            b.end());
      });
}

void InterpRegistry::define(const OpId& op, std::size_t arity,
                            Interpretation interp) {
  if (interp.arity() != arity) {
    throw std::invalid_argument("operator " + op.str() + "/" +
                                std::to_string(arity) +
                                " given an interpretation of arity " +
                                std::to_string(interp.arity()));
  }
  if (!ops_.emplace(std::pair{op, arity}, std::move(interp)).second) {
    throw std::invalid_argument("operator " + op.str() + "/" +
                                std::to_string(arity) + " defined twice");
  }
}

void InterpRegistry::define_basic(const BasicId& id, Interpretation interp) {
  if (interp.arity() != 2) {
    throw std::invalid_argument("basic constraint " + id.str() +
                                " must be binary");
  }
  if (!basics_.emplace(id, std::move(interp)).second) {
    throw std::invalid_argument("basic constraint " + id.str() +
                                " defined twice");
  }
}

const Interpretation* InterpRegistry::find(const OpId& op,
                                           std::size_t arity) const {
  auto it = ops_.find({op, arity});
  return it == ops_.end() ? nullptr : &it->second;
}

const Interpretation* InterpRegistry::find_basic(const BasicId& id) const {
  auto it = basics_.find(id);
  return it == basics_.end() ? nullptr : &it->second;
}

std::vector<VarId> scope_of(const ConstraintN& c) {
  if (const auto* b = std::get_if<BasicConstraint>(&c)) return {b->x, b->y};
  return std::get<NaryConstraint>(c).scope;
}

const char* clause_name(NClause c) {
  switch (c) {
    case NClause::kVariables: return "variables";
    case NClause::kNormalization: return "normalization";
    case NClause::kDistinctScope: return "distinct-scope";
    case NClause::kNaryArity: return "nary-arity";
    case NClause::kUnresolved: return "unresolved";
  }
  return "?";
}

namespace {

std::string describe(const ConstraintN& c) {
  std::ostringstream out;
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    out << "Bin " << b->id.str() << "(" << b->x.str() << ", " << b->y.str()
        << ")";
    return out.str();
  }
  const auto& n = std::get<NaryConstraint>(c);
  out << "Nary " << n.op.str() << "/" << n.arity << "(";
  for (std::size_t i = 0; i < n.scope.size(); ++i) {
    out << (i ? ", " : "") << n.scope[i].str();
  }
  out << ")";
  return out.str();
}

}  // namespace

WellFormedReport check_network_inv_n(const NetworkN& net,
                                     const InterpRegistry& reg) {
  WellFormedReport report;
  auto fail = [&](NClause clause, std::optional<std::size_t> index,
                  std::string msg) {
    report.violations.push_back({clause, index, std::move(msg)});
  };

  // (a) variable sets.
  std::set<VarId> declared;
  for (const auto& v : net.vars) {
    if (!declared.insert(v).second) {
      fail(NClause::kVariables, std::nullopt,
           "variable " + v.str() + " declared twice");
    }
  }
  for (const auto& [v, dom] : net.doms) {
    if (!declared.count(v)) {
      fail(NClause::kVariables, std::nullopt,
           "domain given for undeclared variable " + v.str());
    }
  }
  for (const auto& v : declared) {
    if (!net.doms.count(v)) {
      fail(NClause::kVariables, std::nullopt,
           "variable " + v.str() + " has no domain");
    }
  }
  std::set<VarId> used;
  for (std::size_t i = 0; i < net.csts.size(); ++i) {
    for (const auto& v : scope_of(net.csts[i])) {
      used.insert(v);
      if (!declared.count(v)) {
        fail(NClause::kVariables, i,
             describe(net.csts[i]) + " mentions undeclared variable " +
                 v.str());
      }
    }
  }
  for (const auto& v : net.vars) {
    if (!used.count(v)) {
      fail(NClause::kVariables, std::nullopt,
           "variable " + v.str() + " occurs in no constraint");
    }
  }

  std::map<std::set<VarId>, std::size_t> scope_sets;
  for (std::size_t i = 0; i < net.csts.size(); ++i) {
    const auto& c = net.csts[i];
    auto scope = scope_of(c);
    std::set<VarId> set(scope.begin(), scope.end());

    // (b) normalization.
    auto [it, fresh] = scope_sets.emplace(set, i);
    if (!fresh) {
      fail(NClause::kNormalization, i,
           describe(c) + " has the same variable set as constraint " +
               std::to_string(it->second));
    }

    // (c) distinct scope.
    if (set.size() != scope.size()) {
      fail(NClause::kDistinctScope, i,
           describe(c) + " repeats a variable");
    }

    // (d) and (e).
    if (const auto* b = std::get_if<BasicConstraint>(&c)) {
      if (!reg.find_basic(b->id)) {
        fail(NClause::kUnresolved, i,
             "no interpretation for basic constraint " + b->id.str());
      }
    } else {
      const auto& n = std::get<NaryConstraint>(c);
      if (n.scope.size() != n.arity || n.arity <= 2) {
        fail(NClause::kNaryArity, i,
             describe(c) + ": arity must equal the scope length and exceed 2");
      }
      if (!reg.find(n.op, n.arity)) {
        fail(NClause::kUnresolved, i,
             "no interpretation for operator " + n.op.str() + "/" +
                 std::to_string(n.arity));
      }
    }
  }
  return report;
}

bool eval_constraint_n(const ConstraintN& c, const InterpRegistry& reg,
                       const AssignmentN& a) {
  const Interpretation* interp = nullptr;
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    interp = reg.find_basic(b->id);
    if (!interp) {
      throw ContractError("unresolved basic constraint " + b->id.str());
    }
  } else {
    const auto& n = std::get<NaryConstraint>(c);
    interp = reg.find(n.op, n.arity);
    if (!interp) {
      throw ContractError("unresolved operator " + n.op.str() + "/" +
                          std::to_string(n.arity));
    }
  }
  std::vector<Value> values;
  for (const auto& v : scope_of(c)) {
    auto it = a.find(v);
    if (it == a.end()) {
      throw ContractError("variable " + v.str() +
                          " is unassigned in " + describe(c));
    }
    values.push_back(it->second);
  }
  return interp->holds(values);
}

bool is_solution_n(const AssignmentN& a, const NetworkN& net,
                   const InterpRegistry& reg) {
  for (const auto& v : net.vars) {
    if (!a.count(v)) return false;
  }
  // Every assigned variable needs a domain containing its value.
  for (const auto& [v, x] : a) {
    auto dom = net.doms.find(v);
    if (dom == net.doms.end() || !dom->second.contains(x)) return false;
  }
  for (const auto& c : net.csts) {
    for (const auto& v : scope_of(c)) {
      if (!a.count(v)) return false;
    }
    if (!eval_constraint_n(c, reg, a)) return false;
  }
  return true;
}

}  // namespace hvsolve
