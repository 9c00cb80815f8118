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

#include "hvsolve/hve.hpp"

#include <sstream>

namespace hvsolve {

Tuple tuple_from_list(std::vector<Value> vs) { return Tuple(std::move(vs)); }

std::vector<Value> tuple_to_list(std::size_t n, const Tuple& t) {
  if (n != t.size()) {
    throw ContractError("tuple_to_list: length " + std::to_string(n) +
                        " requested for a tuple of length " +
                        std::to_string(t.size()));
  }
  return {t.data(), t.data() + n};
}

Value proj_tuple(std::size_t i, const Tuple& t) {
  if (i >= t.size()) {
    throw ContractError("proj_tuple: index " + std::to_string(i) +
                        " out of range for a tuple of length " +
                        std::to_string(t.size()));
  }
  return t.data()[i];
}

namespace {

void write_scope(std::ostream& out, const std::vector<VarId>& scope) {
  out << "[";
  for (std::size_t i = 0; i < scope.size(); ++i) {
    out << (i ? "," : "") << scope[i].str();
  }
  out << "]";
}

}  // namespace

std::string to_string(const EncVariable& v) {
  if (const auto* o = std::get_if<OVar>(&v)) return o->var.str();
  const auto& h = std::get<HVar>(v);
  std::ostringstream out;
  out << h.op.str() << "/" << h.arity;
  write_scope(out, h.scope);
  return out.str();
}

std::string to_string(const EncValue& v) {
  if (const auto* r = std::get_if<RawV>(&v)) return std::to_string(r->v);
  const auto& t = std::get<TupleV>(v).t;
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << (i ? "," : "") << t.data()[i];
  }
  out << ")";
  return out.str();
}

std::string to_string(const EncConstraint& c) {
  std::ostringstream out;
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    out << "Basic " << b->id.str() << " " << b->x.str() << " " << b->y.str();
    return out.str();
  }
  const auto& p = std::get<Proj>(c);
  out << "Proj " << p.op.str() << "/" << p.arity;
  write_scope(out, p.scope);
  out << " " << p.idx << " " << p.x.str();
  return out.str();
}

std::optional<std::vector<Tuple>> expand(const OpId& op, std::size_t arity,
                                         const std::vector<VarId>& scope,
                                         const std::map<VarId, Domain>& doms,
                                         const InterpRegistry& reg) {
  std::vector<const Domain*> scope_doms;
  for (const auto& v : scope) {
    auto it = doms.find(v);
    if (it == doms.end()) return std::nullopt;
    scope_doms.push_back(&it->second);
  }
  const Interpretation* interp = reg.find(op, arity);
  if (!interp) {
    throw ContractError("expand: unresolved operator " + op.str() + "/" +
                        std::to_string(arity));
  }
  if (scope.size() != arity) {
    throw ContractError("expand: scope length differs from arity for " +
                        op.str());
  }

  std::vector<Tuple> out;
  if (interp->is_extension()) {
    for (const auto& row : interp->table()) {
      bool inside = true;
      for (std::size_t i = 0; i < arity && inside; ++i) {
        inside = scope_doms[i]->contains(row[i]);
      }
      if (inside) out.push_back(tuple_from_list(row));
    }
    return out;
  }

  for (const Domain* d : scope_doms) {
    if (d->empty()) return out;
  }
  // Odometer over the scope domains, last position fastest.
  std::vector<std::size_t> pos(arity, 0);
  std::vector<Value> values(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    values[i] = scope_doms[i]->values()[0];
  }
  while (true) {
    if (interp->holds(values)) out.push_back(tuple_from_list(values));
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++pos[i] < scope_doms[i]->size()) {
        values[i] = scope_doms[i]->values()[pos[i]];
        break;
      }
      pos[i] = 0;
      values[i] = scope_doms[i]->values()[0];
      if (i == 0) return out;
    }
    if (arity == 0) return out;
  }
}

std::optional<std::pair<std::vector<EncConstraint>, std::vector<DualDomain>>>
cstsn_to_csts2(const std::vector<ConstraintN>& csts,
               const std::map<VarId, Domain>& doms,
               const InterpRegistry& reg) {
  std::vector<EncConstraint> out;
  std::vector<DualDomain> duals;
  for (const auto& c : csts) {
    if (const auto* b = std::get_if<BasicConstraint>(&c)) {
      out.push_back(*b);
      continue;
    }
    const auto& n = std::get<NaryConstraint>(c);
    auto tuples = expand(n.op, n.arity, n.scope, doms, reg);
    if (!tuples) return std::nullopt;
    duals.emplace_back(HVar{n.op, n.arity, n.scope}, std::move(*tuples));
    for (std::size_t i = 0; i < n.scope.size(); ++i) {
      out.push_back(Proj{n.op, n.arity, n.scope, i, n.scope[i]});
    }
  }
  return std::pair{std::move(out), std::move(duals)};
}

std::map<EncVariable, std::vector<EncValue>> new_domain(
    std::map<EncVariable, std::vector<EncValue>> raw,
    const std::vector<DualDomain>& duals) {
  for (const auto& [var, tuples] : duals) {
    std::vector<EncValue> values;
    values.reserve(tuples.size());
    for (const auto& t : tuples) values.push_back(TupleV{t.size(), t});
    raw.insert_or_assign(var, std::move(values));
  }
  return raw;
}

std::optional<NetworkBin> translate_csp_n(const NetworkN& net,
                                          const InterpRegistry& reg) {
  auto encoded = cstsn_to_csts2(net.csts, net.doms, reg);
  if (!encoded) return std::nullopt;
  auto& [csts, duals] = *encoded;

  NetworkBin out;
  std::map<EncVariable, std::vector<EncValue>> raw;
  for (const auto& v : net.vars) {
    out.vars.push_back(OVar{v});
    std::vector<EncValue> values;
    auto it = net.doms.find(v);
    if (it != net.doms.end()) {
      for (Value x : it->second) values.push_back(RawV{x});
    }
    raw.emplace(OVar{v}, std::move(values));
  }
  for (const auto& d : duals) out.vars.push_back(d.first);
  out.doms = new_domain(std::move(raw), duals);
  out.csts = std::move(csts);
  return out;
}

AssignmentBin translate_sol_n(const AssignmentN& a, const NetworkN& net) {
  AssignmentBin out;
  for (const auto& v : net.vars) {
    auto it = a.find(v);
    if (it == a.end()) {
      throw ContractError("translate_sol_n: variable " + v.str() +
                          " is unassigned");
    }
    out.emplace(OVar{v}, RawV{it->second});
  }
  for (const auto& c : net.csts) {
    const auto* n = std::get_if<NaryConstraint>(&c);
    if (!n) continue;
    std::vector<Value> values;
    for (const auto& v : n->scope) {
      auto it = a.find(v);
      if (it == a.end()) {
        throw ContractError("translate_sol_n: scope variable " + v.str() +
                            " is unassigned");
      }
      values.push_back(it->second);
    }
    out.insert_or_assign(HVar{n->op, n->arity, n->scope},
                         TupleV{values.size(), tuple_from_list(values)});
  }
  return out;
}

AssignmentN translate_sol_back(const AssignmentBin& a,
                               const std::vector<VarId>& orig_vars) {
  AssignmentN out;
  for (const auto& v : orig_vars) {
    auto it = a.find(OVar{v});
    if (it == a.end()) {
      throw ContractError("translate_sol_back: " + v.str() + " is unbound");
    }
    const auto* raw = std::get_if<RawV>(&it->second);
    if (!raw) {
      throw ContractError("translate_sol_back: " + v.str() +
                          " is bound to a tuple");
    }
    out.emplace(v, raw->v);
  }
  return out;
}

}  // namespace hvsolve
