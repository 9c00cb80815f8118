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

#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hvsolve::testing {

namespace {

using Span = std::span<const Value>;

Fixture build_six_var(bool c1_only, bool x2_is_1, bool contradictory_c5) {
  Fixture f;
  for (const char* v : {"x1", "x2", "x3", "x4", "x5", "x6"}) {
    if (c1_only && std::string(v) != "x1" && std::string(v) != "x2" &&
        std::string(v) != "x6") {
      continue;
    }
    f.net.vars.emplace_back(v);
    f.net.doms.emplace(VarId(v), Domain{0, 1});
  }
  if (x2_is_1) f.net.doms[VarId("x2")] = Domain{1};

  f.reg.define("c1", 3, Interpretation::intention(3, [](Span t) {
                 return t[0] + t[1] + t[2] == 1;
               }, "eq(add(X0,X1,X2),1)"));
  f.net.csts.push_back(NaryConstraint{"c1", 3, {"x1", "x2", "x6"}});
  if (c1_only) return f;

  f.reg.define("c2", 4, Interpretation::intention(4, [](Span t) {
                 return t[0] + t[1] - t[2] + t[3] == 1;
               }, "eq(add(X0,X1,neg(X2),X3),1)"));
  f.reg.define("c3", 3, Interpretation::intention(3, [](Span t) {
                 return t[0] + t[1] - t[2] >= 1;
               }, "ge(sub(add(X0,X1),X2),1)"));
  f.reg.define("c4", 3, Interpretation::intention(3, [](Span t) {
                 return t[0] + t[1] - t[2] == 0;
               }, "eq(sub(add(X0,X1),X2),0)"));
  if (contradictory_c5) {
    f.reg.define_basic("c5", Interpretation::intention(2, [](Span t) {
                         return t[0] >= t[1] && t[0] < t[1];
                       }, "and(ge(X0,X1),lt(X0,X1))"));
  } else {
    f.reg.define_basic("c5", Interpretation::intention(2, [](Span t) {
                         return t[0] >= t[1];
                       }, "ge(X0,X1)"));
  }
  f.net.csts.push_back(NaryConstraint{"c2", 4, {"x1", "x2", "x3", "x4"}});
  f.net.csts.push_back(NaryConstraint{"c3", 3, {"x4", "x5", "x6"}});
  f.net.csts.push_back(NaryConstraint{"c4", 3, {"x2", "x5", "x6"}});
  f.net.csts.push_back(BasicConstraint{"c5", "x1", "x6"});
  return f;
}

bool holds_n(const ConstraintN& c, const InterpRegistry& reg,
             const AssignmentN& a) {
  std::vector<Value> vals;
  const Interpretation* interp = nullptr;
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    interp = reg.find_basic(b->id);
    vals = {a.at(b->x), a.at(b->y)};
  } else {
    const auto& n = std::get<NaryConstraint>(c);
    interp = reg.find(n.op, n.arity);
    for (const auto& v : n.scope) vals.push_back(a.at(v));
  }
  if (!interp) throw std::logic_error("fixture: unresolved constraint");
  if (interp->is_extension()) {
    const auto& rows = interp->table();
    return std::find(rows.begin(), rows.end(), vals) != rows.end();
  }
  return interp->holds(vals);
}

std::vector<VarId> scope_vars(const ConstraintN& c) {
  if (const auto* b = std::get_if<BasicConstraint>(&c)) return {b->x, b->y};
  return std::get<NaryConstraint>(c).scope;
}

bool holds_bin(const EncConstraint& c, const InterpRegistry& reg,
               const EncValue& x, const EncValue& y) {
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    const auto* rx = std::get_if<RawV>(&x);
    const auto* ry = std::get_if<RawV>(&y);
    if (!rx || !ry) return false;
    const Interpretation* interp = reg.find_basic(b->id);
    if (!interp) throw std::logic_error("fixture: unresolved basic");
    std::vector<Value> vals{rx->v, ry->v};
    if (interp->is_extension()) {
      const auto& rows = interp->table();
      return std::find(rows.begin(), rows.end(), vals) != rows.end();
    }
    return interp->holds(vals);
  }
  const auto& p = std::get<Proj>(c);
  const auto* tv = std::get_if<TupleV>(&x);
  const auto* rv = std::get_if<RawV>(&y);
  if (!tv || !rv || tv->t.size() != p.arity || p.idx >= p.arity) return false;
  return tv->t.view()[p.idx] == rv->v;
}

std::pair<EncVariable, EncVariable> endpoints(const EncConstraint& c) {
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    return {OVar{b->x}, OVar{b->y}};
  }
  const auto& p = std::get<Proj>(c);
  return {HVar{p.op, p.arity, p.scope}, OVar{p.x}};
}

}  // namespace

Fixture six_var() { return build_six_var(false, false, false); }
Fixture six_var_x2_is_1() { return build_six_var(false, true, false); }
Fixture six_var_unsat() { return build_six_var(false, false, true); }
Fixture six_var_c1_only_x2_is_1() { return build_six_var(true, true, false); }

AssignmentN six_var_solution() {
  return {{"x1", 1}, {"x2", 0}, {"x3", 1}, {"x4", 1}, {"x5", 0}, {"x6", 0}};
}

std::vector<std::vector<Value>> six_var_dual(int constraint) {
  switch (constraint) {
    case 1:
      return {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    case 2:
      return {{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 1, 1},
              {1, 0, 0, 0}, {1, 0, 1, 1}, {1, 1, 1, 0}};
    case 3:
      return {{0, 1, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
    case 4:
      return {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}};
  }
  throw std::out_of_range("six_var_dual");
}

BinFixture random_binary_network(std::uint64_t seed, std::size_t max_vars,
                                 std::size_t max_domain, double density,
                                 double looseness) {
  std::mt19937_64 rng(seed);
  auto between = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  };
  BinFixture f;
  const std::size_t n = between(2, std::max<std::size_t>(2, max_vars));
  std::vector<std::vector<Value>> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    VarId v{"v" + std::to_string(i)};
    std::vector<Value> pool{0, 1, 2, 3, 4, 5};
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(between(1, std::min<std::size_t>(max_domain, pool.size())));
    std::sort(pool.begin(), pool.end());
    raw[i] = pool;
    std::vector<EncValue> dom;
    for (Value x : pool) dom.push_back(RawV{x});
    f.net.vars.push_back(OVar{v});
    f.net.doms.emplace(OVar{v}, std::move(dom));
  }
  std::size_t id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!chance(density)) continue;
      std::size_t a = i, b = j;
      if (chance(0.5)) std::swap(a, b);
      std::vector<std::vector<Value>> rows;
      for (Value x : raw[a]) {
        for (Value y : raw[b]) {
          if (chance(looseness)) rows.push_back({x, y});
        }
      }
      BasicId bid{"r" + std::to_string(id++)};
      f.reg.define_basic(bid, Interpretation::extension(2, rows));
      f.net.csts.push_back(BasicConstraint{
          bid, std::get<OVar>(f.net.vars[a]).var,
          std::get<OVar>(f.net.vars[b]).var});
    }
  }
  std::set<EncVariable> covered;
  for (const auto& c : f.net.csts) {
    auto [x, y] = endpoints(c);
    covered.insert(x);
    covered.insert(y);
  }
  std::erase_if(f.net.vars,
                [&](const EncVariable& v) { return !covered.count(v); });
  std::erase_if(f.net.doms,
                [&](const auto& kv) { return !covered.count(kv.first); });
  return f;
}

std::vector<AssignmentN> enumerate_n(const NetworkN& net,
                                     const InterpRegistry& reg) {
  std::vector<AssignmentN> out;
  for (const auto& v : net.vars) {
    if (!net.doms.count(v)) return out;
  }
  std::set<VarId> declared(net.vars.begin(), net.vars.end());
  for (const auto& c : net.csts) {
    for (const auto& v : scope_vars(c)) {
      if (!declared.count(v)) return out;
    }
  }
  AssignmentN a;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == net.vars.size()) {
      for (const auto& c : net.csts) {
        if (!holds_n(c, reg, a)) return;
      }
      out.push_back(a);
      return;
    }
    for (Value x : net.doms.at(net.vars[i])) {
      a[net.vars[i]] = x;
      go(i + 1);
    }
    a.erase(net.vars[i]);
  };
  go(0);
  return out;
}

std::vector<AssignmentBin> enumerate_bin(const NetworkBin& net,
                                         const InterpRegistry& reg) {
  std::vector<AssignmentBin> out;
  std::map<EncVariable, std::size_t> pos;
  for (std::size_t i = 0; i < net.vars.size(); ++i) {
    pos[net.vars[i]] = i;
    if (!net.doms.count(net.vars[i])) return out;
  }
  std::vector<std::vector<std::size_t>> due(net.vars.size());
  for (std::size_t c = 0; c < net.csts.size(); ++c) {
    auto [x, y] = endpoints(net.csts[c]);
    if (!pos.count(x) || !pos.count(y)) return out;
    due[std::max(pos[x], pos[y])].push_back(c);
  }
  AssignmentBin a;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == net.vars.size()) {
      out.push_back(a);
      return;
    }
    for (const auto& val : net.doms.at(net.vars[i])) {
      a[net.vars[i]] = val;
      bool ok = true;
      for (std::size_t c : due[i]) {
        auto [x, y] = endpoints(net.csts[c]);
        if (!holds_bin(net.csts[c], reg, a.at(x), a.at(y))) {
          ok = false;
          break;
        }
      }
      if (ok) go(i + 1);
    }
    a.erase(net.vars[i]);
  };
  go(0);
  return out;
}

bool bin_solution_ok(const AssignmentBin& a, const NetworkBin& net,
                     const InterpRegistry& reg) {
  if (a.size() != net.vars.size()) return false;
  for (const auto& v : net.vars) {
    auto it = a.find(v);
    if (it == a.end()) return false;
    const auto& dom = net.doms.at(v);
    if (std::find(dom.begin(), dom.end(), it->second) == dom.end()) {
      return false;
    }
  }
  for (const auto& c : net.csts) {
    auto [x, y] = endpoints(c);
    if (!a.count(x) || !a.count(y)) return false;
    if (!holds_bin(c, reg, a.at(x), a.at(y))) return false;
  }
  return true;
}

std::string data_path(const std::string& name) {
  return std::string(HVSOLVE_TEST_DATA_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace hvsolve::testing
