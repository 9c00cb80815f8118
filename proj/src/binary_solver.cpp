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

#include "hvsolve/binary_solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <set>

namespace hvsolve {

namespace {

const Interpretation& basic_interp(const BasicConstraint& b,
                                   const InterpRegistry& reg) {
  const Interpretation* interp = reg.find_basic(b.id);
  if (!interp) {
    throw ContractError("unresolved basic constraint " + b.id.str());
  }
  return *interp;
}

Value raw_of(const EncValue& v, const char* what) {
  const auto* r = std::get_if<RawV>(&v);
  if (!r) throw ContractError(std::string(what) + ": expected a raw value");
  return r->v;
}

const Tuple& tuple_of(const EncValue& v, std::size_t arity, const char* what) {
  const auto* t = std::get_if<TupleV>(&v);
  if (!t) throw ContractError(std::string(what) + ": expected a tuple");
  if (t->arity != arity || t->t.size() != arity) {
    throw ContractError(std::string(what) + ": tuple arity mismatch");
  }
  return t->t;
}

}  // namespace

bool interp_binary(const EncConstraint& c, const EncValue& vx,
                   const EncValue& vy, const InterpRegistry& reg) {
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    std::array<Value, 2> values{raw_of(vx, "interp_binary"),
                                raw_of(vy, "interp_binary")};
    return basic_interp(*b, reg).holds(values);
  }
  const auto& p = std::get<Proj>(c);
  const Tuple& t = tuple_of(vx, p.arity, "interp_binary");
  return proj_tuple(p.idx, t) == raw_of(vy, "interp_binary");
}

std::pair<EncVariable, EncVariable> vars_of(const EncConstraint& c) {
  if (const auto* b = std::get_if<BasicConstraint>(&c)) {
    return {OVar{b->x}, OVar{b->y}};
  }
  const auto& p = std::get<Proj>(c);
  return {HVar{p.op, p.arity, p.scope}, OVar{p.x}};
}

const char* clause_name(BClause c) {
  switch (c) {
    case BClause::kVariables: return "variables";
    case BClause::kNormalization: return "normalization";
    case BClause::kDistinctVariables: return "distinct-variables";
  }
  return "?";
}

BinWellFormedReport check_network_inv(const NetworkBin& net,
                                      const InterpRegistry& /*reg*/) {
  BinWellFormedReport report;
  auto fail = [&](BClause clause, std::optional<std::size_t> index,
                  std::string msg) {
    report.violations.push_back({clause, index, std::move(msg)});
  };

  std::set<EncVariable> declared;
  for (const auto& v : net.vars) {
    if (!declared.insert(v).second) {
      fail(BClause::kVariables, std::nullopt,
           "variable " + to_string(v) + " declared twice");
    }
  }
  for (const auto& [v, dom] : net.doms) {
    if (!declared.count(v)) {
      fail(BClause::kVariables, std::nullopt,
           "domain given for undeclared variable " + to_string(v));
    }
  }
  for (const auto& v : declared) {
    if (!net.doms.count(v)) {
      fail(BClause::kVariables, std::nullopt,
           "variable " + to_string(v) + " has no domain");
    }
  }

  std::set<EncVariable> used;
  std::map<std::set<EncVariable>, std::size_t> pairs;
  for (std::size_t i = 0; i < net.csts.size(); ++i) {
    auto [x, y] = vars_of(net.csts[i]);
    for (const auto* v : {&x, &y}) {
      used.insert(*v);
      if (!declared.count(*v)) {
        fail(BClause::kVariables, i,
             to_string(net.csts[i]) + " mentions undeclared variable " +
                 to_string(*v));
      }
    }
    if (x == y) {
      fail(BClause::kDistinctVariables, i,
           to_string(net.csts[i]) + " relates a variable to itself");
    }
    auto [it, fresh] = pairs.emplace(std::set<EncVariable>{x, y}, i);
    if (!fresh) {
      fail(BClause::kNormalization, i,
           to_string(net.csts[i]) + " shares its variables with constraint " +
               std::to_string(it->second));
    }
  }
  for (const auto& v : net.vars) {
    if (!used.count(v)) {
      fail(BClause::kVariables, std::nullopt,
           "variable " + to_string(v) + " occurs in no constraint");
    }
  }
  return report;
}

bool is_solution(const AssignmentBin& a, const NetworkBin& net,
                 const InterpRegistry& reg) {
  for (const auto& v : net.vars) {
    auto it = a.find(v);
    if (it == a.end()) return false;
    auto dom = net.doms.find(v);
    if (dom == net.doms.end()) return false;
    if (std::find(dom->second.begin(), dom->second.end(), it->second) ==
        dom->second.end()) {
      return false;
    }
  }
  for (const auto& c : net.csts) {
    auto [x, y] = vars_of(c);
    auto ix = a.find(x);
    auto iy = a.find(y);
    if (ix == a.end() || iy == a.end()) return false;
    if (!interp_binary(c, ix->second, iy->second, reg)) return false;
  }
  return true;
}

// Network with variables and values replaced by indices. Projections compare
// a precomputed tuple component with a precomputed raw value; basic
// constraints use a support matrix when it is small enough.
struct SolverState::Compiled {
  const NetworkBin* source = nullptr;
  std::map<EncVariable, std::size_t> index;
  std::vector<std::vector<EncValue>> initial;

  struct Constraint {
    std::size_t first = 0;
    std::size_t second = 0;
    const Interpretation* basic = nullptr;
    bool use_matrix = false;
    std::vector<char> matrix;        // basic: first-size x second-size
    std::vector<Value> first_keys;   // proj: component idx of each tuple
    std::vector<Value> second_keys;  // raw values of the original variable
  };
  std::vector<Constraint> csts;
  std::vector<std::vector<std::size_t>> incident;
};

namespace {

constexpr std::size_t kMatrixLimit = std::size_t{1} << 22;

std::size_t arc_slot(Arc arc) {
  return arc.constraint * 2 + (arc.side == Side::kSecond ? 1 : 0);
}

}  // namespace

SolverState::SolverState(const NetworkBin& net, const InterpRegistry& reg)
    : stats_(std::make_shared<SolveStats>()) {
  auto compiled = std::make_shared<Compiled>();
  compiled->source = &net;
  for (const auto& v : net.vars) {
    compiled->index.emplace(v, compiled->initial.size());
    auto it = net.doms.find(v);
    compiled->initial.push_back(it == net.doms.end() ? std::vector<EncValue>{}
                                                     : it->second);
  }
  compiled->incident.resize(net.vars.size());

  for (std::size_t ci = 0; ci < net.csts.size(); ++ci) {
    const auto& c = net.csts[ci];
    auto [x, y] = vars_of(c);
    auto ix = compiled->index.find(x);
    auto iy = compiled->index.find(y);
    if (ix == compiled->index.end() || iy == compiled->index.end()) {
      throw ContractError(to_string(c) + " uses an undeclared variable");
    }
    Compiled::Constraint cc;
    cc.first = ix->second;
    cc.second = iy->second;
    const auto& dx = compiled->initial[cc.first];
    const auto& dy = compiled->initial[cc.second];
    for (const auto& v : dy) cc.second_keys.push_back(raw_of(v, "solver"));
    if (const auto* b = std::get_if<BasicConstraint>(&c)) {
      cc.basic = &basic_interp(*b, reg);
      for (const auto& v : dx) cc.first_keys.push_back(raw_of(v, "solver"));
      if (dx.size() * dy.size() <= kMatrixLimit) {
        cc.use_matrix = true;
        cc.matrix.resize(dx.size() * dy.size());
        for (std::size_t i = 0; i < dx.size(); ++i) {
          for (std::size_t j = 0; j < dy.size(); ++j) {
            std::array<Value, 2> vals{cc.first_keys[i], cc.second_keys[j]};
            cc.matrix[i * dy.size() + j] = cc.basic->holds(vals) ? 1 : 0;
          }
        }
      }
    } else {
      const auto& p = std::get<Proj>(c);
      for (const auto& v : dx) {
        cc.first_keys.push_back(proj_tuple(p.idx, tuple_of(v, p.arity, "solver")));
      }
    }
    compiled->csts.push_back(std::move(cc));
    compiled->incident[ix->second].push_back(ci);
    compiled->incident[iy->second].push_back(ci);
  }

  current_.resize(compiled->initial.size());
  for (std::size_t v = 0; v < current_.size(); ++v) {
    current_[v].resize(compiled->initial[v].size());
    for (std::uint32_t i = 0; i < current_[v].size(); ++i) current_[v][i] = i;
  }
  queued_.assign(compiled->csts.size() * 2, 0);
  net_ = std::move(compiled);
  enqueue_all();
}

const NetworkBin& SolverState::network() const { return *net_->source; }
std::size_t SolverState::var_count() const { return current_.size(); }
std::size_t SolverState::constraint_count() const { return net_->csts.size(); }

std::size_t SolverState::var_index(const EncVariable& v) const {
  auto it = net_->index.find(v);
  if (it == net_->index.end()) {
    throw ContractError("unknown variable " + to_string(v));
  }
  return it->second;
}

std::vector<EncValue> SolverState::domain(std::size_t var) const {
  std::vector<EncValue> out;
  out.reserve(current_[var].size());
  for (auto i : current_[var]) out.push_back(net_->initial[var][i]);
  return out;
}

std::vector<EncValue> SolverState::domain(const EncVariable& v) const {
  return domain(var_index(v));
}

void SolverState::restrict_domain(const EncVariable& v,
                                  const std::vector<EncValue>& keep) {
  std::size_t var = var_index(v);
  auto& cur = current_[var];
  std::erase_if(cur, [&](std::uint32_t i) {
    return std::find(keep.begin(), keep.end(), net_->initial[var][i]) ==
           keep.end();
  });
}

void SolverState::assign(std::size_t var, std::size_t pos) {
  auto value = current_[var].at(pos);
  current_[var].assign(1, value);
}

void SolverState::enqueue(Arc arc) {
  auto slot = arc_slot(arc);
  if (queued_.at(slot)) return;
  queued_[slot] = 1;
  worklist_.push_back(arc);
}

void SolverState::enqueue_all() {
  for (std::size_t c = 0; c < net_->csts.size(); ++c) {
    enqueue({c, Side::kFirst});
    enqueue({c, Side::kSecond});
  }
}

void SolverState::enqueue_neighbours(std::size_t var) {
  for (std::size_t c : net_->incident[var]) {
    const auto& cc = net_->csts[c];
    enqueue({c, cc.first == var ? Side::kSecond : Side::kFirst});
  }
}

void SolverState::clear_worklist() {
  worklist_.clear();
  std::fill(queued_.begin(), queued_.end(), 0);
}

std::size_t SolverState::revised_var(Arc arc) const {
  const auto& cc = net_->csts.at(arc.constraint);
  return arc.side == Side::kFirst ? cc.first : cc.second;
}

std::size_t SolverState::support_var(Arc arc) const {
  const auto& cc = net_->csts.at(arc.constraint);
  return arc.side == Side::kFirst ? cc.second : cc.first;
}

bool SolverState::check(std::size_t c, std::uint32_t first,
                        std::uint32_t second) const {
  const auto& cc = net_->csts[c];
  if (!cc.basic) return cc.first_keys[first] == cc.second_keys[second];
  if (cc.use_matrix) {
    return cc.matrix[first * cc.second_keys.size() + second] != 0;
  }
  std::array<Value, 2> vals{cc.first_keys[first], cc.second_keys[second]};
  return cc.basic->holds(vals);
}

AssignmentBin SolverState::assignment() const {
  AssignmentBin out;
  for (std::size_t v = 0; v < current_.size(); ++v) {
    if (current_[v].size() != 1) {
      throw ContractError("assignment requested from a non-singleton state");
    }
    out.emplace(network().vars[v], net_->initial[v][current_[v][0]]);
  }
  return out;
}

ReviseResult revise(SolverState& state, Arc arc) {
  ++state.stats().revisions;
  const std::size_t target = state.revised_var(arc);
  const std::size_t other = state.support_var(arc);
  auto& dom = state.current_[target];
  const auto& support = state.current_[other];
  const bool first = arc.side == Side::kFirst;

  std::size_t before = dom.size();
  std::erase_if(dom, [&](std::uint32_t a) {
    for (std::uint32_t b : support) {
      if (first ? state.check(arc.constraint, a, b)
                : state.check(arc.constraint, b, a)) {
        return false;
      }
    }
    return true;
  });
  ReviseResult r;
  r.changed = dom.size() != before;
  r.emptied = dom.empty();
  state.stats().values_removed += before - dom.size();
  return r;
}

bool propagate_ac3(SolverState& state) {
  while (!state.worklist_.empty()) {
    Arc arc = state.worklist_.front();
    state.worklist_.pop_front();
    state.queued_[arc_slot(arc)] = 0;
    ++state.stats().arcs_processed;

    auto r = revise(state, arc);
    if (r.emptied) {
      state.clear_worklist();
      return false;
    }
    if (!r.changed) continue;
    const std::size_t changed = state.revised_var(arc);
    for (std::size_t c : state.net_->incident[changed]) {
      if (c == arc.constraint) continue;
      const auto& cc = state.net_->csts[c];
      state.enqueue({c, cc.first == changed ? Side::kSecond : Side::kFirst});
    }
  }
  return true;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kSat: return "SAT";
    case Status::kUnsat: return "UNSAT";
    case Status::kUnknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

enum class Outcome { kFound, kExhausted, kAborted };

class Search {
 public:
  Search(const SolveLimits& limits) : limits_(limits) {}

  Outcome run(SolverState state, AssignmentBin& out) {
    auto& stats = state.stats();
    if (limits_.max_nodes && stats.nodes >= *limits_.max_nodes) {
      return Outcome::kAborted;
    }
    ++stats.nodes;
    if (!propagate_ac3(state)) return Outcome::kExhausted;

    std::optional<std::size_t> branch;
    for (std::size_t v = 0; v < state.var_count(); ++v) {
      std::size_t size = state.domain_size(v);
      if (size == 0) return Outcome::kExhausted;
      if (size > 1 && (!branch || size < state.domain_size(*branch))) {
        branch = v;
      }
    }
    if (!branch) {
      out = state.assignment();
      return Outcome::kFound;
    }
    for (std::size_t pos = 0; pos < state.domain_size(*branch); ++pos) {
      SolverState child = state;
      child.clear_worklist();
      child.assign(*branch, pos);
      child.enqueue_neighbours(*branch);
      auto outcome = run(std::move(child), out);
      if (outcome != Outcome::kExhausted) return outcome;
    }
    return Outcome::kExhausted;
  }

 private:
  const SolveLimits& limits_;
};

}  // namespace

BinResult solve_csp(const NetworkBin& net, const InterpRegistry& reg,
                    const SolveLimits& limits) {
  auto start = std::chrono::steady_clock::now();
  auto report = check_network_inv(net, reg);
  if (!report.ok()) {
    throw ContractError("solve_csp on an ill-formed network: " +
                        report.violations.front().message);
  }
  SolverState root(net, reg);
  BinResult result;
  AssignmentBin found;
  switch (Search(limits).run(root, found)) {
    case Outcome::kFound:
      result.status = Status::kSat;
      result.assignment = std::move(found);
      break;
    case Outcome::kExhausted: result.status = Status::kUnsat; break;
    case Outcome::kAborted: result.status = Status::kUnknown; break;
  }
  result.stats = root.stats();
  result.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (result.status == Status::kSat &&
      !is_solution(result.assignment, net, reg)) {
    throw ContractError("solve_csp produced an assignment that is not a "
                        "solution");
  }
  return result;
}

}  // namespace hvsolve
