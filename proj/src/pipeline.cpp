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

#include "hvsolve/pipeline.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "hvsolve/pred_expr.hpp"

namespace hvsolve {

namespace {

std::string first_violation(const WellFormedReport& report) {
  if (report.ok()) return "network is well formed";
  const auto& v = report.violations.front();
  return std::string("ill-formed network [") + clause_name(v.clause) +
         "]: " + v.message;
}

}  // namespace

IllFormedNetwork::IllFormedNetwork(WellFormedReport report)
    : std::runtime_error(first_violation(report)),
      report_(std::move(report)) {}

NResult solve_n(const NetworkN& net, const InterpRegistry& reg,
                const SolveLimits& limits) {
  auto report = check_network_inv_n(net, reg);
  if (!report.ok()) throw IllFormedNetwork(std::move(report));

  auto bin = translate_csp_n(net, reg);
  if (!bin) {
    throw ContractError("translation failed on a well-formed network");
  }
  auto r = solve_csp(*bin, reg, limits);

  NResult out;
  out.status = r.status;
  out.stats = r.stats;
  out.hidden_vars = bin->vars.size() - net.vars.size();
  if (r.status == Status::kSat) {
    out.assignment = translate_sol_back(r.assignment, net.vars);
    if (!is_solution_n(out.assignment, net, reg)) {
      throw ContractError("decoded assignment is not a solution");
    }
  }
  return out;
}

std::vector<AssignmentN> brute_force_solutions(const NetworkN& net,
                                               const InterpRegistry& reg,
                                               std::uint64_t cap) {
  std::vector<const Domain*> doms;
  std::uint64_t product = 1;
  for (const auto& v : net.vars) {
    auto it = net.doms.find(v);
    if (it == net.doms.end()) return {};
    doms.push_back(&it->second);
    std::uint64_t size = it->second.size();
    if (size == 0) return {};
    if (product > cap / size) {
      throw OracleRefused("oracle refused: more than " + std::to_string(cap) +
                          " total assignments");
    }
    product *= size;
  }
  if (product > cap) {
    throw OracleRefused("oracle refused: more than " + std::to_string(cap) +
                        " total assignments");
  }

  std::vector<AssignmentN> out;
  const std::size_t n = net.vars.size();
  std::vector<std::size_t> pos(n, 0);
  AssignmentN a;
  for (std::size_t i = 0; i < n; ++i) a[net.vars[i]] = doms[i]->values()[0];
  while (true) {
    if (is_solution_n(a, net, reg)) out.push_back(a);
    std::size_t i = n;
    while (true) {
      if (i == 0) return out;
      --i;
      if (++pos[i] < doms[i]->size()) {
        a[net.vars[i]] = doms[i]->values()[pos[i]];
        break;
      }
      pos[i] = 0;
      a[net.vars[i]] = doms[i]->values()[0];
    }
  }
}

std::vector<AssignmentBin> brute_force_solutions_bin(const NetworkBin& net,
                                                     const InterpRegistry& reg,
                                                     std::uint64_t cap) {
  const std::size_t n = net.vars.size();
  std::map<EncVariable, std::size_t> index;
  std::vector<const std::vector<EncValue>*> doms;
  for (std::size_t i = 0; i < n; ++i) {
    index.emplace(net.vars[i], i);
    auto it = net.doms.find(net.vars[i]);
    if (it == net.doms.end() || it->second.empty()) return {};
    doms.push_back(&it->second);
  }

  // Constraints checked right after the later of their two variables is set.
  struct Check {
    std::size_t constraint;
    std::size_t x;
    std::size_t y;
  };
  std::vector<std::vector<Check>> checks(n);
  for (std::size_t c = 0; c < net.csts.size(); ++c) {
    auto [x, y] = vars_of(net.csts[c]);
    auto ix = index.find(x);
    auto iy = index.find(y);
    if (ix == index.end() || iy == index.end()) return {};
    checks[std::max(ix->second, iy->second)].push_back(
        {c, ix->second, iy->second});
  }

  std::vector<AssignmentBin> out;
  std::vector<std::size_t> pos(n, 0);
  std::uint64_t visited = 0;

  auto consistent = [&](std::size_t depth) {
    for (const auto& ch : checks[depth]) {
      if (!interp_binary(net.csts[ch.constraint], (*doms[ch.x])[pos[ch.x]],
                         (*doms[ch.y])[pos[ch.y]], reg)) {
        return false;
      }
    }
    return true;
  };
  auto emit = [&] {
    AssignmentBin a;
    for (std::size_t i = 0; i < n; ++i) a.emplace(net.vars[i], (*doms[i])[pos[i]]);
    out.push_back(std::move(a));
  };

  if (n == 0) {
    emit();
    return out;
  }
  // Iterative depth-first enumeration; pos[depth] is the value being tried.
  std::size_t depth = 0;
  pos[0] = 0;
  while (true) {
    if (++visited > cap) {
      throw OracleRefused("oracle refused: more than " + std::to_string(cap) +
                          " partial assignments visited");
    }
    bool advance = consistent(depth);
    if (advance && depth + 1 == n) {
      emit();
      advance = false;
    }
    if (advance) {
      ++depth;
      pos[depth] = 0;
      continue;
    }
    // Next value at this depth, backing up as needed.
    while (++pos[depth] == doms[depth]->size()) {
      if (depth == 0) return out;
      --depth;
    }
  }
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi]. Modulo reduction keeps the stream identical across
  // standard library implementations.
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

void require(const SizeRange& r, const char* what) {
  if (r.lo > r.hi) {
    throw std::invalid_argument(std::string("empty ") + what + " range");
  }
}

std::vector<std::vector<Value>> product_rows(
    const std::vector<const Domain*>& doms) {
  std::vector<std::vector<Value>> rows{{}};
  for (const Domain* d : doms) {
    std::vector<std::vector<Value>> next;
    for (const auto& r : rows) {
      for (Value v : *d) {
        auto row = r;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    }
    rows = std::move(next);
  }
  return rows;
}

enum class Cmp { kEq, kNe, kGe, kLe };

struct Linear {
  std::vector<Value> coeffs;
  Cmp cmp = Cmp::kEq;
  Value rhs = 0;

  Value lhs(const std::vector<Value>& row) const {
    Value s = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * row[i];
    return s;
  }

  PredExpr expr() const {
    std::vector<PredExpr> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      auto x = PredExpr::param(i);
      if (coeffs[i] == 1) {
        terms.push_back(x);
      } else if (coeffs[i] == -1) {
        terms.push_back(PredExpr::apply(ExprOp::kNeg, {x}));
      } else {
        terms.push_back(
            PredExpr::apply(ExprOp::kMul, {PredExpr::constant(coeffs[i]), x}));
      }
    }
    auto sum = PredExpr::apply(ExprOp::kAdd, std::move(terms));
    ExprOp op = cmp == Cmp::kEq   ? ExprOp::kEq
                : cmp == Cmp::kNe ? ExprOp::kNe
                : cmp == Cmp::kGe ? ExprOp::kGe
                                  : ExprOp::kLe;
    return PredExpr::apply(op, {sum, PredExpr::constant(rhs)});
  }
};

struct Draft {
  std::vector<VarId> scope;
  bool extension = false;
  Linear linear;
  std::vector<std::vector<Value>> rows;
};

}  // namespace

GeneratedNetwork gen_random_network(const GenConfig& cfg) {
  require(cfg.vars, "variable count");
  require(cfg.domain_size, "domain size");
  require(cfg.constraints, "constraint count");
  require(cfg.arity, "arity");
  if (cfg.arity.lo < 2) throw std::invalid_argument("arity must be >= 2");

  Rng rng(cfg.seed);
  const std::size_t n = rng.between(cfg.vars.lo, cfg.vars.hi);
  std::vector<VarId> vars;
  std::map<VarId, Domain> doms;
  for (std::size_t i = 0; i < n; ++i) {
    VarId v{"v" + std::to_string(i + 1)};
    std::size_t size = rng.between(cfg.domain_size.lo, cfg.domain_size.hi);
    std::size_t span = std::max(cfg.value_span, size);
    std::vector<Value> pool(span);
    for (std::size_t j = 0; j < span; ++j) pool[j] = static_cast<Value>(j);
    // Partial Fisher-Yates for a uniform subset.
    for (std::size_t j = 0; j < size; ++j) {
      std::swap(pool[j], pool[rng.between(j, span - 1)]);
    }
    pool.resize(size);
    vars.push_back(v);
    doms.emplace(v, Domain(std::move(pool)));
  }

  const std::size_t m = rng.between(cfg.constraints.lo, cfg.constraints.hi);
  std::set<std::set<VarId>> used_scopes;
  std::vector<Draft> drafts;
  for (std::size_t i = 0; i < m && n >= 2; ++i) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::size_t k =
          rng.between(cfg.arity.lo, std::max(cfg.arity.lo, cfg.arity.hi));
      if (k > n) k = n;
      std::vector<VarId> pool = vars;
      for (std::size_t j = 0; j < k; ++j) {
        std::swap(pool[j], pool[rng.between(j, n - 1)]);
      }
      pool.resize(k);
      std::set<VarId> key(pool.begin(), pool.end());
      if (used_scopes.count(key)) continue;
      used_scopes.insert(key);

      Draft d;
      d.scope = std::move(pool);
      std::vector<const Domain*> sdoms;
      for (const auto& v : d.scope) sdoms.push_back(&doms.at(v));
      auto rows = product_rows(sdoms);
      d.extension = rng.chance(cfg.extensional_fraction);
      if (d.extension) {
        for (auto& r : rows) {
          if (rng.chance(0.5)) d.rows.push_back(std::move(r));
        }
      } else {
        static constexpr Value kCoeffs[] = {-2, -1, 1, 2};
        for (std::size_t j = 0; j < k; ++j) {
          d.linear.coeffs.push_back(kCoeffs[rng.between(0, 3)]);
        }
        d.linear.cmp = static_cast<Cmp>(rng.between(0, 3));
        d.linear.rhs = rows.empty()
                           ? 0
                           : d.linear.lhs(rows[rng.between(0, rows.size() - 1)]);
      }
      drafts.push_back(std::move(d));
      break;
    }
  }

  if (rng.chance(cfg.tight_fraction)) {
    for (auto it = drafts.rbegin(); it != drafts.rend(); ++it) {
      if (it->extension) continue;
      std::vector<const Domain*> sdoms;
      for (const auto& v : it->scope) sdoms.push_back(&doms.at(v));
      auto rows = product_rows(sdoms);
      if (rows.empty()) break;
      Value lo = it->linear.lhs(rows[0]);
      Value hi = lo;
      for (const auto& r : rows) {
        lo = std::min(lo, it->linear.lhs(r));
        hi = std::max(hi, it->linear.lhs(r));
      }
      it->linear.cmp = Cmp::kEq;
      it->linear.rhs = rng.chance(0.5) ? lo : hi;
      break;
    }
  }

  GeneratedNetwork out;
  std::set<VarId> covered;
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    auto& d = drafts[i];
    const std::size_t k = d.scope.size();
    covered.insert(d.scope.begin(), d.scope.end());
    Interpretation interp = [&] {
      if (d.extension) return Interpretation::extension(k, std::move(d.rows));
      PredExpr e = d.linear.expr();
      return Interpretation::intention(k, compile_predicate(e), e.to_string());
    }();
    if (k == 2) {
      BasicId id{"b" + std::to_string(i + 1)};
      out.reg.define_basic(id, interp);
      out.net.csts.push_back(BasicConstraint{id, d.scope[0], d.scope[1]});
    } else {
      OpId op{(d.extension ? "t" : "p") + std::to_string(i + 1)};
      out.reg.define(op, k, interp);
      out.net.csts.push_back(NaryConstraint{op, k, d.scope});
    }
  }
  for (const auto& v : vars) {
    if (!covered.count(v)) continue;
    out.net.vars.push_back(v);
    out.net.doms.emplace(v, doms.at(v));
  }
  return out;
}

}  // namespace hvsolve
