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

#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hvsolve/core.hpp"
#include "hvsolve/pipeline.hpp"

using namespace hvsolve;
using hvsolve::testing::six_var;
using hvsolve::testing::six_var_solution;

namespace {

bool has_clause(const WellFormedReport& r, NClause c) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const auto& v) { return v.clause == c; });
}

}  // namespace

TEST_CASE("domain normalization is sorted, duplicate free, order insensitive") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 500; ++round) {
    std::vector<Value> vals(rng() % 12);
    for (auto& v : vals) v = static_cast<Value>(rng() % 9) - 4;
    Domain d(vals);
    CHECK(std::is_sorted(d.begin(), d.end()));
    CHECK(std::adjacent_find(d.begin(), d.end()) == d.end());
    for (Value v : vals) CHECK(d.contains(v));
    auto shuffled = vals;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(Domain(shuffled) == d);
    CHECK(Domain(d.values()) == d);
  }
  CHECK(Domain::range(2, 4) == Domain{4, 3, 2, 3});
  CHECK(Domain::range(3, 2).empty());
}

TEST_CASE("interpretation construction faults") {
  CHECK_THROWS_AS(Interpretation::extension(2, {{0, 1}, {1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Interpretation::extension(2, {{0, 1}, {0, 1}}),
                  std::invalid_argument);
  auto ext = Interpretation::extension(3, {{0, 1, 0}});
  std::vector<Value> two{0, 1};
  CHECK_THROWS_AS(ext.holds(two), ContractError);

  InterpRegistry reg;
  reg.define("p", 3, ext);
  CHECK_THROWS_AS(reg.define("p", 3, ext), std::invalid_argument);
  CHECK_THROWS_AS(reg.define("q", 2, ext), std::invalid_argument);
  CHECK_THROWS_AS(reg.define_basic("b", ext), std::invalid_argument);
  CHECK(reg.find("p", 3) != nullptr);
  CHECK(reg.find("p", 4) == nullptr);
}

TEST_CASE("well-formedness of the six-variable example and trivial networks") {
  auto f = six_var();
  CHECK(check_network_inv_n(f.net, f.reg).ok());
  CHECK(check_network_inv_n(NetworkN{}, InterpRegistry{}).ok());

  auto bad = f;
  bad.reg.define("p", 2, Interpretation::extension(2, {{0, 1}}));
  bad.net.csts.push_back(NaryConstraint{"p", 2, {"x3", "x5"}});
  auto r = check_network_inv_n(bad.net, bad.reg);
  CHECK(has_clause(r, NClause::kNaryArity));
}

TEST_CASE("well-formedness clauses are each detected") {
  auto f = six_var();
  SUBCASE("undeclared constraint variable") {
    f.net.csts.push_back(BasicConstraint{"c5", "x3", "zz"});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg), NClause::kVariables));
  }
  SUBCASE("missing domain") {
    f.net.doms.erase(VarId("x3"));
    CHECK(has_clause(check_network_inv_n(f.net, f.reg), NClause::kVariables));
  }
  SUBCASE("extra domain key") {
    f.net.doms.emplace(VarId("x9"), Domain{0});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg), NClause::kVariables));
  }
  SUBCASE("unconstrained variable") {
    f.net.vars.emplace_back("x7");
    f.net.doms.emplace(VarId("x7"), Domain{0, 1});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg), NClause::kVariables));
  }
  SUBCASE("two constraints on one variable set") {
    f.net.csts.push_back(BasicConstraint{"c5", "x6", "x1"});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg),
                     NClause::kNormalization));
  }
  SUBCASE("repeated variable in a scope") {
    f.reg.define("d", 3, Interpretation::extension(3, {}));
    f.net.csts.push_back(NaryConstraint{"d", 3, {"x3", "x3", "x5"}});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg),
                     NClause::kDistinctScope));
  }
  SUBCASE("arity disagrees with the scope") {
    f.reg.define("d", 4, Interpretation::extension(4, {}));
    f.net.csts.push_back(NaryConstraint{"d", 4, {"x3", "x5", "x6"}});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg), NClause::kNaryArity));
  }
  SUBCASE("unresolved operator") {
    f.net.csts.push_back(NaryConstraint{"nope", 3, {"x3", "x5", "x6"}});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg), NClause::kUnresolved));
  }
  SUBCASE("unresolved basic") {
    f.net.csts.push_back(BasicConstraint{"nope", "x3", "x5"});
    CHECK(has_clause(check_network_inv_n(f.net, f.reg), NClause::kUnresolved));
  }
}

TEST_CASE("constraint evaluation on the six-variable example") {
  auto f = six_var();
  const auto& c1 = f.net.csts[0];
  CHECK(eval_constraint_n(c1, f.reg, {{"x1", 1}, {"x2", 0}, {"x6", 0}}));
  CHECK_FALSE(eval_constraint_n(c1, f.reg, {{"x1", 1}, {"x2", 1}, {"x6", 1}}));
  CHECK_THROWS_AS(eval_constraint_n(c1, f.reg, {{"x1", 1}, {"x2", 0}}),
                  ContractError);
  CHECK_THROWS_AS(
      eval_constraint_n(NaryConstraint{"nope", 3, {"x1", "x2", "x6"}}, f.reg,
                        {{"x1", 1}, {"x2", 0}, {"x6", 0}}),
      ContractError);

  InterpRegistry reg;
  reg.define("t", 3, Interpretation::extension(3, {{0, 1, 0}}));
  CHECK(eval_constraint_n(NaryConstraint{"t", 3, {"a", "b", "c"}}, reg,
                          {{"a", 0}, {"b", 1}, {"c", 0}}));
  CHECK_FALSE(eval_constraint_n(NaryConstraint{"t", 3, {"a", "b", "c"}}, reg,
                                {{"a", 0}, {"b", 1}, {"c", 1}}));
}

TEST_CASE("solution predicate") {
  auto f = six_var();
  CHECK(is_solution_n(six_var_solution(), f.net, f.reg));
  AssignmentN zeros;
  for (const auto& v : f.net.vars) zeros[v] = 0;
  CHECK_FALSE(is_solution_n(zeros, f.net, f.reg));
  CHECK(is_solution_n({}, NetworkN{}, InterpRegistry{}));

  auto partial = six_var_solution();
  partial.erase(VarId("x3"));
  CHECK_FALSE(is_solution_n(partial, f.net, f.reg));
  auto outside = six_var_solution();
  outside[VarId("x3")] = 7;
  CHECK_FALSE(is_solution_n(outside, f.net, f.reg));
  auto extra = six_var_solution();
  extra[VarId("zz")] = 0;
  CHECK_FALSE(is_solution_n(extra, f.net, f.reg));
}

TEST_CASE("evaluation depends only on the scope") {
  auto f = six_var();
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    AssignmentN a;
    for (const auto& v : f.net.vars) a[v] = static_cast<Value>(rng() % 2);
    for (const auto& c : f.net.csts) {
      bool before = eval_constraint_n(c, f.reg, a);
      auto scope = scope_of(c);
      AssignmentN b = a;
      for (auto& [v, x] : b) {
        if (std::find(scope.begin(), scope.end(), v) == scope.end()) {
          x = static_cast<Value>(rng() % 5) - 2;
        }
      }
      b[VarId("unrelated")] = 42;
      CHECK(eval_constraint_n(c, f.reg, b) == before);
    }
  }
}

TEST_CASE("extension and membership intention agree") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    const std::size_t k = 2 + rng() % 3;
    std::vector<std::vector<Value>> rows;
    std::vector<Value> row(k, 0);
    // Random subset of {0,1,2}^k.
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == k) {
        if (rng() % 2) rows.push_back(row);
        return;
      }
      for (Value v = 0; v < 3; ++v) {
        row[i] = v;
        go(i + 1);
      }
    };
    go(0);
    auto table = rows;
    InterpRegistry reg;
    reg.define("e", k, Interpretation::extension(k, rows));
    reg.define("i", k,
               Interpretation::intention(k, [table](std::span<const Value> t) {
                 std::vector<Value> v(t.begin(), t.end());
                 return std::find(table.begin(), table.end(), v) !=
                        table.end();
               }));
    std::vector<VarId> scope;
    for (std::size_t i = 0; i < k; ++i) {
      scope.emplace_back("y" + std::to_string(i));
    }
    std::vector<Value> t(k, 0);
    std::function<void(std::size_t)> all = [&](std::size_t i) {
      if (i == k) {
        AssignmentN a;
        for (std::size_t j = 0; j < k; ++j) a[scope[j]] = t[j];
        CHECK(eval_constraint_n(NaryConstraint{"e", k, scope}, reg, a) ==
              eval_constraint_n(NaryConstraint{"i", k, scope}, reg, a));
        return;
      }
      for (Value v = 0; v < 3; ++v) {
        t[i] = v;
        all(i + 1);
      }
    };
    all(0);
  }
}

TEST_CASE("a well-formed network never fails a domain lookup") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    auto g = gen_random_network(cfg);
    REQUIRE(check_network_inv_n(g.net, g.reg).ok());
    for (const auto& c : g.net.csts) {
      for (const auto& v : scope_of(c)) CHECK(g.net.doms.count(v) == 1);
    }
  }
}
