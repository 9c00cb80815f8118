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

#include <limits>
#include <random>

#include "doctest.h"
#include "hvsolve/pred_expr.hpp"

using namespace hvsolve;

namespace {

std::optional<Value> eval(const std::string& text, std::vector<Value> ps) {
  return parse_pred_expr(text, positional_params(ps.size())).eval(ps);
}

std::size_t error_column(const std::string& text, std::size_t params) {
  try {
    parse_pred_expr(text, positional_params(params));
  } catch (const ExprError& e) {
    return e.column();
  }
  FAIL("no error for " << text);
  return 0;
}

PredExpr random_int(std::mt19937_64& rng, int depth, std::size_t params) {
  if (depth == 0 || rng() % 4 == 0) {
    if (rng() % 2) return PredExpr::param(rng() % params);
    return PredExpr::constant(static_cast<Value>(rng() % 11) - 5);
  }
  static const ExprOp unary[] = {ExprOp::kNeg, ExprOp::kAbs};
  static const ExprOp binary[] = {ExprOp::kAdd, ExprOp::kSub, ExprOp::kMul,
                                  ExprOp::kDiv, ExprOp::kMod, ExprOp::kMin,
                                  ExprOp::kMax};
  if (rng() % 4 == 0) {
    return PredExpr::apply(unary[rng() % 2],
                           {random_int(rng, depth - 1, params)});
  }
  return PredExpr::apply(binary[rng() % 7],
                         {random_int(rng, depth - 1, params),
                          random_int(rng, depth - 1, params)});
}

PredExpr random_bool(std::mt19937_64& rng, int depth, std::size_t params) {
  static const ExprOp cmp[] = {ExprOp::kEq, ExprOp::kNe, ExprOp::kGe,
                               ExprOp::kGt, ExprOp::kLe, ExprOp::kLt};
  if (depth == 0 || rng() % 3 != 0) {
    return PredExpr::apply(cmp[rng() % 6], {random_int(rng, depth, params),
                                            random_int(rng, depth, params)});
  }
  switch (rng() % 3) {
    case 0:
      return PredExpr::apply(ExprOp::kNot,
                             {random_bool(rng, depth - 1, params)});
    case 1:
      return PredExpr::apply(ExprOp::kAnd,
                             {random_bool(rng, depth - 1, params),
                              random_bool(rng, depth - 1, params)});
    default:
      return PredExpr::apply(ExprOp::kOr,
                             {random_bool(rng, depth - 1, params),
                              random_bool(rng, depth - 1, params)});
  }
}

}  // namespace

TEST_CASE("evaluation of the supported operators") {
  CHECK(eval("eq(add(X0,X1),X2)", {1, 2, 3}) == 1);
  CHECK(eval("eq(add(X0,X1),X2)", {1, 2, 4}) == 0);
  CHECK(eval("add(X0,X1,X2,X3)", {1, 2, 3, 4}) == 10);
  CHECK(eval("mul(2,X0,X1)", {3, 4}) == 24);
  CHECK(eval("min(X0,X1,X2)", {5, -2, 7}) == -2);
  CHECK(eval("max(X0,X1,X2)", {5, -2, 7}) == 7);
  CHECK(eval("neg(X0)", {5}) == -5);
  CHECK(eval("abs(sub(X0,X1))", {2, 9}) == 7);
  CHECK(eval("div(X0,X1)", {-7, 2}) == -3);
  CHECK(eval("mod(X0,X1)", {-7, 2}) == -1);
  CHECK(eval("and(ge(X0,1),lt(X0,3),ne(X0,2))", {1}) == 1);
  CHECK(eval("or(gt(X0,1),le(X0,-1))", {0}) == 0);
  CHECK(eval("not(true)", {}) == 0);
  CHECK(eval("or(false,true)", {}) == 1);
  CHECK(eval(" eq ( X0 , -3 ) ", {-3}) == 1);
}

TEST_CASE("failed evaluations are absent and counted") {
  CHECK_FALSE(eval("div(X0,X1)", {1, 0}).has_value());
  CHECK_FALSE(eval("mod(X0,X1)", {1, 0}).has_value());
  const Value big = std::numeric_limits<Value>::max();
  CHECK_FALSE(eval("add(X0,1)", {big}).has_value());
  CHECK_FALSE(eval("mul(X0,2)", {big}).has_value());
  CHECK_FALSE(eval("neg(X0)", {std::numeric_limits<Value>::min()}).has_value());
  CHECK_FALSE(eval("div(X0,-1)", {std::numeric_limits<Value>::min()})
                  .has_value());

  auto faults = std::make_shared<std::atomic<std::uint64_t>>(0);
  auto pred = compile_predicate(
      parse_pred_expr("eq(div(X0,X1),1)", positional_params(2)), faults);
  std::vector<Value> ok{2, 2}, zero{2, 0};
  CHECK(pred(ok));
  CHECK_FALSE(pred(zero));
  CHECK(faults->load() == 1);
  CHECK_THROWS_AS(
      compile_predicate(parse_pred_expr("add(X0,1)", positional_params(1))),
      ExprError);
}

TEST_CASE("x + y = z holds exactly on matching triples") {
  auto pred = compile_predicate(
      parse_pred_expr("eq(add(X0,X1),X2)", positional_params(3)));
  int count = 0;
  for (Value x = 0; x < 3; ++x) {
    for (Value y = 0; y < 3; ++y) {
      for (Value z = 0; z < 3; ++z) {
        std::vector<Value> v{x, y, z};
        CHECK(pred(v) == (x + y == z));
        count += pred(v);
      }
    }
  }
  CHECK(count == 6);
}

TEST_CASE("syntax and typing errors carry columns") {
  CHECK(error_column("eq(add(X0,X1) X2)", 3) == 14);
  CHECK(error_column("foo(X0)", 1) == 0);
  CHECK_THROWS_AS(parse_pred_expr("neg(X0,X1)", positional_params(2)),
                  ExprError);
  CHECK_THROWS_AS(parse_pred_expr("add(X0)", positional_params(1)),
                  ExprError);
  CHECK_THROWS_AS(parse_pred_expr("add(eq(X0,X1),1)", positional_params(2)),
                  ExprError);
  CHECK_THROWS_AS(parse_pred_expr("and(X0,X1)", positional_params(2)),
                  ExprError);
  CHECK_THROWS_AS(parse_pred_expr("eq(X0,X5)", positional_params(2)),
                  ExprError);
  CHECK_THROWS_AS(parse_pred_expr("eq(X0,1) x", positional_params(1)),
                  ExprError);
  CHECK_THROWS_AS(parse_pred_expr("eq(X0,99999999999999999999)",
                                  positional_params(1)),
                  ExprError);
  CHECK_THROWS_AS(parse_pred_expr("", positional_params(1)), ExprError);

  std::size_t pos = 0;
  auto e = parse_pred_expr_prefix("ge(X0,X1) a b", pos, positional_params(2));
  CHECK(e.to_string() == "ge(X0,X1)");
  CHECK(pos == 9);
}

TEST_CASE("printing and reparsing preserves meaning") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t params = 1 + rng() % 3;
    PredExpr e = random_bool(rng, 3, params);
    std::string text = e.to_string();
    PredExpr back = parse_pred_expr(text, positional_params(params));
    CHECK(back.to_string() == text);
    for (int k = 0; k < 5; ++k) {
      std::vector<Value> ps(params);
      for (auto& p : ps) p = static_cast<Value>(rng() % 15) - 7;
      CHECK(back.eval(ps) == e.eval(ps));
    }
  }
}

TEST_CASE("substitution binds parameters and constants") {
  auto e = parse_pred_expr("eq(div(X2,X0),X1)", positional_params(3));
  auto s = e.substitute({{true, 0, 0}, {true, 1, 0}, {false, 0, 2}});
  CHECK(s.to_string() == "eq(div(2,X0),X1)");
  CHECK(s.param_count() == 2);
  std::vector<Value> v{1, 2};
  CHECK(s.eval(v) == 1);
  auto swapped = e.substitute({{true, 1, 0}, {true, 0, 0}, {true, 1, 0}});
  CHECK(swapped.to_string() == "eq(div(X1,X1),X0)");
}
