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
// Functional (prefix) predicate expressions, e.g. "eq(add(X0,X1),X2)".

#ifndef HVSOLVE_PRED_EXPR_HPP_
#define HVSOLVE_PRED_EXPR_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hvsolve/core.hpp"

namespace hvsolve {

enum class ExprOp {
  kConst, kParam,
  // integer -> integer
  kNeg, kAbs, kAdd, kSub, kMul, kDiv, kMod, kMin, kMax,
  // integer x integer -> boolean
  kEq, kNe, kGe, kGt, kLe, kLt,
  // boolean -> boolean
  kAnd, kOr, kNot,
};

enum class ExprType { kInt, kBool };

class ExprError : public std::runtime_error {
 public:
  ExprError(std::size_t column, const std::string& msg)
      : std::runtime_error(msg), column_(column) {}
  // 0-based offset into the parsed text.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class PredExpr {
 public:
  static PredExpr constant(Value v);
  static PredExpr param(std::size_t index);
  // Throws ExprError on an arity or typing mistake.
  static PredExpr apply(ExprOp op, std::vector<PredExpr> args);

  ExprOp op() const { return node_->op; }
  ExprType type() const;
  Value value() const { return node_->value; }
  std::size_t index() const { return node_->index; }
  const std::vector<PredExpr>& args() const { return node_->args; }

  // Largest parameter index + 1.
  std::size_t param_count() const;

  // Absent when evaluation divides by zero or overflows. Booleans are 0/1.
  std::optional<Value> eval(std::span<const Value> params) const;

  // Prefix syntax with parameters printed as X<i>.
  std::string to_string() const;

  struct Binding {
    bool is_param = false;
    std::size_t index = 0;
    Value value = 0;
  };
  // Replaces parameter i with bindings[i].
  PredExpr substitute(const std::vector<Binding>& bindings) const;

 private:
  struct Node {
    ExprOp op = ExprOp::kConst;
    Value value = 0;
    std::size_t index = 0;
    std::vector<PredExpr> args;
  };
  explicit PredExpr(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Resolves an identifier to a parameter index, or nullopt when unknown.
using ParamResolver =
    std::function<std::optional<std::size_t>(std::string_view)>;

// Resolver for the positional names X0, X1, ..., X<count-1>.
ParamResolver positional_params(std::size_t count);

// Parses a prefix expression; whitespace between tokens is ignored.
PredExpr parse_pred_expr(std::string_view text, const ParamResolver& params);

// Parses the expression starting at `pos`, leaving `pos` just past it.
PredExpr parse_pred_expr_prefix(std::string_view text, std::size_t& pos,
                                const ParamResolver& params);

// Wraps a boolean expression as a constraint predicate of the given arity.
// Failed evaluations count as false and bump `faults` when provided.
Predicate compile_predicate(PredExpr expr,
                            std::shared_ptr<std::atomic<std::uint64_t>> faults =
                                nullptr);

}  // namespace hvsolve

#endif  // HVSOLVE_PRED_EXPR_HPP_
