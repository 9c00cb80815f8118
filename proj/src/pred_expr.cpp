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

#include "hvsolve/pred_expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

namespace hvsolve {

namespace {

struct OpInfo {
  ExprOp op;
  const char* name;
  std::size_t min_args;
  std::size_t max_args;
  ExprType arg_type;
  ExprType result;
};

constexpr std::size_t kMany = std::numeric_limits<std::size_t>::max();

constexpr OpInfo kOps[] = {
    {ExprOp::kNeg, "neg", 1, 1, ExprType::kInt, ExprType::kInt},
    {ExprOp::kAbs, "abs", 1, 1, ExprType::kInt, ExprType::kInt},
    {ExprOp::kAdd, "add", 2, kMany, ExprType::kInt, ExprType::kInt},
    {ExprOp::kSub, "sub", 2, 2, ExprType::kInt, ExprType::kInt},
    {ExprOp::kMul, "mul", 2, kMany, ExprType::kInt, ExprType::kInt},
    {ExprOp::kDiv, "div", 2, 2, ExprType::kInt, ExprType::kInt},
    {ExprOp::kMod, "mod", 2, 2, ExprType::kInt, ExprType::kInt},
    {ExprOp::kMin, "min", 2, kMany, ExprType::kInt, ExprType::kInt},
    {ExprOp::kMax, "max", 2, kMany, ExprType::kInt, ExprType::kInt},
    {ExprOp::kEq, "eq", 2, 2, ExprType::kInt, ExprType::kBool},
    {ExprOp::kNe, "ne", 2, 2, ExprType::kInt, ExprType::kBool},
    {ExprOp::kGe, "ge", 2, 2, ExprType::kInt, ExprType::kBool},
    {ExprOp::kGt, "gt", 2, 2, ExprType::kInt, ExprType::kBool},
    {ExprOp::kLe, "le", 2, 2, ExprType::kInt, ExprType::kBool},
    {ExprOp::kLt, "lt", 2, 2, ExprType::kInt, ExprType::kBool},
    {ExprOp::kAnd, "and", 2, kMany, ExprType::kBool, ExprType::kBool},
    {ExprOp::kOr, "or", 2, kMany, ExprType::kBool, ExprType::kBool},
    {ExprOp::kNot, "not", 1, 1, ExprType::kBool, ExprType::kBool},
};

const OpInfo* info_by_op(ExprOp op) {
  for (const auto& i : kOps) {
    if (i.op == op) return &i;
  }
  return nullptr;
}

const OpInfo* info_by_name(std::string_view name) {
  for (const auto& i : kOps) {
    if (name == i.name) return &i;
  }
  return nullptr;
}

// Checked integer arithmetic; division truncates toward zero.
std::optional<Value> arith(ExprOp op, Value a, Value b) {
  Value r = 0;
  switch (op) {
    case ExprOp::kAdd:
      if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
      return r;
    case ExprOp::kSub:
      if (__builtin_sub_overflow(a, b, &r)) return std::nullopt;
      return r;
    case ExprOp::kMul:
      if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
      return r;
    case ExprOp::kDiv:
      if (b == 0 || (a == std::numeric_limits<Value>::min() && b == -1)) {
        return std::nullopt;
      }
      return a / b;
    case ExprOp::kMod:
      if (b == 0 || (a == std::numeric_limits<Value>::min() && b == -1)) {
        return std::nullopt;
      }
      return a % b;
    case ExprOp::kMin: return std::min(a, b);
    case ExprOp::kMax: return std::max(a, b);
    default: return std::nullopt;
  }
}

}  // namespace

PredExpr PredExpr::constant(Value v) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kConst;
  n->value = v;
  return PredExpr(std::move(n));
}

PredExpr PredExpr::param(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kParam;
  n->index = index;
  return PredExpr(std::move(n));
}

PredExpr PredExpr::apply(ExprOp op, std::vector<PredExpr> args) {
  const OpInfo* info = info_by_op(op);
  if (!info) throw ExprError(0, "not an operator");
  if (args.size() < info->min_args || args.size() > info->max_args) {
    throw ExprError(0, std::string(info->name) + " takes " +
                           std::to_string(info->min_args) +
                           (info->max_args == kMany ? " or more" : "") +
                           " arguments, got " + std::to_string(args.size()));
  }
  for (const auto& a : args) {
    if (a.type() != info->arg_type) {
      throw ExprError(0, std::string(info->name) + " expects " +
                             (info->arg_type == ExprType::kInt ? "integer"
                                                               : "boolean") +
                             " arguments");
    }
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return PredExpr(std::move(n));
}

ExprType PredExpr::type() const {
  if (op() == ExprOp::kConst || op() == ExprOp::kParam) return ExprType::kInt;
  return info_by_op(op())->result;
}

std::size_t PredExpr::param_count() const {
  if (op() == ExprOp::kParam) return index() + 1;
  std::size_t n = 0;
  for (const auto& a : args()) n = std::max(n, a.param_count());
  return n;
}

std::optional<Value> PredExpr::eval(std::span<const Value> params) const {
  switch (op()) {
    case ExprOp::kConst: return value();
    case ExprOp::kParam:
      if (index() >= params.size()) {
        throw ContractError("expression parameter X" +
                            std::to_string(index()) + " is unbound");
      }
      return params[index()];
    case ExprOp::kNeg: {
      auto a = args()[0].eval(params);
      if (!a || *a == std::numeric_limits<Value>::min()) return std::nullopt;
      return -*a;
    }
    case ExprOp::kAbs: {
      auto a = args()[0].eval(params);
      if (!a || *a == std::numeric_limits<Value>::min()) return std::nullopt;
      return *a < 0 ? -*a : *a;
    }
    case ExprOp::kNot: {
      auto a = args()[0].eval(params);
      if (!a) return std::nullopt;
      return *a ? 0 : 1;
    }
    case ExprOp::kAnd:
    case ExprOp::kOr: {
      // Short-circuit only on a decided operand; a failing operand before it
      // still fails the whole expression.
      const bool is_and = op() == ExprOp::kAnd;
      for (const auto& a : args()) {
        auto v = a.eval(params);
        if (!v) return std::nullopt;
        if (is_and && !*v) return 0;
        if (!is_and && *v) return 1;
      }
      return is_and ? 1 : 0;
    }
    case ExprOp::kEq:
    case ExprOp::kNe:
    case ExprOp::kGe:
    case ExprOp::kGt:
    case ExprOp::kLe:
    case ExprOp::kLt: {
      auto a = args()[0].eval(params);
      if (!a) return std::nullopt;
      auto b = args()[1].eval(params);
      if (!b) return std::nullopt;
      switch (op()) {
        case ExprOp::kEq: return *a == *b;
        case ExprOp::kNe: return *a != *b;
        case ExprOp::kGe: return *a >= *b;
        case ExprOp::kGt: return *a > *b;
        case ExprOp::kLe: return *a <= *b;
        default: return *a < *b;
      }
    }
    default: {
      auto acc = args()[0].eval(params);
      for (std::size_t i = 1; acc && i < args().size(); ++i) {
        auto b = args()[i].eval(params);
        if (!b) return std::nullopt;
        acc = arith(op(), *acc, *b);
      }
      return acc;
    }
  }
}

std::string PredExpr::to_string() const {
  switch (op()) {
    case ExprOp::kConst: return std::to_string(value());
    case ExprOp::kParam: return "X" + std::to_string(index());
    default: break;
  }
  std::string out = info_by_op(op())->name;
  out += "(";
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i) out += ",";
    out += args()[i].to_string();
  }
  out += ")";
  return out;
}

PredExpr PredExpr::substitute(const std::vector<Binding>& bindings) const {
  switch (op()) {
    case ExprOp::kConst: return *this;
    case ExprOp::kParam: {
      if (index() >= bindings.size()) {
        throw ContractError("substitute: parameter X" +
                            std::to_string(index()) + " has no binding");
      }
      const auto& b = bindings[index()];
      return b.is_param ? param(b.index) : constant(b.value);
    }
    default: break;
  }
  std::vector<PredExpr> out;
  for (const auto& a : args()) out.push_back(a.substitute(bindings));
  return apply(op(), std::move(out));
}

ParamResolver positional_params(std::size_t count) {
  return [count](std::string_view name) -> std::optional<std::size_t> {
    if (name.size() < 2 || name[0] != 'X') return std::nullopt;
    std::size_t index = 0;
    auto [ptr, ec] =
        std::from_chars(name.data() + 1, name.data() + name.size(), index);
    if (ec != std::errc() || ptr != name.data() + name.size()) {
      return std::nullopt;
    }
    if (index >= count) return std::nullopt;
    return index;
  };
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t& pos, const ParamResolver& params)
      : text_(text), pos_(pos), params_(params) {}

  PredExpr expr() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) throw ExprError(pos_, "expected an expression");
    char c = text_[pos_];
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      return number();
    }
    if (!is_ident_char(c)) {
      throw ExprError(pos_, std::string("unexpected character '") + c + "'");
    }
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      const OpInfo* info = info_by_name(name);
      if (!info) {
        throw ExprError(start, "unknown operator '" + std::string(name) + "'");
      }
      std::vector<PredExpr> args;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(expr());
          skip_space();
          if (pos_ >= text_.size()) throw ExprError(pos_, "missing ')'");
          if (text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (text_[pos_] == ')') {
            ++pos_;
            break;
          }
          throw ExprError(pos_, "expected ',' or ')'");
        }
      }
      try {
        return PredExpr::apply(info->op, std::move(args));
      } catch (const ExprError& e) {
        throw ExprError(start, e.what());
      }
    }
    if (name == "true") {
      return PredExpr::apply(ExprOp::kEq,
                             {PredExpr::constant(0), PredExpr::constant(0)});
    }
    if (name == "false") {
      return PredExpr::apply(ExprOp::kNe,
                             {PredExpr::constant(0), PredExpr::constant(0)});
    }
    auto index = params_(name);
    if (!index) {
      throw ExprError(start, "unknown parameter '" + std::string(name) + "'");
    }
    return PredExpr::param(*index);
  }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  PredExpr number() {
    std::size_t start = pos_;
    if (text_[pos_] == '+') ++pos_;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    Value v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) throw ExprError(start, "malformed integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    if (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      throw ExprError(start, "malformed integer");
    }
    return PredExpr::constant(v);
  }

  std::string_view text_;
  std::size_t& pos_;
  const ParamResolver& params_;
};

}  // namespace

PredExpr parse_pred_expr_prefix(std::string_view text, std::size_t& pos,
                                const ParamResolver& params) {
  return Parser(text, pos, params).expr();
}

PredExpr parse_pred_expr(std::string_view text, const ParamResolver& params) {
  std::size_t pos = 0;
  PredExpr e = parse_pred_expr_prefix(text, pos, params);
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  if (pos != text.size()) throw ExprError(pos, "trailing characters");
  return e;
}

Predicate compile_predicate(
    PredExpr expr, std::shared_ptr<std::atomic<std::uint64_t>> faults) {
  if (expr.type() != ExprType::kBool) {
    throw ExprError(0, "predicate expression must be boolean");
  }
  return [expr = std::move(expr),
          faults = std::move(faults)](std::span<const Value> values) {
    auto v = expr.eval(values);
    if (!v) {
      if (faults) faults->fetch_add(1, std::memory_order_relaxed);
      return false;
    }
    return *v != 0;
  };
}

}  // namespace hvsolve
