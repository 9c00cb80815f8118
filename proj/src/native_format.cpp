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

#include "hvsolve/native_format.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "hvsolve/pred_expr.hpp"

namespace hvsolve {

namespace {

bool is_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return true;
}

std::optional<Value> to_value(std::string_view s) {
  Value v = 0;
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

// Cursor over one statement, with whitespace-separated tokens.
class Line {
 public:
  Line(std::string_view text, std::size_t number)
      : text_(text), number_(number) {}

  std::size_t number() const { return number_; }
  std::string_view text() const { return text_; }
  std::size_t& pos() { return pos_; }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::string_view token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }
  std::string_view rest() {
    skip_space();
    auto out = text_.substr(pos_);
    pos_ = text_.size();
    return out;
  }

 private:
  std::string_view text_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

class NativeReader {
 public:
  ParsedNetwork read(std::string_view text) {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view raw = text.substr(start, end - start);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      statement(Line(raw, number));
      start = end + 1;
    }
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const Line& line, std::string_view what,
                         const std::string& msg) {
    throw ParseError(line.number(), std::string(what), msg);
  }

  void statement(Line line) {
    if (line.at_end()) return;
    auto keyword = line.token();
    if (keyword == "var") return var(line);
    if (keyword == "table") return table(line);
    if (keyword == "con") return con(line);
    fail(line, keyword, "unknown statement");
  }

  std::string_view fresh_name(Line& line, const char* kind,
                              const std::set<std::string, std::less<>>& seen) {
    auto name = line.token();
    if (name.empty()) fail(line, kind, "missing name");
    if (!is_name(name)) {
      fail(line, kind, "invalid name '" + std::string(name) + "'");
    }
    if (seen.count(name)) {
      fail(line, std::string(kind) + " " + std::string(name),
           "duplicate " + std::string(kind) + " name");
    }
    return name;
  }

  void var(Line& line) {
    auto name = fresh_name(line, "var", var_names_);
    std::string what = "var " + std::string(name);
    std::vector<Value> values;
    while (!line.at_end()) {
      auto tok = line.token();
      if (auto dots = tok.find(".."); dots != std::string_view::npos) {
        auto lo = to_value(tok.substr(0, dots));
        auto hi = to_value(tok.substr(dots + 2));
        if (!lo || !hi) {
          fail(line, what, "malformed range '" + std::string(tok) + "'");
        }
        if (*hi < *lo) {
          fail(line, what, "empty range '" + std::string(tok) + "'");
        }
        for (Value v = *lo;; ++v) {
          values.push_back(v);
          if (v == *hi) break;
        }
        continue;
      }
      auto v = to_value(tok);
      if (!v) fail(line, what, "non-integer value '" + std::string(tok) + "'");
      values.push_back(*v);
    }
    VarId id{std::string(name)};
    var_names_.emplace(name);
    out_.net.vars.push_back(id);
    out_.net.doms.emplace(id, Domain(std::move(values)));
  }

  void table(Line& line) {
    auto name = fresh_name(line, "table", table_names_);
    std::string what = "table " + std::string(name);
    auto arity_tok = line.token();
    auto arity = to_value(arity_tok);
    if (!arity || *arity < 1) {
      fail(line, what, "arity must be a positive integer");
    }
    std::vector<std::vector<Value>> rows;
    std::string_view body = line.rest();
    if (!body.empty()) {
      std::size_t start = 0;
      while (start <= body.size()) {
        std::size_t end = body.find(';', start);
        if (end == std::string_view::npos) end = body.size();
        Line row(body.substr(start, end - start), line.number());
        std::vector<Value> values;
        while (!row.at_end()) {
          auto tok = row.token();
          auto v = to_value(tok);
          if (!v) {
            fail(line, what, "non-integer value '" + std::string(tok) + "'");
          }
          values.push_back(*v);
        }
        if (values.size() != static_cast<std::size_t>(*arity)) {
          fail(line, what,
               "row " + std::to_string(rows.size()) + " has " +
                   std::to_string(values.size()) + " values, arity is " +
                   std::to_string(*arity));
        }
        rows.push_back(std::move(values));
        start = end + 1;
      }
    }
    try {
      tables_.emplace(std::string(name),
                      Interpretation::extension(
                          static_cast<std::size_t>(*arity), std::move(rows)));
    } catch (const std::invalid_argument& e) {
      fail(line, what, e.what());
    }
    table_names_.emplace(name);
  }

  void con(Line& line) {
    auto name = fresh_name(line, "con", con_names_);
    std::string what = "con " + std::string(name);
    auto kind = line.token();
    std::optional<Interpretation> interp;
    std::string table_name;
    std::optional<PredExpr> expr;
    if (kind == "ext") {
      table_name = std::string(line.token());
      auto it = tables_.find(table_name);
      if (it == tables_.end()) {
        fail(line, what, "unknown table '" + table_name + "'");
      }
      interp = it->second;
    } else if (kind == "int") {
      line.skip_space();
      try {
        // Parameter bounds are checked once the scope is known.
        expr = parse_pred_expr_prefix(line.text(), line.pos(),
                                      positional_params(SIZE_MAX));
      } catch (const ExprError& e) {
        fail(line, what,
             "column " + std::to_string(e.column() + 1) + ": " + e.what());
      }
      if (expr->type() != ExprType::kBool) {
        fail(line, what, "expression must be boolean");
      }
    } else {
      fail(line, what, "expected 'ext' or 'int'");
    }

    std::vector<VarId> scope;
    while (!line.at_end()) {
      auto tok = line.token();
      if (!var_names_.count(tok)) {
        fail(line, what, "unknown variable '" + std::string(tok) + "'");
      }
      scope.emplace_back(std::string(tok));
    }
    const std::size_t k = scope.size();
    if (k < 2) {
      fail(line, what, "unsupported: constraints need at least 2 variables");
    }
    if (expr) {
      if (expr->param_count() > k) {
        fail(line, what,
             "expression uses X" + std::to_string(expr->param_count() - 1) +
                 " but the scope has " + std::to_string(k) + " variables");
      }
      interp = Interpretation::intention(k, compile_predicate(*expr),
                                         expr->to_string());
    } else if (interp->arity() != k) {
      fail(line, what,
           "table '" + table_name + "' has arity " +
               std::to_string(interp->arity()) + " but the scope has " +
               std::to_string(k) + " variables");
    }

    try {
      if (k == 2) {
        BasicId id{std::string(name)};
        out_.reg.define_basic(id, *interp);
        out_.net.csts.push_back(BasicConstraint{id, scope[0], scope[1]});
      } else {
        OpId op{expr ? std::string(name) : table_name};
        if (!expr && defined_tables_.count(table_name)) {
          // Table already registered by an earlier constraint.
        } else {
          out_.reg.define(op, k, *interp);
          if (!expr) defined_tables_.insert(table_name);
        }
        out_.net.csts.push_back(NaryConstraint{op, k, std::move(scope)});
      }
    } catch (const std::invalid_argument& e) {
      fail(line, what, e.what());
    }
    con_names_.emplace(name);
  }

  ParsedNetwork out_;
  std::set<std::string, std::less<>> var_names_;
  std::set<std::string, std::less<>> table_names_;
  std::set<std::string, std::less<>> con_names_;
  std::set<std::string> defined_tables_;
  std::map<std::string, Interpretation> tables_;
};

std::string fresh(const std::string& base, std::set<std::string>& used) {
  std::string name = base;
  for (int i = 1; used.count(name); ++i) name = base + "_" + std::to_string(i);
  used.insert(name);
  return name;
}

void write_domain(std::ostream& out, const Domain& d) {
  const auto& vs = d.values();
  bool contiguous = vs.size() >= 2;
  for (std::size_t i = 1; contiguous && i < vs.size(); ++i) {
    contiguous = vs[i] == vs[i - 1] + 1;
  }
  if (contiguous) {
    out << " " << vs.front() << ".." << vs.back();
    return;
  }
  for (Value v : vs) out << " " << v;
}

void write_rows(std::ostream& out, const Interpretation& interp) {
  const auto& rows = interp.table();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r ? ";" : " ");
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      out << (i ? " " : "") << rows[r][i];
    }
  }
}

}  // namespace

ParsedNetwork parse_native(std::string_view text) {
  return NativeReader().read(text);
}

std::string emit_native(const NetworkN& net, const InterpRegistry& reg) {
  std::ostringstream vars, tables, cons;
  for (const auto& v : net.vars) {
    auto it = net.doms.find(v);
    if (it == net.doms.end()) {
      throw ContractError("emit_native: variable " + v.str() +
                          " has no domain");
    }
    vars << "var " << v.str();
    write_domain(vars, it->second);
    vars << "\n";
  }

  // Constraint names of intentions and basic constraints are fixed by their
  // identifiers; extensional n-ary constraints get fresh names.
  std::set<std::string> con_names;
  std::set<std::string> table_names;
  std::map<std::pair<OpId, std::size_t>, std::size_t> intention_uses;
  for (const auto& c : net.csts) {
    if (const auto* b = std::get_if<BasicConstraint>(&c)) {
      if (!con_names.insert(b->id.str()).second) {
        throw ContractError("emit_native: basic constraint " + b->id.str() +
                            " used twice");
      }
      continue;
    }
    const auto& n = std::get<NaryConstraint>(c);
    const Interpretation* interp = reg.find(n.op, n.arity);
    if (!interp) {
      throw ContractError("emit_native: unresolved operator " + n.op.str());
    }
    if (interp->is_extension()) {
      table_names.insert(n.op.str());
    } else if (++intention_uses[{n.op, n.arity}] > 1 ||
               !con_names.insert(n.op.str()).second) {
      throw ContractError("emit_native: intention " + n.op.str() +
                          " cannot be named uniquely");
    }
  }

  std::map<std::string, std::size_t> tables_written;
  std::size_t ext_index = 0;
  for (const auto& c : net.csts) {
    if (const auto* b = std::get_if<BasicConstraint>(&c)) {
      const Interpretation* interp = reg.find_basic(b->id);
      if (!interp) {
        throw ContractError("emit_native: unresolved basic constraint " +
                            b->id.str());
      }
      if (interp->is_extension()) {
        std::string t = fresh(b->id.str(), table_names);
        tables << "table " << t << " 2";
        write_rows(tables, *interp);
        tables << "\n";
        cons << "con " << b->id.str() << " ext " << t;
      } else {
        if (interp->source().empty()) {
          throw ContractError("emit_native: basic constraint " + b->id.str() +
                              " has no expression source");
        }
        cons << "con " << b->id.str() << " int " << interp->source();
      }
      cons << " " << b->x.str() << " " << b->y.str() << "\n";
      continue;
    }
    const auto& n = std::get<NaryConstraint>(c);
    const Interpretation* interp = reg.find(n.op, n.arity);
    if (interp->is_extension()) {
      auto [it, first_use] = tables_written.emplace(n.op.str(), n.arity);
      if (it->second != n.arity) {
        throw ContractError("emit_native: table name " + n.op.str() +
                            " used with two arities");
      }
      if (first_use) {
        tables << "table " << n.op.str() << " " << n.arity;
        write_rows(tables, *interp);
        tables << "\n";
      }
      cons << "con " << fresh("k" + std::to_string(ext_index++), con_names)
           << " ext " << n.op.str();
    } else {
      if (interp->source().empty()) {
        throw ContractError("emit_native: operator " + n.op.str() +
                            " has no expression source");
      }
      cons << "con " << n.op.str() << " int " << interp->source();
    }
    for (const auto& v : n.scope) cons << " " << v.str();
    cons << "\n";
  }
  return vars.str() + tables.str() + cons.str();
}

}  // namespace hvsolve
