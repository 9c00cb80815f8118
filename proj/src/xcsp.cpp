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

#include "hvsolve/xcsp.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace hvsolve {

namespace {

struct XmlElement {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::string text;
  std::vector<XmlElement> children;
  std::size_t line = 0;

  const std::string* attr(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? nullptr : &it->second;
  }
};

class XmlBuilder {
 public:
  XmlElement parse(std::string_view text) {
    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
        XML_ParserCreate("UTF-8"), &XML_ParserFree);
    if (!parser) throw std::bad_alloc();
    parser_ = parser.get();
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &XmlBuilder::on_start, &XmlBuilder::on_end);
    XML_SetCharacterDataHandler(parser_, &XmlBuilder::on_text);
    if (XML_Parse(parser_, text.data(), static_cast<int>(text.size()), 1) ==
        XML_STATUS_ERROR) {
      throw ParseError(XML_GetCurrentLineNumber(parser_), "xml",
                       XML_ErrorString(XML_GetErrorCode(parser_)));
    }
    if (!root_) throw ParseError(0, "xml", "no root element");
    return std::move(*root_);
  }

 private:
  static void on_start(void* self_ptr, const XML_Char* name,
                       const XML_Char** attrs) {
    auto* self = static_cast<XmlBuilder*>(self_ptr);
    XmlElement e;
    e.name = name;
    e.line = XML_GetCurrentLineNumber(self->parser_);
    for (std::size_t i = 0; attrs[i]; i += 2) e.attrs[attrs[i]] = attrs[i + 1];
    self->stack_.push_back(std::move(e));
  }

  static void on_end(void* self_ptr, const XML_Char* /*name*/) {
    auto* self = static_cast<XmlBuilder*>(self_ptr);
    XmlElement e = std::move(self->stack_.back());
    self->stack_.pop_back();
    if (self->stack_.empty()) {
      self->root_ = std::move(e);
    } else {
      self->stack_.back().children.push_back(std::move(e));
    }
  }

  static void on_text(void* self_ptr, const XML_Char* s, int len) {
    auto* self = static_cast<XmlBuilder*>(self_ptr);
    if (!self->stack_.empty()) self->stack_.back().text.append(s, len);
  }

  XML_Parser parser_ = nullptr;
  std::vector<XmlElement> stack_;
  std::optional<XmlElement> root_;
};

[[noreturn]] void fail(const XmlElement& e, const std::string& msg) {
  std::string context = "<" + e.name;
  if (const auto* n = e.attr("name")) context += " name=\"" + *n + "\"";
  context += ">";
  throw ParseError(e.line, context, msg);
}

[[noreturn]] void unsupported(const XmlElement& e, const std::string& what) {
  fail(e, "unsupported feature: " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<Value> to_value(std::string_view s) {
  Value v = 0;
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

Value value_or_fail(const XmlElement& e, std::string_view tok) {
  auto v = to_value(tok);
  if (!v) fail(e, "non-integer value '" + std::string(tok) + "'");
  return *v;
}

const std::string& required(const XmlElement& e, const std::string& key) {
  const auto* v = e.attr(key);
  if (!v) fail(e, "missing attribute '" + key + "'");
  return *v;
}

std::size_t count_attr(const XmlElement& e, const std::string& key) {
  const auto& text = required(e, key);
  auto v = to_value(text);
  if (!v || *v < 0) fail(e, "attribute '" + key + "' must be a count");
  return static_cast<std::size_t>(*v);
}

void check_count(const XmlElement& e, const std::string& key,
                 std::size_t actual) {
  if (!e.attr(key)) return;
  std::size_t declared = count_attr(e, key);
  if (declared != actual) {
    fail(e, key + " is " + std::to_string(declared) + " but " +
                std::to_string(actual) + " were given");
  }
}

XcspDomain read_domain(const XmlElement& e) {
  XcspDomain d{required(e, "name"), {}, e.line};
  for (auto tok : split_ws(e.text)) {
    if (auto dots = tok.find(".."); dots != std::string_view::npos) {
      Value lo = value_or_fail(e, tok.substr(0, dots));
      Value hi = value_or_fail(e, tok.substr(dots + 2));
      if (hi < lo) fail(e, "empty interval '" + std::string(tok) + "'");
      for (Value v = lo;; ++v) {
        d.values.push_back(v);
        if (v == hi) break;
      }
    } else {
      d.values.push_back(value_or_fail(e, tok));
    }
  }
  check_count(e, "nbValues", Domain(d.values).size());
  return d;
}

XcspRelation read_relation(const XmlElement& e) {
  XcspRelation r;
  r.name = required(e, "name");
  r.line = e.line;
  r.arity = count_attr(e, "arity");
  if (r.arity == 0) fail(e, "arity must be positive");
  const auto& semantics = required(e, "semantics");
  if (semantics == "supports") {
    r.supports = true;
  } else if (semantics == "conflicts") {
    r.supports = false;
  } else {
    unsupported(e, "relation semantics '" + semantics + "'");
  }
  if (e.attr("defaultCost")) unsupported(e, "weighted relation");
  std::string_view text = e.text;
  if (!split_ws(text).empty()) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('|', start);
      if (end == std::string_view::npos) end = text.size();
      std::vector<Value> row;
      for (auto tok : split_ws(text.substr(start, end - start))) {
        row.push_back(value_or_fail(e, tok));
      }
      if (row.size() != r.arity) {
        fail(e, "arity mismatch: tuple " + std::to_string(r.rows.size() + 1) +
                    " has " + std::to_string(row.size()) +
                    " values, relation arity is " + std::to_string(r.arity));
      }
      r.rows.push_back(std::move(row));
      start = end + 1;
    }
  }
  check_count(e, "nbTuples", r.rows.size());
  return r;
}

XcspPredicate read_predicate(const XmlElement& e) {
  const std::string& name = required(e, "name");
  const XmlElement* params = nullptr;
  const XmlElement* expression = nullptr;
  for (const auto& c : e.children) {
    if (c.name == "parameters") {
      params = &c;
    } else if (c.name == "expression") {
      expression = &c;
    } else {
      unsupported(c, "element <" + c.name + "> in a predicate");
    }
  }
  if (!params) fail(e, "missing <parameters>");
  if (!expression) fail(e, "missing <expression>");

  std::vector<std::string> formals;
  auto toks = split_ws(params->text);
  if (toks.size() % 2 != 0) fail(*params, "expected 'int NAME' pairs");
  for (std::size_t i = 0; i < toks.size(); i += 2) {
    if (toks[i] != "int") {
      unsupported(*params, "parameter type '" + std::string(toks[i]) + "'");
    }
    formals.emplace_back(toks[i + 1]);
  }

  const XmlElement* functional = nullptr;
  for (const auto& c : expression->children) {
    if (c.name == "functional") {
      functional = &c;
    } else {
      unsupported(c, "expression syntax <" + c.name + ">");
    }
  }
  if (!functional) fail(*expression, "missing <functional>");

  ParamResolver resolve =
      [&formals](std::string_view id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < formals.size(); ++i) {
      if (formals[i] == id) return i;
    }
    return std::nullopt;
  };
  try {
    PredExpr expr = parse_pred_expr(functional->text, resolve);
    if (expr.type() != ExprType::kBool) {
      fail(*functional, "predicate expression must be boolean");
    }
    return XcspPredicate{name, std::move(formals), std::move(expr), e.line};
  } catch (const ExprError& err) {
    fail(*functional, "column " + std::to_string(err.column() + 1) + ": " +
                          err.what());
  }
}

XcspConstraint read_constraint(const XmlElement& e) {
  XcspConstraint c;
  c.name = required(e, "name");
  c.line = e.line;
  c.arity = count_attr(e, "arity");
  for (auto tok : split_ws(required(e, "scope"))) c.scope.emplace_back(tok);
  c.reference = required(e, "reference");
  if (c.reference.rfind("global:", 0) == 0) {
    unsupported(e, "global constraint '" + c.reference + "'");
  }
  if (c.scope.size() != c.arity) {
    fail(e, "arity mismatch: arity is " + std::to_string(c.arity) +
                " but the scope lists " + std::to_string(c.scope.size()) +
                " variables");
  }
  for (const auto& child : e.children) {
    if (child.name != "parameters") {
      unsupported(child, "element <" + child.name + "> in a constraint");
    }
    for (auto tok : split_ws(child.text)) c.parameters.emplace_back(tok);
  }
  return c;
}

}  // namespace

XcspInstance parse_xcsp(std::string_view text) {
  XmlElement root = XmlBuilder().parse(text);
  if (root.name != "instance") fail(root, "root element must be <instance>");
  if (const auto* f = root.attr("format"); f && f->find("XCSP3") == 0) {
    unsupported(root, "XCSP3 instances");
  }

  XcspInstance inst;
  const XmlElement* domains = nullptr;
  const XmlElement* variables = nullptr;
  const XmlElement* relations = nullptr;
  const XmlElement* predicates = nullptr;
  const XmlElement* constraints = nullptr;
  for (const auto& section : root.children) {
    if (section.name == "presentation") {
      if (const auto* n = section.attr("name")) inst.name = *n;
      if (const auto* f = section.attr("format");
          f && f->find("XCSP 2") == std::string::npos) {
        unsupported(section, "format '" + *f + "'");
      }
      if (const auto* t = section.attr("type"); t && *t != "CSP") {
        unsupported(section, "problem type '" + *t + "'");
      }
    } else if (section.name == "domains") {
      domains = &section;
    } else if (section.name == "variables") {
      variables = &section;
    } else if (section.name == "relations") {
      relations = &section;
    } else if (section.name == "predicates") {
      predicates = &section;
    } else if (section.name == "constraints") {
      constraints = &section;
    } else {
      unsupported(section, "section <" + section.name + ">");
    }
  }
  if (!domains) fail(root, "missing <domains>");
  if (!variables) fail(root, "missing <variables>");

  auto children = [](const XmlElement& section, const char* tag) {
    std::vector<const XmlElement*> out;
    for (const auto& c : section.children) {
      if (c.name != tag) {
        fail(c, "unexpected element in <" + section.name + ">");
      }
      out.push_back(&c);
    }
    return out;
  };

  std::set<std::string> names;
  auto claim = [&names](const XmlElement& e, const std::string& name) {
    if (!names.insert(name).second) fail(e, "duplicate name '" + name + "'");
  };

  std::map<std::string, std::size_t> domain_index;
  for (const auto* e : children(*domains, "domain")) {
    inst.domains.push_back(read_domain(*e));
    claim(*e, inst.domains.back().name);
    domain_index[inst.domains.back().name] = inst.domains.size() - 1;
  }
  check_count(*domains, "nbDomains", inst.domains.size());

  std::set<std::string> var_names;
  for (const auto* e : children(*variables, "variable")) {
    XcspVariable v{required(*e, "name"), required(*e, "domain"), e->line};
    if (!domain_index.count(v.domain)) {
      fail(*e, "unresolved domain '" + v.domain + "'");
    }
    claim(*e, v.name);
    var_names.insert(v.name);
    inst.variables.push_back(std::move(v));
  }
  check_count(*variables, "nbVariables", inst.variables.size());

  std::map<std::string, std::size_t> relation_index;
  if (relations) {
    for (const auto* e : children(*relations, "relation")) {
      inst.relations.push_back(read_relation(*e));
      claim(*e, inst.relations.back().name);
      relation_index[inst.relations.back().name] = inst.relations.size() - 1;
    }
    check_count(*relations, "nbRelations", inst.relations.size());
  }

  std::map<std::string, std::size_t> predicate_index;
  if (predicates) {
    for (const auto* e : children(*predicates, "predicate")) {
      inst.predicates.push_back(read_predicate(*e));
      claim(*e, inst.predicates.back().name);
      predicate_index[inst.predicates.back().name] =
          inst.predicates.size() - 1;
    }
    check_count(*predicates, "nbPredicates", inst.predicates.size());
  }

  if (constraints) {
    for (const auto* e : children(*constraints, "constraint")) {
      XcspConstraint c = read_constraint(*e);
      claim(*e, c.name);
      for (const auto& v : c.scope) {
        if (!var_names.count(v)) fail(*e, "undeclared variable '" + v + "'");
      }
      if (auto r = relation_index.find(c.reference);
          r != relation_index.end()) {
        const auto& rel = inst.relations[r->second];
        if (rel.arity != c.arity) {
          fail(*e, "arity mismatch: relation '" + rel.name + "' has arity " +
                       std::to_string(rel.arity));
        }
        if (!c.parameters.empty()) {
          fail(*e, "relation references take no parameters");
        }
      } else if (auto p = predicate_index.find(c.reference);
                 p != predicate_index.end()) {
        const auto& pred = inst.predicates[p->second];
        if (c.parameters.size() != pred.formals.size()) {
          fail(*e, "predicate '" + pred.name + "' expects " +
                       std::to_string(pred.formals.size()) +
                       " parameters, got " +
                       std::to_string(c.parameters.size()));
        }
        std::set<std::string> scope(c.scope.begin(), c.scope.end());
        for (const auto& a : c.parameters) {
          if (!scope.count(a) && !to_value(a)) {
            fail(*e, "parameter '" + a +
                         "' is neither a scope variable nor an integer");
          }
        }
      } else {
        fail(*e, "unresolved reference '" + c.reference + "'");
      }
      inst.constraints.push_back(std::move(c));
    }
    check_count(*constraints, "nbConstraints", inst.constraints.size());
  }
  return inst;
}

LoweredNetwork lower_to_network(const XcspInstance& inst) {
  LoweredNetwork out;
  std::map<std::string, const XcspDomain*> domains;
  for (const auto& d : inst.domains) domains[d.name] = &d;
  for (const auto& v : inst.variables) {
    auto it = domains.find(v.domain);
    if (it == domains.end()) {
      throw ParseError(v.line, "variable " + v.name,
                       "unresolved domain '" + v.domain + "'");
    }
    VarId id{v.name};
    out.net.vars.push_back(id);
    out.net.doms.emplace(id, Domain(it->second->values));
  }

  std::map<std::string, const XcspRelation*> relations;
  for (const auto& r : inst.relations) relations[r.name] = &r;
  std::map<std::string, const XcspPredicate*> predicates;
  for (const auto& p : inst.predicates) predicates[p.name] = &p;

  // One interpretation per relation, shared by every constraint using it.
  std::map<std::string, Interpretation> relation_interps;
  auto relation_interp = [&](const XcspRelation& r) -> Interpretation {
    auto it = relation_interps.find(r.name);
    if (it != relation_interps.end()) return it->second;
    Interpretation table = [&] {
      try {
        return Interpretation::extension(r.arity, r.rows);
      } catch (const std::invalid_argument& e) {
        throw ParseError(r.line, "relation " + r.name, e.what());
      }
    }();
    Interpretation interp =
        r.supports ? table
                   : Interpretation::intention(
                         r.arity, [table](std::span<const Value> vs) {
                           return !table.holds(vs);
                         });
    relation_interps.emplace(r.name, interp);
    return interp;
  };

  std::vector<std::string> names;  // constraint name per network constraint
  std::vector<std::size_t> lines;
  for (const auto& c : inst.constraints) {
    const std::string context = "constraint " + c.name;
    if (c.arity < 2) {
      throw ParseError(c.line, context,
                       "unsupported feature: unary constraint");
    }
    std::vector<VarId> scope;
    for (const auto& v : c.scope) scope.emplace_back(v);

    std::optional<Interpretation> interp;
    std::optional<OpId> op;
    if (auto r = relations.find(c.reference); r != relations.end()) {
      interp = relation_interp(*r->second);
      op = OpId{r->second->name};
    } else if (auto p = predicates.find(c.reference); p != predicates.end()) {
      std::vector<PredExpr::Binding> bindings;
      for (const auto& a : c.parameters) {
        PredExpr::Binding b;
        auto pos = std::find(c.scope.begin(), c.scope.end(), a);
        if (pos != c.scope.end()) {
          b.is_param = true;
          b.index = static_cast<std::size_t>(pos - c.scope.begin());
        } else if (auto v = to_value(a)) {
          b.value = *v;
        } else {
          throw ParseError(c.line, context,
                           "parameter '" + a + "' is not in the scope");
        }
        bindings.push_back(b);
      }
      PredExpr bound = p->second->expr.substitute(bindings);
      interp = Interpretation::intention(
          c.arity, compile_predicate(bound, out.stats.eval_faults),
          bound.to_string());
      op = OpId{c.name};
    } else {
      throw ParseError(c.line, context,
                       "unresolved reference '" + c.reference + "'");
    }

    try {
      if (c.arity == 2) {
        BasicId id{c.name};
        out.reg.define_basic(id, *interp);
        out.net.csts.push_back(BasicConstraint{id, scope[0], scope[1]});
        ++out.stats.binary_constraints;
      } else {
        if (!out.reg.find(*op, c.arity)) out.reg.define(*op, c.arity, *interp);
        out.net.csts.push_back(NaryConstraint{*op, c.arity, std::move(scope)});
        ++out.stats.nary_constraints;
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(c.line, context, e.what());
    }
    names.push_back(c.name);
    lines.push_back(c.line);
  }

  auto report = check_network_inv_n(out.net, out.reg);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    std::size_t line = v.constraint ? lines[*v.constraint] : 0;
    std::string context =
        v.constraint ? "constraint " + names[*v.constraint] : "instance";
    std::ostringstream scope;
    if (v.constraint) {
      scope << " (scope {";
      auto vars = scope_of(out.net.csts[*v.constraint]);
      for (std::size_t i = 0; i < vars.size(); ++i) {
        scope << (i ? ", " : "") << vars[i].str();
      }
      scope << "})";
    }
    throw ParseError(line, context,
                     std::string("not well formed [") + clause_name(v.clause) +
                         "]: " + v.message + scope.str());
  }
  return out;
}

}  // namespace hvsolve
