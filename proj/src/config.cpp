/**
 * Copyright 2026 The polysched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "polysched/config.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "json_util.hpp"
#include "polysched/error.hpp"

namespace polysched {

using detail::Json;

std::string to_string(DirectiveKind kind) {
  switch (kind) {
    case DirectiveKind::Parallel: return "parallel";
    case DirectiveKind::Vectorize: return "vectorize";
    case DirectiveKind::Sequential: return "sequential";
  }
  return "vectorize";
}

bool is_builtin_cost(const std::string &name) {
  return name == "proximity" || name == "feautrier" || name == "contiguity" || name == "bigLoopsFirst";
}

std::vector<std::string> Config::user_variable_names() const {
  std::vector<std::string> names;
  for (const auto &v : variables) names.push_back(v.name);
  return names;
}

// ---- Constraint expressions -------------------------------------------------

namespace {

struct Token {
  enum Kind { Int, Ident, Plus, Minus, Star, Rel, End } kind;
  std::string text;
  int64_t value = 0;
};

std::vector<Token> tokenize(const std::string &s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      Token t{Token::Int, s.substr(i, j - i)};
      try {
        t.value = std::stoll(t.text);
      } catch (const std::exception &) {
        throw Error(ErrorKind::ParseError, "integer out of range in '" + s + "'");
      }
      out.push_back(t);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i)});
      i = j;
    } else if (c == '+') {
      out.push_back({Token::Plus, "+"});
      ++i;
    } else if (c == '-') {
      out.push_back({Token::Minus, "-"});
      ++i;
    } else if (c == '*') {
      out.push_back({Token::Star, "*"});
      ++i;
    } else if (c == '>' || c == '<' || c == '=') {
      std::string op(1, c);
      if (i + 1 < s.size() && s[i + 1] == '=') op += '=';
      if (op == ">" || op == "<")
        throw Error(ErrorKind::ParseError, "strict relation '" + op + "' is not supported in '" + s + "'");
      out.push_back({Token::Rel, op});
      i += op.size();
    } else {
      throw Error(ErrorKind::ParseError, std::string("unexpected character '") + c + "' in '" + s + "'");
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

bool parse_index(const std::string &s, int &out) {
  if (s == "i") {
    out = Symbol::kAny;
    return true;
  }
  if (s.empty() || s.size() > 9) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = std::stoi(s);
  return true;
}

Symbol parse_symbol(const std::string &name) {
  Symbol sym;
  sym.cls = SymbolClass::User;
  sym.user = name;
  if (name.size() < 2 || name[0] != 'S') return sym;
  size_t us = name.find('_');
  if (us == std::string::npos) return sym;
  int stmt = 0;
  if (!parse_index(name.substr(1, us - 1), stmt)) return sym;
  std::string rest = name.substr(us + 1);
  if (rest == "cst") return Symbol{SymbolClass::Constant, stmt, 0, ""};
  size_t us2 = rest.find('_');
  if (us2 == std::string::npos) return sym;
  std::string cls = rest.substr(0, us2);
  int index = 0;
  if (!parse_index(rest.substr(us2 + 1), index)) return sym;
  if (cls == "it") return Symbol{SymbolClass::Iterator, stmt, index, ""};
  if (cls == "par") return Symbol{SymbolClass::Parameter, stmt, index, ""};
  return sym;
}

std::string index_text(int v) { return v == Symbol::kAny ? "i" : std::to_string(v); }

std::string symbol_text(const Symbol &s) {
  switch (s.cls) {
    case SymbolClass::Iterator: return "S" + index_text(s.statement) + "_it_" + index_text(s.index);
    case SymbolClass::Parameter: return "S" + index_text(s.statement) + "_par_" + index_text(s.index);
    case SymbolClass::Constant: return "S" + index_text(s.statement) + "_cst";
    case SymbolClass::User: return s.user;
  }
  return s.user;
}

}  // namespace

ConstraintExpr parse_constraint_expr(const std::string &text) {
  std::vector<Token> toks = tokenize(text);
  size_t pos = 0;
  std::map<Symbol, int64_t> acc;
  int64_t constant = 0;
  auto fail = [&](const std::string &msg) { throw Error(ErrorKind::ParseError, msg + " in '" + text + "'"); };

  auto parse_side = [&](int64_t side) {
    bool first = true;
    while (true) {
      int64_t sign = 1;
      if (toks[pos].kind == Token::Plus || toks[pos].kind == Token::Minus) {
        sign = toks[pos].kind == Token::Minus ? -1 : 1;
        ++pos;
      } else if (!first) {
        break;
      }
      first = false;
      // term := [integer '*'] symbol | integer | symbol '*' integer
      int64_t coef = 1;
      std::optional<Symbol> sym;
      bool have_int = false;
      while (true) {
        if (toks[pos].kind == Token::Int) {
          coef *= toks[pos].value;
          have_int = true;
          ++pos;
        } else if (toks[pos].kind == Token::Ident) {
          if (sym) throw Error(ErrorKind::NonAffine, "product of two symbols in '" + text + "'");
          sym = parse_symbol(toks[pos].text);
          ++pos;
        } else {
          fail("expected a term");
        }
        if (toks[pos].kind != Token::Star) break;
        ++pos;
      }
      (void)have_int;
      if (sym) acc[*sym] += side * sign * coef;
      else constant += side * sign * coef;
    }
  };

  parse_side(1);
  if (toks[pos].kind != Token::Rel) fail("expected one of >=, <=, =");
  std::string rel = toks[pos].text;
  ++pos;
  parse_side(-1);
  if (toks[pos].kind == Token::Rel) fail("more than one relation");
  if (toks[pos].kind != Token::End) fail("unexpected trailing input");

  ConstraintExpr e;
  e.rel = rel == ">=" ? ExprRel::GreaterEqual : rel == "<=" ? ExprRel::LessEqual : ExprRel::Equal;
  for (const auto &[s, c] : acc)
    if (c != 0) e.terms.push_back({c, s});
  e.rhs = -constant;
  return e;
}

void resolve_constraint_expr(const ConstraintExpr &expr, const Scop &scop, const std::vector<std::string> &user_vars) {
  const size_t n = scop.statements.size();
  for (const auto &t : expr.terms) {
    const Symbol &s = t.symbol;
    std::string name = symbol_text(s);
    if (s.cls == SymbolClass::User) {
      if (std::find(user_vars.begin(), user_vars.end(), s.user) == user_vars.end())
        throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "'");
      continue;
    }
    if (s.statement != Symbol::kAny && static_cast<size_t>(s.statement) >= n)
      throw Error(ErrorKind::UnknownSymbol, "'" + name + "' names a statement that does not exist");
    if (s.index == Symbol::kAny || s.cls == SymbolClass::Constant) continue;
    size_t idx = static_cast<size_t>(s.index);
    if (s.cls == SymbolClass::Parameter && idx >= scop.parameters.size())
      throw Error(ErrorKind::UnknownSymbol, "'" + name + "' names a parameter that does not exist");
    if (s.cls == SymbolClass::Iterator) {
      if (s.statement == Symbol::kAny) {
        bool any = false;
        for (const auto &st : scop.statements) any = any || idx < st.depth();
        if (!any) throw Error(ErrorKind::UnknownSymbol, "'" + name + "' exceeds every statement depth");
      } else if (idx >= scop.statements[s.statement].depth()) {
        throw Error(ErrorKind::UnknownSymbol, "'" + name + "' names an iterator that does not exist");
      }
    }
  }
}

ConstraintExpr parse_constraint_expr(const std::string &text, const Scop &scop,
                                     const std::vector<std::string> &user_vars) {
  ConstraintExpr e = parse_constraint_expr(text);
  resolve_constraint_expr(e, scop, user_vars);
  return e;
}

std::string print(const ConstraintExpr &expr) {
  std::string out;
  for (size_t i = 0; i < expr.terms.size(); ++i) {
    int64_t c = expr.terms[i].coef;
    if (i == 0) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    int64_t mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag) + "*";
    out += symbol_text(expr.terms[i].symbol);
  }
  if (expr.terms.empty()) out = "0";
  out += expr.rel == ExprRel::GreaterEqual ? " >= " : expr.rel == ExprRel::LessEqual ? " <= " : " = ";
  out += std::to_string(expr.rhs);
  return out;
}

// ---- Configuration ----------------------------------------------------------

namespace {

std::vector<std::string> parse_costs(const Json &v, const std::string &where) {
  return detail::as_strings(v, where);
}

std::vector<std::vector<size_t>> parse_groups(const Json &v, const std::string &where) {
  if (!v.is_array()) throw Error(ErrorKind::SchemaError, where + ": expected an array of groups");
  std::vector<std::vector<size_t>> groups;
  std::set<size_t> seen;
  for (const auto &g : v) {
    if (!g.is_array()) throw Error(ErrorKind::SchemaError, where + ": each group must be an array");
    if (g.empty()) throw Error(ErrorKind::BadGroup, where + ": empty group");
    std::vector<size_t> group;
    for (const auto &e : g) {
      int64_t s = detail::as_int(e, where);
      if (s < 0) throw Error(ErrorKind::BadGroup, where + ": negative statement index");
      if (!seen.insert(static_cast<size_t>(s)).second)
        throw Error(ErrorKind::BadGroup, where + ": statement " + std::to_string(s) + " appears in two groups");
      group.push_back(static_cast<size_t>(s));
    }
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  return groups;
}

size_t as_index(const Json &v, const std::string &where) {
  int64_t x = detail::as_int(v, where);
  if (x < 0) throw Error(ErrorKind::SchemaError, where + ": must be non-negative");
  return static_cast<size_t>(x);
}

}  // namespace

void apply_preset(Config &config, const std::string &name) {
  if (name == "pluto-style") {
    config.default_costs = {"proximity"};
  } else if (name == "tensor-style") {
    config.default_costs = {"contiguity", "proximity"};
    config.constraints.push_back({std::nullopt, parse_constraint_expr("Si_it_i <= 1")});
  } else if (name == "feautrier-style") {
    config.default_costs = {"feautrier"};
  } else if (name == "isl-style") {
    config.default_costs = {"proximity"};
    config.callback = isl_style_callback();
  } else {
    throw Error(ErrorKind::SchemaError, "unknown preset '" + name + "'");
  }
  config.preset = name;
}

StrategyCallback isl_style_callback() {
  return [](const StrategyContext &ctx) -> std::optional<DimensionPlan> {
    DimensionPlan plan;
    TrialResult t = ctx.trial({"proximity"});
    plan.costs = {"proximity"};
    if (t.feasible && !t.parallel) plan.costs = {"feautrier"};
    return plan;
  };
}

Config parse_config(const std::string &text) {
  Json j = detail::parse_json(text, "config");
  detail::reject_unknown_keys(j,
                              {"variables", "costFunctions", "constraints", "fusion", "directives", "autoVectorize",
                               "preset", "tiling", "bounds"},
                              "config");
  Config c;
  if (j.contains("preset")) apply_preset(c, detail::as_string(j["preset"], "config.preset"));

  if (j.contains("variables")) {
    if (!j["variables"].is_array()) throw Error(ErrorKind::SchemaError, "config.variables: expected an array");
    for (const auto &v : j["variables"]) {
      detail::reject_unknown_keys(v, {"name", "lower", "upper"}, "config.variables");
      UserVariable uv;
      uv.name = detail::as_string(detail::require(v, "name", "config.variables"), "config.variables.name");
      if (is_builtin_cost(uv.name) || parse_symbol(uv.name).cls != SymbolClass::User)
        throw Error(ErrorKind::SchemaError, "config.variables: reserved name '" + uv.name + "'");
      if (v.contains("lower")) uv.lower = v["lower"].is_null() ? std::nullopt : std::optional(detail::as_int(v["lower"], "lower"));
      if (v.contains("upper")) uv.upper = v["upper"].is_null() ? std::nullopt : std::optional(detail::as_int(v["upper"], "upper"));
      if (uv.lower && uv.upper && *uv.lower > *uv.upper)
        throw Error(ErrorKind::SchemaError, "config.variables: lower bound exceeds upper bound for '" + uv.name + "'");
      c.variables.push_back(uv);
    }
  }
  std::vector<std::string> users = c.user_variable_names();
  auto check_costs = [&](const std::vector<std::string> &costs) {
    for (const auto &name : costs)
      if (!is_builtin_cost(name) && std::find(users.begin(), users.end(), name) == users.end())
        throw Error(ErrorKind::UnknownCost, "unknown cost function '" + name + "'");
  };

  if (j.contains("costFunctions")) {
    const Json &cf = j["costFunctions"];
    detail::reject_unknown_keys(cf, {"default", "perDimension"}, "config.costFunctions");
    if (cf.contains("default")) c.default_costs = parse_costs(cf["default"], "config.costFunctions.default");
    if (cf.contains("perDimension")) {
      for (const auto &e : cf["perDimension"]) {
        detail::reject_unknown_keys(e, {"dimension", "costs"}, "config.costFunctions.perDimension");
        size_t d = as_index(detail::require(e, "dimension", "perDimension"), "perDimension.dimension");
        c.dimension_costs[d] = parse_costs(detail::require(e, "costs", "perDimension"), "perDimension.costs");
      }
    }
  }
  check_costs(c.default_costs);
  for (const auto &[d, costs] : c.dimension_costs) check_costs(costs);

  if (j.contains("constraints")) {
    if (!j["constraints"].is_array()) throw Error(ErrorKind::SchemaError, "config.constraints: expected an array");
    for (const auto &e : j["constraints"]) {
      detail::reject_unknown_keys(e, {"scope", "expr"}, "config.constraints");
      ScopedConstraint sc;
      const Json &scope = detail::require(e, "scope", "config.constraints");
      if (scope.is_string()) {
        if (scope.get<std::string>() != "all")
          throw Error(ErrorKind::SchemaError, "config.constraints.scope: expected a dimension or \"all\"");
      } else {
        sc.dimension = as_index(scope, "config.constraints.scope");
      }
      sc.expr = parse_constraint_expr(detail::as_string(detail::require(e, "expr", "config.constraints"), "expr"));
      c.constraints.push_back(std::move(sc));
    }
  }

  if (j.contains("fusion")) {
    if (!j["fusion"].is_array()) throw Error(ErrorKind::SchemaError, "config.fusion: expected an array");
    std::set<size_t> dims;
    for (const auto &e : j["fusion"]) {
      detail::reject_unknown_keys(e, {"dimension", "fuse", "distribute"}, "config.fusion");
      FusionEntry f;
      f.dimension = as_index(detail::require(e, "dimension", "config.fusion"), "config.fusion.dimension");
      if (!dims.insert(f.dimension).second)
        throw Error(ErrorKind::BadGroup, "config.fusion: two entries for dimension " + std::to_string(f.dimension));
      if (e.contains("fuse")) f.fuse = parse_groups(e["fuse"], "config.fusion.fuse");
      if (e.contains("distribute")) f.distribute = parse_groups(e["distribute"], "config.fusion.distribute");
      c.fusion.push_back(std::move(f));
    }
  }

  if (j.contains("directives")) {
    if (!j["directives"].is_array()) throw Error(ErrorKind::SchemaError, "config.directives: expected an array");
    for (const auto &e : j["directives"]) {
      detail::reject_unknown_keys(e, {"statement", "loop", "type"}, "config.directives");
      Directive d;
      d.statement = as_index(detail::require(e, "statement", "config.directives"), "directives.statement");
      d.loop = as_index(detail::require(e, "loop", "config.directives"), "directives.loop");
      std::string type = detail::as_string(detail::require(e, "type", "config.directives"), "directives.type");
      if (type == "parallel") d.kind = DirectiveKind::Parallel;
      else if (type == "vectorize") d.kind = DirectiveKind::Vectorize;
      else if (type == "sequential") d.kind = DirectiveKind::Sequential;
      else throw Error(ErrorKind::SchemaError, "config.directives.type: unknown directive '" + type + "'");
      c.directives.push_back(d);
    }
  }

  if (j.contains("autoVectorize")) {
    if (!j["autoVectorize"].is_boolean()) throw Error(ErrorKind::SchemaError, "config.autoVectorize: expected a boolean");
    c.auto_vectorize = j["autoVectorize"].get<bool>();
  }

  if (j.contains("tiling")) {
    const Json &t = j["tiling"];
    detail::reject_unknown_keys(t, {"sizes", "wavefront"}, "config.tiling");
    TilingConfig tc;
    if (t.contains("sizes")) {
      if (!t["sizes"].is_array()) throw Error(ErrorKind::SchemaError, "config.tiling.sizes: expected an array");
      for (const auto &band : t["sizes"]) {
        IntRow sizes = detail::as_row(band, "config.tiling.sizes");
        for (int64_t s : sizes)
          if (s < 1) throw Error(ErrorKind::SchemaError, "config.tiling.sizes: sizes must be >= 1");
        tc.sizes.push_back(sizes);
      }
    }
    if (t.contains("wavefront")) {
      if (!t["wavefront"].is_boolean()) throw Error(ErrorKind::SchemaError, "config.tiling.wavefront: expected a boolean");
      tc.wavefront = t["wavefront"].get<bool>();
    }
    c.tiling = tc;
  }

  if (j.contains("bounds")) {
    const Json &b = j["bounds"];
    detail::reject_unknown_keys(b, {"iterators", "parameters", "constants"}, "config.bounds");
    if (b.contains("iterators")) c.bounds.iterators = detail::as_int(b["iterators"], "config.bounds.iterators");
    if (b.contains("parameters")) c.bounds.parameters = detail::as_int(b["parameters"], "config.bounds.parameters");
    if (b.contains("constants")) c.bounds.constants = detail::as_int(b["constants"], "config.bounds.constants");
    if (c.bounds.iterators < 1 || c.bounds.parameters < 0 || (c.bounds.constants && *c.bounds.constants < 0))
      throw Error(ErrorKind::SchemaError, "config.bounds: iterator bound must be >= 1, others >= 0");
  }
  return c;
}

void validate_config(const Config &config, const Scop &scop) {
  const size_t n = scop.statements.size();
  std::vector<std::string> users = config.user_variable_names();
  for (const auto &sc : config.constraints) resolve_constraint_expr(sc.expr, scop, users);
  for (const auto &f : config.fusion) {
    for (const auto *list : {&f.fuse, &f.distribute})
      for (const auto &g : *list)
        for (size_t s : g)
          if (s >= n) throw Error(ErrorKind::BadGroup, "fusion group names statement " + std::to_string(s) +
                                                           " which does not exist");
  }
  for (const auto &d : config.directives) {
    if (d.statement >= n)
      throw Error(ErrorKind::SchemaError, "directive names statement " + std::to_string(d.statement) +
                                              " which does not exist");
    if (d.loop >= scop.statements[d.statement].depth())
      throw Error(ErrorKind::SchemaError, "directive names loop " + std::to_string(d.loop) + " of statement " +
                                              std::to_string(d.statement) + " which does not exist");
  }
}

DimensionPlan compile_plan(const Config &config, const Scop &scop, size_t dim, const StrategyContext *ctx) {
  DimensionPlan plan;
  bool from_callback = false;
  if (config.callback && ctx) {
    if (auto p = config.callback(*ctx)) {
      plan = *p;
      from_callback = true;
    }
  }
  if (!from_callback) {
    auto it = config.dimension_costs.find(dim);
    plan.costs = it != config.dimension_costs.end() ? it->second : config.default_costs;
    for (const auto &f : config.fusion) {
      if (f.dimension != dim) continue;
      std::set<size_t> fused, distributed;
      for (const auto &g : f.fuse) fused.insert(g.begin(), g.end());
      for (const auto &g : f.distribute) distributed.insert(g.begin(), g.end());
      for (size_t s : fused)
        if (distributed.count(s))
          throw Error(ErrorKind::ConflictingPlan, "statement " + std::to_string(s) + " is both fused and distributed at dimension " +
                                                      std::to_string(dim));
      std::vector<std::vector<size_t>> groups = f.fuse;
      groups.insert(groups.end(), f.distribute.begin(), f.distribute.end());
      for (size_t s = 0; s < scop.statements.size(); ++s)
        if (!fused.count(s) && !distributed.count(s)) groups.push_back({s});
      std::sort(groups.begin(), groups.end());
      plan.forced = true;
      if (groups.size() > 1) {
        plan.kind = PlanKind::Distribute;
        plan.groups = std::move(groups);
      }
    }
  }
  for (const auto &sc : config.constraints)
    if (!sc.dimension || *sc.dimension == dim) plan.constraints.push_back(sc.expr);
  return plan;
}

std::vector<std::optional<size_t>> auto_vectorize_detect(const Scop &scop) {
  std::vector<std::optional<size_t>> out;
  for (const auto &s : scop.statements) {
    std::vector<int> count(s.depth(), 0);
    for (const auto &a : s.accesses) {
      if (a.subscripts.empty()) continue;
      const IntRow &fast = a.subscripts.back();
      for (size_t k = 0; k < s.depth(); ++k)
        if (fast[k] == 1) ++count[k];
    }
    std::optional<size_t> best;
    for (size_t k = 0; k < s.depth(); ++k)
      if (count[k] > 0 && (!best || count[k] >= count[*best])) best = k;
    out.push_back(best);
  }
  return out;
}

std::vector<Directive> effective_directives(const Config &config, const Scop &scop) {
  std::vector<Directive> out = config.directives;
  if (!config.auto_vectorize) return out;
  auto detected = auto_vectorize_detect(scop);
  for (size_t s = 0; s < detected.size(); ++s) {
    if (!detected[s]) continue;
    bool explicit_vec = false;
    for (const auto &d : config.directives)
      explicit_vec = explicit_vec || (d.statement == s && d.kind == DirectiveKind::Vectorize);
    if (!explicit_vec) out.push_back({s, *detected[s], DirectiveKind::Vectorize});
  }
  return out;
}

}  // namespace polysched
