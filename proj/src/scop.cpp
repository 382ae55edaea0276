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
#include "polysched/scop.hpp"

#include "json_util.hpp"
#include "polysched/error.hpp"

namespace polysched {

using detail::Json;

int64_t evaluate_row(const IntRow &row, const std::vector<int64_t> &point) {
  __int128 acc = row.back();
  for (size_t i = 0; i < point.size(); ++i) acc += static_cast<__int128>(row[i]) * point[i];
  if (acc > INT64_MAX || acc < INT64_MIN) throw Error(ErrorKind::Overflow, "row evaluation overflows 64 bits");
  return static_cast<int64_t>(acc);
}

bool Polyhedron::contains(const std::vector<int64_t> &point) const {
  for (const auto &r : rows) {
    int64_t v = evaluate_row(r.coef, point);
    if (r.rel == RowRel::Equal ? v != 0 : v < 0) return false;
  }
  return true;
}

std::vector<PolyRow> Scop::effective_context() const {
  if (!context.empty()) return context;
  std::vector<PolyRow> rows;
  for (size_t p = 0; p < parameters.size(); ++p) {
    PolyRow r;
    r.coef.assign(parameters.size() + 1, 0);
    r.coef[p] = 1;
    r.coef.back() = -2;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<PolyRow> embed_context(const std::vector<PolyRow> &context, const Polyhedron &p) {
  std::vector<PolyRow> out;
  for (const auto &c : context) {
    if (c.coef.size() != p.n_params + 1) throw Error(ErrorKind::DimensionMismatch, "context row width");
    PolyRow r;
    r.rel = c.rel;
    r.coef.assign(p.width(), 0);
    for (size_t k = 0; k < p.n_params; ++k) r.coef[p.param_offset() + k] = c.coef[k];
    r.coef.back() = c.coef.back();
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_string(AccessKind kind) { return kind == AccessKind::Read ? "read" : "write"; }

namespace {

bool iterator_part_zero(const IntRow &row, size_t depth) {
  for (size_t k = 0; k < depth; ++k)
    if (row[k] != 0) return false;
  return true;
}

Statement parse_statement(const Json &j, const std::vector<std::string> &params, size_t index) {
  std::string where = "statements[" + std::to_string(index) + "]";
  Statement s;
  s.name = detail::as_string(detail::require(j, "name", where), where + ".name");
  s.iterators = detail::as_strings(detail::require(j, "iterators", where), where + ".iterators");
  const size_t width = s.depth() + params.size() + 1;

  s.domain.columns = s.iterators;
  s.domain.columns.insert(s.domain.columns.end(), params.begin(), params.end());
  s.domain.n_params = params.size();
  s.domain.rows = detail::poly_rows_from_json(detail::require(j, "domain", where), width, where + ".domain");

  const Json &accesses = detail::require(j, "accesses", where);
  if (!accesses.is_array()) throw Error(ErrorKind::SchemaError, where + ".accesses: expected an array");
  for (size_t a = 0; a < accesses.size(); ++a) {
    std::string at = where + ".accesses[" + std::to_string(a) + "]";
    Access acc;
    acc.array = detail::as_string(detail::require(accesses[a], "array", at), at + ".array");
    std::string kind = detail::as_string(detail::require(accesses[a], "kind", at), at + ".kind");
    if (kind == "write") acc.kind = AccessKind::Write;
    else if (kind != "read") throw Error(ErrorKind::SchemaError, at + ".kind: expected \"read\" or \"write\"");
    const Json &subs = detail::require(accesses[a], "subscripts", at);
    if (!subs.is_array()) throw Error(ErrorKind::SchemaError, at + ".subscripts: expected an array");
    for (size_t q = 0; q < subs.size(); ++q) {
      IntRow row = detail::as_row(subs[q], at + ".subscripts");
      if (row.size() != width) throw Error(ErrorKind::DimensionMismatch, at + ": subscript row width");
      acc.subscripts.push_back(std::move(row));
    }
    s.accesses.push_back(std::move(acc));
  }

  const Json &sched = detail::require(j, "initial_schedule", where);
  if (!sched.is_array()) throw Error(ErrorKind::SchemaError, where + ".initial_schedule: expected an array");
  for (const auto &r : sched) {
    IntRow row = detail::as_row(r, where + ".initial_schedule");
    if (row.size() != width) throw Error(ErrorKind::DimensionMismatch, where + ": initial schedule row width");
    s.initial_schedule.push_back(std::move(row));
  }
  if (s.initial_schedule.size() != 2 * s.depth() + 1)
    throw Error(ErrorKind::BadInitialSchedule, where + ": expected " + std::to_string(2 * s.depth() + 1) + " rows");
  for (size_t r = 0; r < s.initial_schedule.size(); ++r) {
    const IntRow &row = s.initial_schedule[r];
    bool scalar = iterator_part_zero(row, s.depth());
    for (size_t p = 0; p < params.size() && scalar; ++p) scalar = row[s.depth() + p] == 0;
    if (r % 2 == 0 && !scalar)
      throw Error(ErrorKind::BadInitialSchedule, where + ": row " + std::to_string(r) + " must be a constant");
    if (r % 2 == 1 && iterator_part_zero(row, s.depth()))
      throw Error(ErrorKind::BadInitialSchedule, where + ": row " + std::to_string(r) + " must use an iterator");
  }
  return s;
}

}  // namespace

Scop parse_scop(const std::string &text) {
  Json j = detail::parse_json(text, "scop");
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, "scop: expected an object");
  Scop scop;
  scop.parameters = detail::as_strings(detail::require(j, "parameters", "scop"), "scop.parameters");
  if (j.contains("context"))
    scop.context = detail::poly_rows_from_json(j["context"], scop.parameters.size() + 1, "scop.context");
  const Json &stmts = detail::require(j, "statements", "scop");
  if (!stmts.is_array()) throw Error(ErrorKind::SchemaError, "scop.statements: expected an array");
  for (size_t s = 0; s < stmts.size(); ++s) scop.statements.push_back(parse_statement(stmts[s], scop.parameters, s));
  return scop;
}

std::string scop_to_json(const Scop &scop) {
  Json j;
  j["parameters"] = scop.parameters;
  j["context"] = detail::poly_rows_to_json(scop.context);
  j["statements"] = Json::array();
  for (const auto &s : scop.statements) {
    Json st;
    st["name"] = s.name;
    st["iterators"] = s.iterators;
    st["domain"] = detail::poly_rows_to_json(s.domain.rows);
    st["accesses"] = Json::array();
    for (const auto &a : s.accesses) {
      Json aj;
      aj["array"] = a.array;
      aj["kind"] = to_string(a.kind);
      aj["subscripts"] = Json::array();
      for (const auto &sub : a.subscripts) aj["subscripts"].push_back(sub);
      st["accesses"].push_back(aj);
    }
    st["initial_schedule"] = Json::array();
    for (const auto &r : s.initial_schedule) st["initial_schedule"].push_back(r);
    j["statements"].push_back(st);
  }
  return detail::dump(j);
}

}  // namespace polysched
