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
#include "polysched/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "json_util.hpp"
#include "polysched/error.hpp"
#include "polysched/matrix.hpp"

namespace polysched {

using detail::Json;

std::string to_string(DimKind kind) {
  switch (kind) {
    case DimKind::Solve: return "solve";
    case DimKind::Distribute: return "distribute";
    case DimKind::Tile: return "tile";
    case DimKind::Pad: return "pad";
  }
  return "solve";
}

namespace {

DimKind dim_kind_from_string(const std::string &s) {
  if (s == "solve") return DimKind::Solve;
  if (s == "distribute") return DimKind::Distribute;
  if (s == "tile") return DimKind::Tile;
  if (s == "pad") return DimKind::Pad;
  throw Error(ErrorKind::SchemaError, "unknown dimension kind '" + s + "'");
}

}  // namespace

RowLayout row_layout(const Scop &scop, const Schedule &sched, size_t stmt) {
  RowLayout l;
  l.depth = scop.statements[stmt].depth();
  l.tiles = sched.statements[stmt].tiles.size();
  l.params = scop.parameters.size();
  return l;
}

bool is_scalar_row(const IntRow &row, const RowLayout &layout) {
  for (size_t k = 0; k < layout.depth + layout.tiles; ++k)
    if (row[k] != 0) return false;
  return true;
}

size_t iterator_rank(const Scop &scop, const Schedule &sched, size_t stmt) {
  RowLayout l = row_layout(scop, sched, stmt);
  RatMatrix m(0, l.depth);
  for (const auto &row : sched.statements[stmt].rows) {
    // Tile rows are functions of point rows already present; only the
    // iterator part carries rank.
    std::vector<Rational> it(row.begin(), row.begin() + l.depth);
    m.append_row(it);
  }
  if (l.depth == 0) return 0;
  return rank(m);
}

void check_schedule(const Scop &scop, const Schedule &sched) {
  if (sched.statements.size() != scop.statements.size())
    throw Error(ErrorKind::IncompleteSchedule, "schedule covers " + std::to_string(sched.statements.size()) +
                                                   " statements, scop has " + std::to_string(scop.statements.size()));
  size_t dims = sched.bands.size();
  if (sched.parallel.size() != dims)
    throw Error(ErrorKind::DimensionMismatch, "parallel flags and bands differ in length");
  for (size_t s = 0; s < sched.statements.size(); ++s) {
    RowLayout l = row_layout(scop, sched, s);
    const auto &st = sched.statements[s];
    if (st.rows.size() != dims)
      throw Error(ErrorKind::IncompleteSchedule, "statement " + std::to_string(s) + " has " +
                                                     std::to_string(st.rows.size()) + " rows, expected " +
                                                     std::to_string(dims));
    for (const auto &row : st.rows)
      if (row.size() != l.width()) throw Error(ErrorKind::DimensionMismatch, "schedule row width");
    for (const auto &t : st.tiles) {
      if (t.phi.size() != l.depth + l.params + 1) throw Error(ErrorKind::DimensionMismatch, "tile row width");
      if (t.size < 1) throw Error(ErrorKind::SchemaError, "tile size must be positive");
    }
  }
}

Schedule initial_schedule(const Scop &scop) {
  Schedule sched;
  size_t dims = 0;
  for (const auto &s : scop.statements) dims = std::max(dims, s.initial_schedule.size());
  for (const auto &s : scop.statements) {
    StatementSchedule st;
    st.rows = s.initial_schedule;
    while (st.rows.size() < dims) st.rows.push_back(IntRow(s.depth() + scop.parameters.size() + 1, 0));
    sched.statements.push_back(std::move(st));
  }
  for (size_t d = 0; d < dims; ++d) {
    sched.bands.push_back(static_cast<int>(d));
    sched.parallel.push_back(false);
    sched.dims.push_back({DimKind::Pad, {}});
  }
  return sched;
}

namespace {

std::string matrix_text(const Scop &scop, const Schedule &sched) {
  std::ostringstream os;
  for (size_t s = 0; s < scop.statements.size(); ++s) {
    const Statement &stmt = scop.statements[s];
    const StatementSchedule &st = sched.statements[s];
    os << stmt.name << " (";
    for (const auto &it : stmt.iterators) os << it << " ";
    for (const auto &t : st.tiles) os << t.name << " ";
    os << "|";
    for (const auto &p : scop.parameters) os << " " << p;
    os << " | 1)\n";
    for (const auto &t : st.tiles) {
      os << "  " << t.name << " = floor([";
      for (size_t k = 0; k < t.phi.size(); ++k) os << (k ? " " : "") << t.phi[k];
      os << "] / " << t.size << ")\n";
    }
    for (const auto &row : st.rows) {
      os << "  [";
      for (size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k];
      os << "]\n";
    }
  }
  os << "bands:";
  for (int b : sched.bands) os << " " << b;
  os << "\nparallel:";
  for (bool p : sched.parallel) os << " " << (p ? 1 : 0);
  os << "\n";
  return os.str();
}

}  // namespace

std::string emit_schedule(const Scop &scop, const Schedule &sched, ScheduleFormat format) {
  check_schedule(scop, sched);
  if (format == ScheduleFormat::MatrixText) return matrix_text(scop, sched);
  Json j;
  j["statements"] = Json::array();
  for (size_t s = 0; s < scop.statements.size(); ++s) {
    Json st;
    st["name"] = scop.statements[s].name;
    st["tiles"] = Json::array();
    for (const auto &t : sched.statements[s].tiles) {
      Json tj;
      tj["name"] = t.name;
      tj["phi"] = t.phi;
      tj["size"] = t.size;
      st["tiles"].push_back(tj);
    }
    st["rows"] = Json::array();
    for (const auto &r : sched.statements[s].rows) st["rows"].push_back(r);
    j["statements"].push_back(st);
  }
  j["bands"] = sched.bands;
  j["parallel"] = sched.parallel;
  j["dimensions"] = Json::array();
  for (const auto &d : sched.dims) {
    Json dj;
    dj["kind"] = to_string(d.kind);
    dj["costs"] = d.costs;
    j["dimensions"].push_back(dj);
  }
  return detail::dump(j);
}

Schedule parse_schedule(const std::string &text, const Scop &scop) {
  Json j = detail::parse_json(text, "schedule");
  detail::reject_unknown_keys(j, {"statements", "bands", "parallel", "dimensions"}, "schedule");
  Schedule sched;
  const Json &stmts = detail::require(j, "statements", "schedule");
  if (!stmts.is_array()) throw Error(ErrorKind::SchemaError, "schedule.statements: expected an array");
  for (size_t s = 0; s < stmts.size(); ++s) {
    std::string where = "schedule.statements[" + std::to_string(s) + "]";
    StatementSchedule st;
    if (stmts[s].contains("tiles")) {
      for (const auto &t : stmts[s]["tiles"]) {
        TileIterator ti;
        ti.name = detail::as_string(detail::require(t, "name", where), where + ".tiles.name");
        ti.phi = detail::as_row(detail::require(t, "phi", where), where + ".tiles.phi");
        ti.size = detail::as_int(detail::require(t, "size", where), where + ".tiles.size");
        st.tiles.push_back(std::move(ti));
      }
    }
    for (const auto &r : detail::require(stmts[s], "rows", where)) st.rows.push_back(detail::as_row(r, where + ".rows"));
    sched.statements.push_back(std::move(st));
  }
  for (const auto &b : detail::require(j, "bands", "schedule"))
    sched.bands.push_back(static_cast<int>(detail::as_int(b, "schedule.bands")));
  for (const auto &p : detail::require(j, "parallel", "schedule")) {
    if (!p.is_boolean()) throw Error(ErrorKind::SchemaError, "schedule.parallel: expected booleans");
    sched.parallel.push_back(p.get<bool>());
  }
  if (j.contains("dimensions")) {
    for (const auto &d : j["dimensions"]) {
      DimensionInfo info;
      info.kind = dim_kind_from_string(detail::as_string(detail::require(d, "kind", "schedule.dimensions"), "kind"));
      if (d.contains("costs")) info.costs = detail::as_strings(d["costs"], "schedule.dimensions.costs");
      sched.dims.push_back(std::move(info));
    }
  } else {
    sched.dims.assign(sched.bands.size(), DimensionInfo{});
  }
  check_schedule(scop, sched);
  return sched;
}

}  // namespace polysched
