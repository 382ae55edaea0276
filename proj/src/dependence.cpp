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
#include "polysched/dependence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "json_util.hpp"
#include "polysched/error.hpp"
#include "polysched/ilp.hpp"

namespace polysched {

using detail::Json;

std::string to_string(DepKind kind) {
  switch (kind) {
    case DepKind::RAW: return "RAW";
    case DepKind::WAR: return "WAR";
    case DepKind::WAW: return "WAW";
  }
  return "RAW";
}

size_t Dependence::source_depth() const {
  return polyhedron.columns.size() - polyhedron.n_params - target_depth();
}

size_t Dependence::target_depth() const {
  size_t n = 0;
  for (size_t c = 0; c < polyhedron.columns.size() - polyhedron.n_params; ++c)
    if (!polyhedron.columns[c].empty() && polyhedron.columns[c].back() == '\'') ++n;
  return n;
}

bool is_empty(const Polyhedron &p, const std::vector<PolyRow> &context, const std::vector<PolyRow> &extra) {
  ilp::Problem prob;
  prob.set_tie_break(ilp::TieBreak::None);
  for (size_t c = 0; c < p.columns.size(); ++c)
    prob.add_variable(p.columns[c], std::nullopt, std::nullopt, ilp::Domain::Continuous);
  auto add = [&](const PolyRow &r) {
    ilp::AffineForm f{Rational(r.coef.back())};
    for (size_t c = 0; c + 1 < r.coef.size(); ++c)
      if (r.coef[c] != 0) f.add(c, r.coef[c]);
    prob.add_constraint(std::move(f), r.rel == RowRel::Equal ? ilp::Relation::Equal : ilp::Relation::GreaterEqual);
  };
  for (const auto &r : p.rows) add(r);
  for (const auto &r : embed_context(context, p)) add(r);
  for (const auto &r : extra) add(r);
  return !ilp::is_feasible_relaxation(prob);
}

namespace {

// Maps a row over (iterators, parameters, 1) of one statement into the
// dependence layout, scaled by `sign`.
void accumulate(IntRow &out, const IntRow &row, size_t depth, size_t iter_offset, size_t param_offset, size_t n_params,
                int64_t sign) {
  for (size_t k = 0; k < depth; ++k) out[iter_offset + k] += sign * row[k];
  for (size_t p = 0; p < n_params; ++p) out[param_offset + p] += sign * row[depth + p];
  out.back() += sign * row.back();
}

bool constant_only(const IntRow &row) {
  for (size_t c = 0; c + 1 < row.size(); ++c)
    if (row[c] != 0) return false;
  return true;
}

enum class Triviality { Tautology, Contradiction, Other };

Triviality classify(const PolyRow &r) {
  if (!constant_only(r.coef)) return Triviality::Other;
  int64_t c = r.coef.back();
  bool holds = r.rel == RowRel::Equal ? c == 0 : c >= 0;
  return holds ? Triviality::Tautology : Triviality::Contradiction;
}

// Appends r unless it is a tautology or already present; returns false on a
// constant contradiction.
bool push_row(std::vector<PolyRow> &rows, PolyRow r) {
  switch (classify(r)) {
    case Triviality::Tautology: return true;
    case Triviality::Contradiction: return false;
    case Triviality::Other: break;
  }
  if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(std::move(r));
  return true;
}

}  // namespace

std::vector<Dependence> compute_dependences(const Scop &scop) {
  const size_t np = scop.parameters.size();
  const std::vector<PolyRow> context = scop.effective_context();
  std::vector<Dependence> out;
  for (size_t si = 0; si < scop.statements.size(); ++si) {
    const Statement &S = scop.statements[si];
    for (size_t ri = 0; ri < scop.statements.size(); ++ri) {
      const Statement &R = scop.statements[ri];
      const size_t ds = S.depth(), dr = R.depth();
      const size_t width = ds + dr + np + 1;
      const size_t poff = ds + dr;

      Polyhedron base;
      base.columns = S.iterators;
      for (const auto &it : R.iterators) base.columns.push_back(it + "'");
      base.columns.insert(base.columns.end(), scop.parameters.begin(), scop.parameters.end());
      base.n_params = np;
      for (const auto &d : S.domain.rows) {
        PolyRow r{d.rel, IntRow(width, 0)};
        accumulate(r.coef, d.coef, ds, 0, poff, np, 1);
        push_row(base.rows, std::move(r));
      }
      for (const auto &d : R.domain.rows) {
        PolyRow r{d.rel, IntRow(width, 0)};
        accumulate(r.coef, d.coef, dr, ds, poff, np, 1);
        push_row(base.rows, std::move(r));
      }

      for (size_t ai = 0; ai < S.accesses.size(); ++ai) {
        const Access &a = S.accesses[ai];
        for (size_t bi = 0; bi < R.accesses.size(); ++bi) {
          const Access &b = R.accesses[bi];
          if (a.array != b.array) continue;
          if (a.kind == AccessKind::Read && b.kind == AccessKind::Read) continue;
          if (a.subscripts.size() != b.subscripts.size())
            throw Error(ErrorKind::UnsupportedAccess, "array '" + a.array + "' accessed with different ranks");

          Polyhedron same = base;
          bool possible = true;
          for (size_t q = 0; q < a.subscripts.size() && possible; ++q) {
            PolyRow r{RowRel::Equal, IntRow(width, 0)};
            accumulate(r.coef, a.subscripts[q], ds, 0, poff, np, 1);
            accumulate(r.coef, b.subscripts[q], dr, ds, poff, np, -1);
            possible = push_row(same.rows, std::move(r));
          }
          if (!possible || is_empty(same, context)) continue;

          DepKind kind = a.kind == AccessKind::Write ? (b.kind == AccessKind::Write ? DepKind::WAW : DepKind::RAW)
                                                     : DepKind::WAR;
          const size_t levels = std::min(S.initial_schedule.size(), R.initial_schedule.size());
          Polyhedron prefix = same;  // accumulates equal dates on earlier rows
          for (size_t lvl = 0; lvl < levels; ++lvl) {
            PolyRow later{RowRel::GreaterEqual, IntRow(width, 0)};
            accumulate(later.coef, R.initial_schedule[lvl], dr, ds, poff, np, 1);
            accumulate(later.coef, S.initial_schedule[lvl], ds, 0, poff, np, -1);
            PolyRow equal{RowRel::Equal, later.coef};
            later.coef.back() -= 1;

            Polyhedron piece = prefix;
            if (push_row(piece.rows, later) && !is_empty(piece, context)) {
              Dependence dep;
              dep.source = si;
              dep.target = ri;
              dep.kind = kind;
              dep.array = a.array;
              dep.level = lvl;
              dep.source_access = ai;
              dep.target_access = bi;
              dep.polyhedron = std::move(piece);
              out.push_back(std::move(dep));
            }
            if (!push_row(prefix.rows, std::move(equal))) break;
          }
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Dependence &x, const Dependence &y) {
    return std::tie(x.source, x.target, x.array, x.level, x.source_access, x.target_access) <
           std::tie(y.source, y.target, y.array, y.level, y.source_access, y.target_access);
  });
  return out;
}

std::vector<std::vector<size_t>> scc_condense(size_t n_statements, const std::vector<Dependence> &deps) {
  std::vector<size_t> nodes(n_statements);
  for (size_t i = 0; i < n_statements; ++i) nodes[i] = i;
  return scc_condense(nodes, deps);
}

std::vector<std::vector<size_t>> scc_condense(const std::vector<size_t> &nodes, const std::vector<Dependence> &deps) {
  std::map<size_t, size_t> local;  // statement -> position in nodes
  for (size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
  const size_t n = nodes.size();
  std::vector<std::set<size_t>> succ(n);
  for (const auto &d : deps) {
    if (d.satisfied()) continue;
    auto s = local.find(d.source), t = local.find(d.target);
    if (s == local.end() || t == local.end() || s->second == t->second) continue;
    succ[s->second].insert(t->second);
  }

  // Tarjan.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<size_t> stack;
  int counter = 0, n_comp = 0;
  std::function<void(size_t)> visit = [&](size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (size_t w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = n_comp;
        if (w == v) break;
      }
      ++n_comp;
    }
  };
  for (size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);

  std::vector<std::vector<size_t>> members(n_comp);
  for (size_t v = 0; v < n; ++v) members[comp[v]].push_back(nodes[v]);
  for (auto &m : members) std::sort(m.begin(), m.end());
  std::vector<std::set<int>> csucc(n_comp);
  std::vector<int> indeg(n_comp, 0);
  for (size_t v = 0; v < n; ++v)
    for (size_t w : succ[v])
      if (comp[v] != comp[w] && csucc[comp[v]].insert(comp[w]).second) ++indeg[comp[w]];

  using Item = std::pair<size_t, int>;  // (min statement, component)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
  for (int c = 0; c < n_comp; ++c)
    if (indeg[c] == 0) ready.push({members[c].front(), c});
  std::vector<std::vector<size_t>> order;
  while (!ready.empty()) {
    int c = ready.top().second;
    ready.pop();
    order.push_back(members[c]);
    for (int d : csucc[c])
      if (--indeg[d] == 0) ready.push({members[d].front(), d});
  }
  return order;
}

std::string deps_to_json(const std::vector<Dependence> &deps) {
  Json out = Json::array();
  for (const auto &d : deps) {
    Json j;
    j["source"] = d.source;
    j["target"] = d.target;
    j["kind"] = to_string(d.kind);
    j["array"] = d.array;
    j["level"] = d.level;
    j["source_access"] = d.source_access;
    j["target_access"] = d.target_access;
    j["columns"] = d.polyhedron.columns;
    j["polyhedron"] = detail::poly_rows_to_json(d.polyhedron.rows);
    j["satisfied_at"] = d.satisfied_at ? Json(*d.satisfied_at) : Json(nullptr);
    out.push_back(j);
  }
  Json doc;
  doc["dependences"] = out;
  return detail::dump(doc);
}

std::vector<Dependence> parse_deps(const std::string &text, const Scop &scop) {
  Json doc = detail::parse_json(text, "dependences");
  const Json &list = detail::require(doc, "dependences", "dependences");
  if (!list.is_array()) throw Error(ErrorKind::SchemaError, "dependences: expected an array");
  std::vector<Dependence> deps;
  for (size_t i = 0; i < list.size(); ++i) {
    std::string where = "dependences[" + std::to_string(i) + "]";
    const Json &j = list[i];
    Dependence d;
    auto index = [&](const char *key) {
      int64_t v = detail::as_int(detail::require(j, key, where), where + "." + key);
      if (v < 0) throw Error(ErrorKind::SchemaError, where + "." + key + ": negative");
      return static_cast<size_t>(v);
    };
    d.source = index("source");
    d.target = index("target");
    if (d.source >= scop.statements.size() || d.target >= scop.statements.size())
      throw Error(ErrorKind::SchemaError, where + ": statement index out of range");
    std::string kind = detail::as_string(detail::require(j, "kind", where), where + ".kind");
    if (kind == "RAW") d.kind = DepKind::RAW;
    else if (kind == "WAR") d.kind = DepKind::WAR;
    else if (kind == "WAW") d.kind = DepKind::WAW;
    else throw Error(ErrorKind::SchemaError, where + ".kind: unknown kind '" + kind + "'");
    d.array = detail::as_string(detail::require(j, "array", where), where + ".array");
    if (j.contains("level")) d.level = index("level");
    if (j.contains("source_access")) d.source_access = index("source_access");
    if (j.contains("target_access")) d.target_access = index("target_access");

    const Statement &S = scop.statements[d.source];
    const Statement &R = scop.statements[d.target];
    d.polyhedron.columns = S.iterators;
    for (const auto &it : R.iterators) d.polyhedron.columns.push_back(it + "'");
    d.polyhedron.columns.insert(d.polyhedron.columns.end(), scop.parameters.begin(), scop.parameters.end());
    d.polyhedron.n_params = scop.parameters.size();
    d.polyhedron.rows =
        detail::poly_rows_from_json(detail::require(j, "polyhedron", where), d.polyhedron.width(), where + ".polyhedron");
    if (j.contains("satisfied_at") && !j["satisfied_at"].is_null()) d.satisfied_at = index("satisfied_at");
    deps.push_back(std::move(d));
  }
  return deps;
}

}  // namespace polysched
