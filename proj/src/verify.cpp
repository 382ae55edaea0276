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
#include "polysched/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "json_util.hpp"
#include "polysched/error.hpp"
#include "polysched/ilp.hpp"

namespace polysched {

namespace {

using detail::Json;

constexpr size_t kMaxListed = 1000;

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct BoundRow {
  RowRel rel;
  IntRow coef;  // over the free variables, then the constant
  int last;     // highest variable with a nonzero coefficient, -1 if none
};

class PointWalker {
 public:
  PointWalker(std::vector<BoundRow> rows, std::vector<int64_t> lo, std::vector<int64_t> hi, size_t budget)
      : rows_(std::move(rows)), lo_(std::move(lo)), hi_(std::move(hi)), budget_(budget), point_(lo_.size()) {}

  std::vector<std::vector<int64_t>> run() {
    for (const auto &r : rows_)
      if (r.last < 0 && !holds(r)) return {};
    walk(0);
    return std::move(out_);
  }

 private:
  bool holds(const BoundRow &r) const {
    int64_t v = r.coef.back();
    for (size_t k = 0; k < point_.size(); ++k) v += r.coef[k] * point_[k];
    return r.rel == RowRel::Equal ? v == 0 : v >= 0;
  }

  void walk(size_t k) {
    if (k == point_.size()) {
      if (out_.size() == budget_) throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(budget_) + " points");
      out_.push_back(point_);
      return;
    }
    for (int64_t v = lo_[k]; v <= hi_[k]; ++v) {
      if (++visited_ > 64 * budget_ + 1024)
        throw Error(ErrorKind::BudgetExceeded, "bounding box too large to enumerate");
      point_[k] = v;
      bool ok = true;
      for (const auto &r : rows_) {
        if (r.last == static_cast<int>(k) && !holds(r)) {
          ok = false;
          break;
        }
      }
      if (ok) walk(k + 1);
    }
    point_[k] = 0;
  }

  std::vector<BoundRow> rows_;
  std::vector<int64_t> lo_, hi_;
  size_t budget_;
  std::vector<int64_t> point_;
  std::vector<std::vector<int64_t>> out_;
  size_t visited_ = 0;
};

Json row_json(const std::vector<int64_t> &v) { return Json(v); }

// Affine expression of a schedule row, e.g. "i + 2*T0 - N + 1".
std::string row_text(const Scop &scop, const Schedule &sched, size_t s, const IntRow &row) {
  const RowLayout l = row_layout(scop, sched, s);
  const auto &st = scop.statements[s];
  std::ostringstream os;
  bool first = true;
  auto term = [&](int64_t c, const std::string &name) {
    if (c == 0) return;
    int64_t a = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    if (a != 1 || name.empty()) os << a;
    if (a != 1 && !name.empty()) os << "*";
    os << name;
    first = false;
  };
  for (size_t k = 0; k < l.depth; ++k) term(row[k], st.iterators[k]);
  for (size_t k = 0; k < l.tiles; ++k) term(row[l.depth + k], sched.statements[s].tiles[k].name);
  for (size_t k = 0; k < l.params; ++k) term(row[l.param_begin() + k], scop.parameters[k]);
  term(row.back(), "");
  if (first) os << "0";
  return os.str();
}

struct LoopNode {
  size_t dim = 0;
  int64_t lo = 0;
  int64_t hi = 0;
  bool leaf = false;
  size_t stmt = 0;
  std::set<size_t> stmts;
  std::vector<LoopNode> children;
  std::string key;
};

std::string children_key(const std::vector<LoopNode> &nodes) {
  std::string k;
  for (const auto &n : nodes) k += n.key + ";";
  return k;
}

void merge_into(std::vector<LoopNode> &into, const std::vector<LoopNode> &from) {
  for (size_t i = 0; i < into.size(); ++i) {
    into[i].lo = std::min(into[i].lo, from[i].lo);
    into[i].hi = std::max(into[i].hi, from[i].hi);
    merge_into(into[i].children, from[i].children);
  }
}

std::vector<LoopNode> build_nodes(const std::vector<TraceEntry> &e, size_t begin, size_t end, size_t k, size_t dims) {
  std::vector<LoopNode> out;
  if (k == dims) {
    for (size_t i = begin; i < end; ++i) {
      if (!out.empty() && out.back().stmt == e[i].statement) continue;
      LoopNode n;
      n.leaf = true;
      n.stmt = e[i].statement;
      n.stmts = {n.stmt};
      n.key = "S" + std::to_string(n.stmt);
      out.push_back(std::move(n));
    }
    return out;
  }
  size_t i = begin;
  while (i < end) {
    size_t j = i;
    while (j < end && e[j].date[k] == e[i].date[k]) ++j;
    LoopNode n;
    n.dim = k;
    n.lo = n.hi = e[i].date[k];
    n.children = build_nodes(e, i, j, k + 1, dims);
    n.key = "d" + std::to_string(k) + "(" + children_key(n.children) + ")";
    for (const auto &c : n.children) n.stmts.insert(c.stmts.begin(), c.stmts.end());
    if (!out.empty() && out.back().key == n.key) {
      out.back().hi = n.hi;
      merge_into(out.back().children, n.children);
    } else {
      out.push_back(std::move(n));
    }
    i = j;
  }
  return out;
}

void render(const Scop &scop, const Schedule *sched, const std::vector<LoopNode> &nodes, int indent,
            std::ostringstream &os) {
  for (const auto &n : nodes) {
    os << std::string(indent, ' ');
    if (n.leaf) {
      const auto &st = scop.statements[n.stmt];
      os << st.name << "(";
      for (size_t k = 0; k < st.iterators.size(); ++k) os << (k ? ", " : "") << st.iterators[k];
      os << ")\n";
      continue;
    }
    if (n.lo == n.hi)
      os << "c" << n.dim << " = " << n.lo;
    else
      os << "for c" << n.dim << " = " << n.lo << " .. " << n.hi;
    if (sched) {
      os << "  #";
      for (size_t s : n.stmts)
        os << " " << scop.statements[s].name << ": " << row_text(scop, *sched, s, sched->statements[s].rows[n.dim]);
    }
    os << "\n";
    render(scop, sched, n.children, indent + 2, os);
  }
}

}  // namespace

std::vector<int64_t> resolve_params(const Scop &scop, const ParamValues &params, const EnumerateOptions &options) {
  for (const auto &[name, value] : params) {
    (void)value;
    if (std::find(scop.parameters.begin(), scop.parameters.end(), name) == scop.parameters.end())
      throw Error(ErrorKind::UnknownSymbol, "unknown parameter '" + name + "'");
  }
  std::vector<int64_t> out;
  for (const auto &p : scop.parameters) {
    auto it = params.find(p);
    out.push_back(it == params.end() ? options.default_param : it->second);
  }
  return out;
}

std::vector<std::vector<int64_t>> enumerate_points(const Polyhedron &p, const std::vector<int64_t> &params,
                                                   size_t budget) {
  if (params.size() != p.n_params) throw Error(ErrorKind::DimensionMismatch, "parameter value count");
  const size_t n = p.param_offset();
  std::vector<BoundRow> rows;
  ilp::Problem prob;
  for (size_t k = 0; k < n; ++k) prob.add_variable(p.columns[k], std::nullopt, std::nullopt, ilp::Domain::Continuous);
  for (const auto &r : p.rows) {
    BoundRow b{r.rel, IntRow(r.coef.begin(), r.coef.begin() + n), -1};
    int64_t c = r.coef.back();
    for (size_t q = 0; q < p.n_params; ++q) c += r.coef[n + q] * params[q];
    b.coef.push_back(c);
    ilp::AffineForm f{Rational(c)};
    for (size_t k = 0; k < n; ++k) {
      if (b.coef[k] == 0) continue;
      b.last = static_cast<int>(k);
      f.add(k, Rational(b.coef[k]));
    }
    prob.add_constraint(std::move(f), r.rel == RowRel::Equal ? ilp::Relation::Equal : ilp::Relation::GreaterEqual);
    rows.push_back(std::move(b));
  }
  std::vector<int64_t> lo(n), hi(n);
  for (size_t k = 0; k < n; ++k) {
    auto low = ilp::minimize_relaxation(prob, ilp::AffineForm::variable(k));
    if (low.status == ilp::Status::Infeasible) return {};
    auto high = ilp::minimize_relaxation(prob, ilp::AffineForm::variable(k, Rational(-1)));
    if (low.status == ilp::Status::Unbounded || high.status == ilp::Status::Unbounded)
      throw Error(ErrorKind::UnboundedDomain, "variable '" + p.columns[k] + "' is unbounded");
    lo[k] = low.value.ceil().to_int64();
    hi[k] = (-high.value).floor().to_int64();
    if (lo[k] > hi[k]) return {};
  }
  return PointWalker(std::move(rows), std::move(lo), std::move(hi), budget).run();
}

std::vector<int64_t> instance_date(const Scop &scop, const Schedule &sched, size_t stmt,
                                   const std::vector<int64_t> &iteration, const std::vector<int64_t> &params) {
  if (iteration.size() != scop.statements.at(stmt).depth())
    throw Error(ErrorKind::DimensionMismatch, "iteration vector of " + scop.statements[stmt].name);
  std::vector<int64_t> base = iteration;
  base.insert(base.end(), params.begin(), params.end());
  std::vector<int64_t> full = iteration;
  for (const auto &t : sched.statements[stmt].tiles) full.push_back(floor_div(evaluate_row(t.phi, base), t.size));
  full.insert(full.end(), params.begin(), params.end());
  std::vector<int64_t> date;
  date.reserve(sched.dimensions());
  for (const auto &row : sched.statements[stmt].rows) date.push_back(evaluate_row(row, full));
  return date;
}

InstanceTrace enumerate_dates(const Scop &scop, const Schedule &sched, const ParamValues &params,
                              const EnumerateOptions &options) {
  check_schedule(scop, sched);
  const auto values = resolve_params(scop, params, options);
  InstanceTrace trace;
  for (size_t s = 0; s < scop.statements.size(); ++s) {
    size_t left = options.budget - trace.entries.size();
    for (auto &it : enumerate_points(scop.statements[s].domain, values, left)) {
      TraceEntry e{s, std::move(it), {}};
      e.date = instance_date(scop, sched, s, e.iteration, values);
      trace.entries.push_back(std::move(e));
    }
  }
  std::sort(trace.entries.begin(), trace.entries.end(), [](const TraceEntry &a, const TraceEntry &b) {
    return std::tie(a.date, a.statement, a.iteration) < std::tie(b.date, b.statement, b.iteration);
  });
  return trace;
}

LegalityReport verify_legality(const Scop &scop, const Schedule &sched, const std::vector<Dependence> &deps,
                               const ParamValues &params, const EnumerateOptions &options) {
  LegalityReport report;
  const InstanceTrace trace = enumerate_dates(scop, sched, params, options);
  const auto values = resolve_params(scop, params, options);
  report.instances_checked = trace.entries.size();
  for (size_t i = 1; i < trace.entries.size(); ++i) {
    const auto &a = trace.entries[i - 1];
    const auto &b = trace.entries[i];
    if (a.statement != b.statement || a.date != b.date) continue;
    if (report.violations.size() < kMaxListed)
      report.violations.push_back({"injectivity", 0, a.statement, b.statement, a.iteration, b.iteration, a.date, b.date});
  }
  for (size_t d = 0; d < deps.size(); ++d) {
    const auto &dep = deps[d];
    const size_t sd = dep.source_depth();
    for (const auto &pt : enumerate_points(dep.polyhedron, values, options.budget)) {
      std::vector<int64_t> src(pt.begin(), pt.begin() + sd);
      std::vector<int64_t> tgt(pt.begin() + sd, pt.end());
      auto ds = instance_date(scop, sched, dep.source, src, values);
      auto dt = instance_date(scop, sched, dep.target, tgt, values);
      size_t k = 0;
      while (k < ds.size() && ds[k] == dt[k]) ++k;
      if (k == ds.size() || ds[k] > dt[k]) {
        if (report.violations.size() < kMaxListed)
          report.violations.push_back({"order", d, dep.source, dep.target, src, tgt, ds, dt});
      } else if (sched.parallel[k] && report.parallel_flag_errors.size() < kMaxListed) {
        report.parallel_flag_errors.push_back({k, d, src, tgt});
      }
    }
  }
  return report;
}

std::string report_to_json(const Scop &scop, const LegalityReport &report) {
  Json doc = Json::object();
  Json violations = Json::array();
  for (const auto &v : report.violations) {
    Json j = Json::object();
    j["kind"] = v.kind;
    if (v.kind == "injectivity") {
      j["statement"] = scop.statements[v.source].name;
      j["iterations"] = Json::array({row_json(v.source_iteration), row_json(v.target_iteration)});
      j["date"] = row_json(v.source_date);
    } else {
      j["dependence"] = v.dependence;
      j["source"] = scop.statements[v.source].name;
      j["target"] = scop.statements[v.target].name;
      j["source_iteration"] = row_json(v.source_iteration);
      j["target_iteration"] = row_json(v.target_iteration);
      j["source_date"] = row_json(v.source_date);
      j["target_date"] = row_json(v.target_date);
    }
    violations.push_back(std::move(j));
  }
  Json flags = Json::array();
  for (const auto &e : report.parallel_flag_errors) {
    Json j = Json::object();
    j["dimension"] = e.dimension;
    j["dependence"] = e.dependence;
    j["source_iteration"] = row_json(e.source_iteration);
    j["target_iteration"] = row_json(e.target_iteration);
    flags.push_back(std::move(j));
  }
  doc["violations"] = std::move(violations);
  doc["parallel_flag_errors"] = std::move(flags);
  doc["instances_checked"] = report.instances_checked;
  return detail::dump(doc);
}

std::string print_loops(const InstanceTrace &trace, const Scop &scop) {
  return print_loops(trace, scop, nullptr);
}

std::string print_loops(const InstanceTrace &trace, const Scop &scop, const Schedule *sched) {
  if (trace.entries.empty()) return "";
  const size_t dims = trace.entries.front().date.size();
  auto nodes = build_nodes(trace.entries, 0, trace.entries.size(), 0, dims);
  std::ostringstream os;
  render(scop, sched, nodes, 0, os);
  return os.str();
}

}  // namespace polysched
