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
#include "polysched/scheduler.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "polysched/error.hpp"

namespace polysched {

// ---- Fixed-row checks -------------------------------------------------------

IntRow distance_row(const Dependence &dep, const IntRow &source_row, const IntRow &target_row, size_t n_params) {
  const size_t ds = dep.source_depth(), dr = dep.target_depth();
  IntRow out(dep.polyhedron.width(), 0);
  for (size_t k = 0; k < ds; ++k) out[k] -= source_row[k];
  for (size_t k = 0; k < dr; ++k) out[ds + k] += target_row[k];
  for (size_t p = 0; p < n_params; ++p) out[ds + dr + p] += target_row[dr + p] - source_row[ds + p];
  out.back() = target_row.back() - source_row.back();
  return out;
}

namespace {

void require_untiled(const Schedule &sched) {
  for (const auto &st : sched.statements)
    if (!st.tiles.empty()) throw Error(ErrorKind::Internal, "dependence checks run on untiled schedules only");
}

IntRow dim_distance(const Scop &scop, const Schedule &sched, const Dependence &dep, size_t dim) {
  return distance_row(dep, sched.statements[dep.source].rows[dim], sched.statements[dep.target].rows[dim],
                      scop.parameters.size());
}

IntRow negated(IntRow r) {
  for (auto &v : r) v = -v;
  return r;
}

}  // namespace

bool detect_parallel(const Scop &scop, const Schedule &sched, size_t dim, const std::vector<Dependence> &deps) {
  require_untiled(sched);
  const auto context = scop.effective_context();
  for (const auto &d : deps) {
    if (d.satisfied_at && *d.satisfied_at < dim) continue;
    std::vector<PolyRow> extra;
    for (size_t j = 0; j < dim; ++j) extra.push_back({RowRel::Equal, dim_distance(scop, sched, d, j)});
    IntRow delta = dim_distance(scop, sched, d, dim);
    IntRow forward = delta, backward = negated(delta);
    forward.back() -= 1;
    backward.back() -= 1;
    extra.push_back({RowRel::GreaterEqual, forward});
    if (!is_empty(d.polyhedron, context, extra)) return false;
    extra.back() = {RowRel::GreaterEqual, backward};
    if (!is_empty(d.polyhedron, context, extra)) return false;
  }
  return true;
}

size_t remove_satisfied(const Scop &scop, const Schedule &sched, std::vector<Dependence> &deps) {
  require_untiled(sched);
  const auto context = scop.effective_context();
  const size_t dims = sched.dimensions();
  size_t count = 0;
  for (auto &d : deps) {
    if (d.satisfied() || dims == 0) continue;
    std::vector<PolyRow> equal;
    for (size_t j = 0; j < dims && !d.satisfied(); ++j) {
      IntRow delta = dim_distance(scop, sched, d, j);
      if (is_empty(d.polyhedron, context, {{RowRel::GreaterEqual, negated(delta)}})) d.satisfied_at = j;
      equal.push_back({RowRel::Equal, delta});
    }
    if (!d.satisfied() && is_empty(d.polyhedron, context, equal)) d.satisfied_at = dims - 1;
    if (d.satisfied()) ++count;
  }
  return count;
}

std::vector<IntRow> distribute_dim(const Scop &scop, const std::vector<std::vector<size_t>> &groups,
                                   const std::vector<Dependence> &deps) {
  const size_t n = scop.statements.size();
  std::vector<int> pos(n, -1);
  for (size_t g = 0; g < groups.size(); ++g)
    for (size_t s : groups[g]) {
      if (s >= n || pos[s] >= 0) throw Error(ErrorKind::BadGroup, "groups must partition the statements");
      pos[s] = static_cast<int>(g);
    }
  for (size_t s = 0; s < n; ++s)
    if (pos[s] < 0) throw Error(ErrorKind::BadGroup, "statement " + std::to_string(s) + " is in no group");
  for (const auto &d : deps) {
    if (d.satisfied()) continue;
    if (pos[d.source] > pos[d.target])
      throw Error(ErrorKind::IllegalDistribution, "dependence " + scop.statements[d.source].name + " -> " +
                                                      scop.statements[d.target].name + " on '" + d.array +
                                                      "' would run backwards");
  }
  std::vector<IntRow> rows;
  for (size_t s = 0; s < n; ++s) {
    IntRow r(scop.statements[s].depth() + scop.parameters.size() + 1, 0);
    r.back() = pos[s];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::vector<size_t>> order_groups(std::vector<std::vector<size_t>> groups,
                                              const std::vector<Dependence> &deps) {
  for (auto &g : groups) std::sort(g.begin(), g.end());
  std::map<size_t, size_t> of;
  for (size_t g = 0; g < groups.size(); ++g)
    for (size_t s : groups[g]) of[s] = g;
  std::vector<std::set<size_t>> succ(groups.size());
  std::vector<int> indeg(groups.size(), 0);
  for (const auto &d : deps) {
    if (d.satisfied()) continue;
    auto a = of.find(d.source), b = of.find(d.target);
    if (a == of.end() || b == of.end() || a->second == b->second) continue;
    if (succ[a->second].insert(b->second).second) ++indeg[b->second];
  }
  using Item = std::pair<size_t, size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
  for (size_t g = 0; g < groups.size(); ++g)
    if (indeg[g] == 0) ready.push({groups[g].front(), g});
  std::vector<std::vector<size_t>> out;
  while (!ready.empty()) {
    size_t g = ready.top().second;
    ready.pop();
    out.push_back(groups[g]);
    for (size_t h : succ[g])
      if (--indeg[h] == 0) ready.push({groups[h].front(), h});
  }
  if (out.size() != groups.size())
    throw Error(ErrorKind::IllegalDistribution, "dependences between the requested groups form a cycle");
  return out;
}

// ---- The iterative scheduler ------------------------------------------------

namespace {

enum class Progression { Orthant, Disjunctive };

struct DirectiveState {
  Directive directive;
  bool active = true;
};

class Scheduler {
 public:
  Scheduler(const Scop &scop, std::vector<Dependence> &deps, const Config &config, const SchedulerOptions &options)
      : scop_(scop), deps_(deps), config_(config), options_(options), context_(scop.effective_context()) {
    for (const auto &d : effective_directives(config, scop)) directives_.push_back({d, true});
  }

  Schedule run();

 private:
  size_t n() const { return scop_.statements.size(); }
  RatMatrix history(size_t s) const;
  bool full(size_t s) const { return history(s).rows() >= scop_.statements[s].depth(); }
  std::vector<bool> frozen() const;
  std::vector<const Dependence *> unsatisfied() const;

  void new_band();
  void append(const std::vector<IntRow> &rows, DimensionInfo info);
  void distribute(const std::vector<std::vector<size_t>> &groups);
  std::vector<std::vector<size_t>> smartfuse_groups() const;
  bool vectorized(size_t s) const;
  bool crosses(const std::vector<std::vector<size_t>> &groups) const;

  void solve_dimension(const DimensionPlan &plan);
  bool replay_original(const DimensionPlan &plan);
  std::optional<std::vector<IntRow>> solve(const DimensionPlan &plan, Progression mode, bool commit);
  ilp::Problem build(const DimensionPlan &plan, Progression mode, const std::vector<size_t> &directives,
                     bool objectives, CoefficientVars &vars) const;
  void add_custom(const ConstraintExpr &e, const CoefficientVars &vars, ilp::Problem &prob) const;
  bool add_directive(const Directive &d, const CoefficientVars &vars, ilp::Problem &prob) const;
  std::optional<std::vector<IntRow>> run_ilp(ilp::Problem &prob, const CoefficientVars &vars) const;
  TrialResult trial(const DimensionPlan &base, const std::vector<std::string> &costs);

  const Scop &scop_;
  std::vector<Dependence> &deps_;
  const Config &config_;
  const SchedulerOptions &options_;
  std::vector<PolyRow> context_;
  Schedule sched_;
  int band_ = 0;
  std::vector<DirectiveState> directives_;
  bool stalled_ = false;
};

RatMatrix Scheduler::history(size_t s) const {
  const size_t depth = scop_.statements[s].depth();
  RatMatrix h(0, depth);
  for (const auto &row : sched_.statements[s].rows) {
    bool scalar = true;
    for (size_t k = 0; k < depth; ++k) scalar = scalar && row[k] == 0;
    if (scalar) continue;
    std::vector<Rational> it(row.begin(), row.begin() + depth);
    RatMatrix grown = h;
    grown.append_row(it);
    if (rank(grown) > h.rows()) h = std::move(grown);  // repeated directions add nothing
  }
  return h;
}

std::vector<bool> Scheduler::frozen() const {
  std::vector<bool> f(n());
  for (size_t s = 0; s < n(); ++s) f[s] = full(s);
  return f;
}

std::vector<const Dependence *> Scheduler::unsatisfied() const {
  std::vector<const Dependence *> out;
  for (const auto &d : deps_)
    if (!d.satisfied()) out.push_back(&d);
  return out;
}

void Scheduler::new_band() {
  if (!sched_.bands.empty() && sched_.bands.back() == band_) ++band_;
}

void Scheduler::append(const std::vector<IntRow> &rows, DimensionInfo info) {
  const size_t dim = sched_.dimensions();
  for (size_t s = 0; s < n(); ++s) sched_.statements[s].rows.push_back(rows[s]);
  sched_.bands.push_back(band_);
  sched_.dims.push_back(std::move(info));
  bool parallel = detect_parallel(scop_, sched_, dim, deps_);
  for (const auto &ds : directives_) {
    const Directive &d = ds.directive;
    if (d.kind == DirectiveKind::Sequential && rows[d.statement][d.loop] != 0) parallel = false;
  }
  sched_.parallel.push_back(parallel);
}

void Scheduler::distribute(const std::vector<std::vector<size_t>> &groups) {
  std::vector<IntRow> rows = distribute_dim(scop_, groups, deps_);
  new_band();
  append(rows, {DimKind::Distribute, {}});
  remove_satisfied(scop_, sched_, deps_);
  new_band();
}

bool Scheduler::vectorized(size_t s) const {
  for (const auto &ds : directives_)
    if (ds.active && ds.directive.kind == DirectiveKind::Vectorize && ds.directive.statement == s) return true;
  return false;
}

// True iff some unsatisfied dependence runs between two of the groups, so
// that distributing them satisfies it.
bool Scheduler::crosses(const std::vector<std::vector<size_t>> &groups) const {
  std::vector<size_t> of(n());
  for (size_t g = 0; g < groups.size(); ++g)
    for (size_t s : groups[g]) of[s] = g;
  for (const Dependence *d : unsatisfied())
    if (of[d->source] != of[d->target]) return true;
  return false;
}

std::vector<std::vector<size_t>> Scheduler::smartfuse_groups() const {
  auto sccs = scc_condense(n(), deps_);
  std::vector<std::vector<size_t>> groups;
  auto depths = [&](const std::vector<size_t> &g) {
    std::set<size_t> out;
    for (size_t s : g) out.insert(scop_.statements[s].depth());
    return out;
  };
  auto has_vector = [&](const std::vector<size_t> &g) {
    return std::any_of(g.begin(), g.end(), [&](size_t s) { return vectorized(s); });
  };
  for (auto &c : sccs) {
    if (!groups.empty() && depths(groups.back()) == depths(c) && !has_vector(groups.back()) && !has_vector(c)) {
      groups.back().insert(groups.back().end(), c.begin(), c.end());
      std::sort(groups.back().begin(), groups.back().end());
    } else {
      groups.push_back(c);
    }
  }
  return groups;
}

void Scheduler::add_custom(const ConstraintExpr &e, const CoefficientVars &vars, ilp::Problem &prob) const {
  bool universal = std::any_of(e.terms.begin(), e.terms.end(), [](const Term &t) {
    return t.symbol.cls != SymbolClass::User && t.symbol.statement == Symbol::kAny;
  });
  const size_t instances = universal ? n() : 1;
  for (size_t inst = 0; inst < instances; ++inst) {
    ilp::AffineForm f;
    bool valid = true;
    for (const auto &t : e.terms) {
      const Symbol &sym = t.symbol;
      Rational c(t.coef);
      if (sym.cls == SymbolClass::User) {
        auto names = config_.user_variable_names();
        size_t idx = std::find(names.begin(), names.end(), sym.user) - names.begin();
        f.add(vars.user[idx], c);
        continue;
      }
      size_t s = sym.statement == Symbol::kAny ? inst : static_cast<size_t>(sym.statement);
      if (sym.cls == SymbolClass::Constant) {
        f.add(vars.cst[s], c);
        continue;
      }
      const auto &pool = sym.cls == SymbolClass::Iterator ? vars.it[s] : vars.par[s];
      if (sym.index == Symbol::kAny) {
        for (size_t v : pool) f.add(v, c);
      } else if (static_cast<size_t>(sym.index) < pool.size()) {
        f.add(pool[sym.index], c);
      } else {
        valid = false;  // a universal instance over a shallower statement
      }
    }
    if (!valid) continue;
    switch (e.rel) {
      case ExprRel::GreaterEqual:
        f.add_constant(Rational(-e.rhs));
        prob.add_constraint(std::move(f));
        break;
      case ExprRel::LessEqual:
        f *= Rational(-1);
        f.add_constant(Rational(e.rhs));
        prob.add_constraint(std::move(f));
        break;
      case ExprRel::Equal:
        f.add_constant(Rational(-e.rhs));
        prob.add_constraint(std::move(f), ilp::Relation::Equal);
        break;
    }
  }
}

// Returns false when the directive does not apply at this dimension.
bool Scheduler::add_directive(const Directive &d, const CoefficientVars &vars, ilp::Problem &prob) const {
  const size_t s = d.statement;
  if (full(s)) return false;
  const size_t depth = scop_.statements[s].depth();
  const size_t remaining = depth - history(s).rows();
  auto unit = [&]() {
    for (size_t k = 0; k < depth; ++k)
      prob.add_constraint(ilp::AffineForm::variable(vars.it[s][k]) + ilp::AffineForm(Rational(k == d.loop ? -1 : 0)),
                          ilp::Relation::Equal);
  };
  switch (d.kind) {
    case DirectiveKind::Vectorize:
      if (remaining > 1) prob.add_constraint(ilp::AffineForm::variable(vars.it[s][d.loop]), ilp::Relation::Equal);
      else unit();
      return true;
    case DirectiveKind::Parallel:
      unit();
      for (const Dependence *dep : unsatisfied()) {
        if (dep->source != s && dep->target != s) continue;
        ParametricRow f = distance_form(*dep, vars);
        for (auto &e : f) e *= Rational(-1);
        farkas_linearize(dep->polyhedron, context_, f, prob, "par");
      }
      return true;
    case DirectiveKind::Sequential:
      return false;
  }
  return false;
}

ilp::Problem Scheduler::build(const DimensionPlan &plan, Progression mode, const std::vector<size_t> &directives,
                              bool objectives, CoefficientVars &vars) const {
  ilp::Problem prob;
  prob.set_tie_break(objectives ? ilp::TieBreak::IntegerVariables : ilp::TieBreak::None);
  const std::vector<bool> fr = frozen();
  vars = declare_coefficients(scop_, config_.bounds, fr, config_.variables, prob);
  const auto unsat = unsatisfied();
  const bool feautrier =
      objectives && std::find(plan.costs.begin(), plan.costs.end(), "feautrier") != plan.costs.end();
  if (!feautrier)
    for (const Dependence *d : unsat) build_legality(*d, vars, context_, prob);

  for (size_t s = 0; s < n(); ++s) {
    if (fr[s]) continue;
    if (mode == Progression::Orthant) build_progression(history(s), vars.it[s], prob);
    else build_progression_disjunctive(history(s), vars.it[s], config_.bounds.iterators, prob);
  }
  for (const auto &e : plan.constraints) add_custom(e, vars, prob);
  for (size_t i : directives) add_directive(directives_[i].directive, vars, prob);
  if (!objectives) return prob;

  auto names = config_.user_variable_names();
  for (const auto &cost : plan.costs) {
    if (cost == "proximity") {
      for (auto &o : cost_proximity(unsat, vars, context_, scop_.parameters.size(), prob)) prob.add_objective(o);
    } else if (cost == "feautrier") {
      prob.add_objective(cost_feautrier(unsat, vars, context_, prob));
    } else if (cost == "contiguity") {
      prob.add_objective(cost_contiguity(scop_, vars, fr, prob));
    } else if (cost == "bigLoopsFirst") {
      prob.add_objective(cost_big_loops_first(scop_, vars, fr));
    } else {
      auto it = std::find(names.begin(), names.end(), cost);
      if (it == names.end()) throw Error(ErrorKind::UnknownCost, "unknown cost function '" + cost + "'");
      prob.add_objective(ilp::AffineForm::variable(vars.user[it - names.begin()]));
    }
  }
  ilp::AffineForm sum_it, sum_par, sum_cst;
  for (size_t s = 0; s < n(); ++s) {
    for (size_t v : vars.it[s]) sum_it.add(v, Rational(1));
    for (size_t v : vars.par[s]) sum_par.add(v, Rational(1));
    sum_cst.add(vars.cst[s], Rational(1));
  }
  prob.add_objective(sum_it);
  prob.add_objective(sum_par);
  prob.add_objective(sum_cst);
  return prob;
}

std::optional<std::vector<IntRow>> Scheduler::run_ilp(ilp::Problem &prob, const CoefficientVars &vars) const {
  ilp::SolveOptions so;
  so.dump = options_.ilp_dump;
  ilp::Solution sol = ilp::solve_lex_min(prob, so);
  if (sol.status == ilp::Status::Infeasible) return std::nullopt;
  if (sol.status == ilp::Status::Unbounded)
    throw Error(ErrorKind::ConfigInfeasible, "objective " + std::to_string(sol.failed_objective) + " is unbounded");
  std::vector<IntRow> rows;
  for (size_t s = 0; s < n(); ++s) {
    IntRow r;
    for (size_t v : vars.it[s]) r.push_back(sol[v].to_int64());
    for (size_t v : vars.par[s]) r.push_back(sol[v].to_int64());
    r.push_back(sol[vars.cst[s]].to_int64());
    rows.push_back(std::move(r));
  }
  return rows;
}

std::optional<std::vector<IntRow>> Scheduler::solve(const DimensionPlan &plan, Progression mode, bool commit) {
  std::vector<size_t> wanted;
  for (size_t i = 0; i < directives_.size(); ++i) {
    const auto &ds = directives_[i];
    if (!ds.active || ds.directive.kind == DirectiveKind::Sequential || full(ds.directive.statement)) continue;
    wanted.push_back(i);
  }
  CoefficientVars vars;
  auto feasible = [&](const std::vector<size_t> &dirs) {
    CoefficientVars v;
    ilp::Problem p = build(plan, mode, dirs, false, v);
    return ilp::solve_lex_min(p).status == ilp::Status::Optimal;
  };

  std::vector<size_t> accepted = wanted;
  if (!wanted.empty() && !feasible(wanted)) {
    if (!feasible({})) return std::nullopt;
    // Directives yield to legality and custom constraints: keep the ones
    // that still leave the dimension feasible, in order.
    accepted.clear();
    for (size_t i : wanted) {
      std::vector<size_t> probe = accepted;
      probe.push_back(i);
      if (feasible(probe)) {
        accepted.push_back(i);
      } else if (commit && directives_[i].directive.kind == DirectiveKind::Vectorize) {
        directives_[i].active = false;
        const Directive &d = directives_[i].directive;
        sched_.warnings.push_back("vectorize directive on " + scop_.statements[d.statement].name + " loop " +
                                  std::to_string(d.loop) + " conflicts with legality and was discarded");
      }
    }
  }
  ilp::Problem prob = build(plan, mode, accepted, true, vars);
  auto rows = run_ilp(prob, vars);
  if (rows && commit) {
    for (size_t i : accepted)
      if (directives_[i].directive.kind == DirectiveKind::Parallel) directives_[i].active = false;
  }
  return rows;
}

TrialResult Scheduler::trial(const DimensionPlan &base, const std::vector<std::string> &costs) {
  DimensionPlan plan = base;
  plan.costs = costs;
  TrialResult r;
  auto rows = solve(plan, Progression::Orthant, false);
  if (!rows) return r;
  r.feasible = true;
  r.rows = *rows;
  Schedule tmp = sched_;
  for (size_t s = 0; s < n(); ++s) tmp.statements[s].rows.push_back((*rows)[s]);
  tmp.bands.push_back(band_);
  tmp.parallel.push_back(false);
  tmp.dims.push_back({});
  r.parallel = detect_parallel(scop_, tmp, tmp.dimensions() - 1, deps_);
  std::vector<Dependence> copy = deps_;
  r.newly_satisfied = remove_satisfied(scop_, tmp, copy);
  return r;
}

// The greedy choice of earlier rows can leave no legal new row, with every
// remaining dependence inside one SCC. Each dependence at original level l
// is strictly carried by the original row l and has distance 0 on the
// original rows before it, so emitting the original row of the lowest
// pending level is always legal and satisfies that level.
bool Scheduler::replay_original(const DimensionPlan &plan) {
  auto unsat = unsatisfied();
  if (unsat.empty()) return false;
  size_t level = unsat.front()->level;
  for (const Dependence *d : unsat) level = std::min(level, d->level);
  const Schedule original = initial_schedule(scop_);
  if (level >= original.dimensions()) return false;
  std::vector<IntRow> rows;
  bool scalar = true;
  for (size_t s = 0; s < n(); ++s) {
    rows.push_back(original.statements[s].rows[level]);
    scalar = scalar && is_scalar_row(rows.back(), row_layout(scop_, original, s));
  }
  if (!plan.constraints.empty()) {
    ilp::Problem prob;
    auto vars = declare_coefficients(scop_, config_.bounds, std::vector<bool>(n(), false), config_.variables, prob);
    for (const auto &e : plan.constraints) add_custom(e, vars, prob);
    for (size_t s = 0; s < n(); ++s) {
      const size_t depth = scop_.statements[s].depth(), np = scop_.parameters.size();
      auto pin = [&](size_t var, int64_t v) {
        prob.add_constraint(ilp::AffineForm::variable(var) + ilp::AffineForm(Rational(-v)), ilp::Relation::Equal);
      };
      for (size_t k = 0; k < depth; ++k) pin(vars.it[s][k], rows[s][k]);
      for (size_t p = 0; p < np; ++p) pin(vars.par[s][p], rows[s][depth + p]);
      pin(vars.cst[s], rows[s].back());
    }
    if (!ilp::solve_lex_min(prob).optimal()) return false;
  }
  new_band();
  append(rows, {scalar ? DimKind::Distribute : DimKind::Solve, {}});
  remove_satisfied(scop_, sched_, deps_);
  new_band();
  stalled_ = false;
  return true;
}

void Scheduler::solve_dimension(const DimensionPlan &plan) {
  auto rows = solve(plan, Progression::Orthant, true);
  if (!rows && remove_satisfied(scop_, sched_, deps_) > 0) {
    new_band();
    rows = solve(plan, Progression::Orthant, true);
  }
  if (!rows) rows = solve(plan, Progression::Disjunctive, true);
  if (rows) {
    stalled_ = false;
    append(*rows, {DimKind::Solve, plan.costs});
    return;
  }
  auto groups = scc_condense(n(), deps_);
  if (crosses(groups) && !plan.forced && !stalled_) {
    size_t before = unsatisfied().size();
    distribute(groups);
    stalled_ = unsatisfied().size() == before;
    return;
  }
  if (replay_original(plan)) return;
  if (!plan.constraints.empty() || plan.forced)
    throw Error(ErrorKind::ConfigInfeasible, "no legal schedule dimension " + std::to_string(sched_.dimensions()) +
                                                 " satisfies the configured constraints and fusion");
  throw Error(ErrorKind::Internal, "no legal schedule dimension " + std::to_string(sched_.dimensions()));
}

Schedule Scheduler::run() {
  sched_.statements.resize(n());
  if (n() == 0) return sched_;
  size_t max_depth = 0;
  for (const auto &s : scop_.statements) max_depth = std::max(max_depth, s.depth());
  const size_t limit = 4 * (max_depth + n() + 2);

  while (true) {
    const size_t dim = sched_.dimensions();
    if (dim > limit) throw Error(ErrorKind::Internal, "scheduler exceeded its dimension budget");

    for (auto &ds : directives_) {
      if (ds.active && ds.directive.kind == DirectiveKind::Parallel && full(ds.directive.statement)) {
        ds.active = false;
        sched_.warnings.push_back("parallel directive on " + scop_.statements[ds.directive.statement].name +
                                  " loop " + std::to_string(ds.directive.loop) + " could not be applied");
      }
    }

    bool all_full = true;
    for (size_t s = 0; s < n(); ++s) all_full = all_full && full(s);
    if (all_full) {
      remove_satisfied(scop_, sched_, deps_);
      if (unsatisfied().empty()) break;
      auto groups = scc_condense(n(), deps_);
      if (crosses(groups)) distribute(groups);
      else if (!replay_original(DimensionPlan{}))
        throw Error(ErrorKind::Internal, "dependences left unordered by a complete schedule");
      continue;
    }

    DimensionPlan plan;
    if (config_.callback) {
      std::vector<Dependence> unsat_copy;
      for (const auto &d : deps_)
        if (!d.satisfied()) unsat_copy.push_back(d);
      DimensionPlan base = compile_plan(Config{}, scop_, dim);
      for (const auto &sc : config_.constraints)
        if (!sc.dimension || *sc.dimension == dim) base.constraints.push_back(sc.expr);
      StrategyContext ctx{scop_, sched_, unsat_copy, dim,
                          [&](const std::vector<std::string> &costs) { return trial(base, costs); }};
      plan = compile_plan(config_, scop_, dim, &ctx);
    } else {
      plan = compile_plan(config_, scop_, dim);
    }

    if (plan.kind == PlanKind::Distribute) {
      distribute(order_groups(plan.groups, deps_));
      continue;
    }
    if (dim == 0 && !plan.forced) {
      auto groups = smartfuse_groups();
      if (groups.size() > 1) {
        distribute(groups);
        continue;
      }
    }
    solve_dimension(plan);
  }
  return sched_;
}

}  // namespace

Schedule schedule(const Scop &scop, std::vector<Dependence> &deps, const Config &config,
                  const SchedulerOptions &options) {
  validate_config(config, scop);
  Scheduler s(scop, deps, config, options);
  return s.run();
}

}  // namespace polysched
