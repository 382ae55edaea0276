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
#include <algorithm>
#include <numeric>

#include "polysched/error.hpp"
#include "polysched/scheduler.hpp"

namespace polysched {

namespace {

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

void normalize(PolyRow &r) {
  int64_t g = 0;
  for (int64_t v : r.coef) g = gcd64(g, v);
  if (g > 1)
    for (auto &v : r.coef) v /= g;
}

bool is_constant_row(const PolyRow &r) {
  for (size_t c = 0; c + 1 < r.coef.size(); ++c)
    if (r.coef[c] != 0) return false;
  return true;
}

}  // namespace

std::vector<size_t> farkas_linearize(const Polyhedron &p, const std::vector<PolyRow> &context,
                                     const ParametricRow &form_in, ilp::Problem &prob, const std::string &tag) {
  const size_t width = p.width();
  if (form_in.size() != width) throw Error(ErrorKind::DimensionMismatch, "Farkas form width");
  std::vector<PolyRow> rows = p.rows;
  for (auto &r : embed_context(context, p)) rows.push_back(std::move(r));
  ParametricRow form = form_in;
  std::vector<bool> alive(width - 1, true);

  // Substitute equalities away: each one removes a column.
  while (true) {
    size_t eq = rows.size(), col = 0;
    for (size_t i = 0; i < rows.size() && eq == rows.size(); ++i) {
      if (rows[i].rel != RowRel::Equal) continue;
      // Prefer a unit coefficient, highest column first.
      for (size_t c = width - 1; c-- > 0;) {
        if (rows[i].coef[c] == 1 || rows[i].coef[c] == -1) {
          eq = i, col = c;
          break;
        }
      }
      if (eq == rows.size())
        for (size_t c = width - 1; c-- > 0;)
          if (rows[i].coef[c] != 0) {
            eq = i, col = c;
            break;
          }
    }
    if (eq == rows.size()) break;
    PolyRow e = rows[eq];
    rows.erase(rows.begin() + eq);
    const int64_t a = e.coef[col];
    const int64_t abs_a = a < 0 ? -a : a;
    const int64_t sgn = a < 0 ? -1 : 1;
    if (!form[col].terms().empty() || !form[col].constant().is_zero()) {
      ilp::AffineForm fc = form[col];
      for (size_t j = 0; j < width; ++j) {
        if (j == col || e.coef[j] == 0) continue;
        form[j] -= fc * Rational(e.coef[j], a);
      }
      form[col] = ilp::AffineForm();
    }
    for (auto &r : rows) {
      int64_t rc = r.coef[col];
      if (rc == 0) continue;
      for (size_t j = 0; j < width; ++j) r.coef[j] = abs_a * r.coef[j] - sgn * rc * e.coef[j];
      normalize(r);
    }
    alive[col] = false;
  }

  // Drop tautologies and duplicates; a contradiction means p is empty and
  // the requirement holds vacuously.
  std::vector<PolyRow> kept;
  for (auto &r : rows) {
    if (is_constant_row(r)) {
      int64_t c = r.coef.back();
      bool holds = r.rel == RowRel::Equal ? c == 0 : c >= 0;
      if (!holds) return {};
      continue;
    }
    if (std::find(kept.begin(), kept.end(), r) == kept.end()) kept.push_back(std::move(r));
  }

  std::vector<size_t> lambdas;
  for (size_t i = 0; i < kept.size(); ++i) {
    bool eq = kept[i].rel == RowRel::Equal;
    lambdas.push_back(prob.add_variable(tag + "_" + std::to_string(i), eq ? std::nullopt : std::optional(Rational(0)),
                                        std::nullopt, ilp::Domain::Continuous));
  }
  for (size_t c = 0; c < width; ++c) {
    if (c + 1 < width && !alive[c]) continue;
    ilp::AffineForm f = form[c];
    for (size_t i = 0; i < kept.size(); ++i)
      if (kept[i].coef[c] != 0) f.add(lambdas[i], Rational(-kept[i].coef[c]));
    // The constant keeps slack for the implicit multiplier of 1.
    bool constant = c + 1 == width;
    if (f.is_constant()) {
      int s = f.constant().sign();
      if (constant ? s < 0 : s != 0) {
        // Unsatisfiable independent of the variables: record it as such.
        prob.add_constraint(ilp::AffineForm(Rational(-1)));
      }
      continue;
    }
    prob.add_constraint(std::move(f), constant ? ilp::Relation::GreaterEqual : ilp::Relation::Equal);
  }
  return lambdas;
}

CoefficientVars declare_coefficients(const Scop &scop, const CoefficientBounds &bounds, const std::vector<bool> &frozen,
                                     const std::vector<UserVariable> &user_vars, ilp::Problem &prob) {
  CoefficientVars v;
  const size_t n = scop.statements.size();
  const int64_t cst_bound = bounds.constants ? *bounds.constants : static_cast<int64_t>(n) + 4;
  v.it.resize(n);
  v.par.resize(n);
  v.cst.resize(n);
  for (size_t s = 0; s < n; ++s) {
    const Statement &st = scop.statements[s];
    const int64_t it_hi = frozen[s] ? 0 : bounds.iterators;
    const int64_t par_hi = frozen[s] ? 0 : bounds.parameters;
    v.it[s].resize(st.depth());
    for (size_t k = st.depth(); k-- > 0;)
      v.it[s][k] = prob.add_variable(st.name + "_it_" + std::to_string(k), Rational(0), Rational(it_hi));
    v.par[s].resize(scop.parameters.size());
    for (size_t p = 0; p < scop.parameters.size(); ++p)
      v.par[s][p] = prob.add_variable(st.name + "_par_" + std::to_string(p), Rational(0), Rational(par_hi));
    v.cst[s] = prob.add_variable(st.name + "_cst", Rational(0), Rational(cst_bound));
  }
  for (const auto &u : user_vars) {
    std::optional<Rational> lo, hi;
    if (u.lower) lo = Rational(*u.lower);
    if (u.upper) hi = Rational(*u.upper);
    v.user.push_back(prob.add_variable(u.name, lo, hi));
  }
  return v;
}

ParametricRow distance_form(const Dependence &dep, const CoefficientVars &vars) {
  const size_t ds = dep.source_depth(), dr = dep.target_depth();
  const size_t np = dep.polyhedron.n_params;
  ParametricRow f(dep.polyhedron.width());
  for (size_t k = 0; k < ds; ++k) f[k].add(vars.it[dep.source][k], Rational(-1));
  for (size_t k = 0; k < dr; ++k) f[ds + k].add(vars.it[dep.target][k], Rational(1));
  for (size_t p = 0; p < np; ++p) {
    f[ds + dr + p].add(vars.par[dep.target][p], Rational(1));
    f[ds + dr + p].add(vars.par[dep.source][p], Rational(-1));
  }
  f.back().add(vars.cst[dep.target], Rational(1));
  f.back().add(vars.cst[dep.source], Rational(-1));
  return f;
}

void build_legality(const Dependence &dep, const CoefficientVars &vars, const std::vector<PolyRow> &context,
                    ilp::Problem &prob) {
  farkas_linearize(dep.polyhedron, context, distance_form(dep, vars), prob, "leg");
}

void build_progression(const RatMatrix &prev, const std::vector<size_t> &t, ilp::Problem &prob) {
  if (prev.rows() >= t.size())
    throw Error(ErrorKind::FullyScheduledStatement, "statement already has full iterator rank");
  RatMatrix perp = orthogonal_complement(prev);
  ilp::AffineForm sum(Rational(-1));
  for (size_t r = 0; r < perp.rows(); ++r) {
    ilp::AffineForm f;
    for (size_t k = 0; k < t.size(); ++k) f.add(t[k], perp(r, k));
    if (f.is_constant()) continue;
    sum += f;
    prob.add_constraint(std::move(f));
  }
  prob.add_constraint(std::move(sum));
}

void build_progression_disjunctive(const RatMatrix &prev, const std::vector<size_t> &t, int64_t coef_bound,
                                   ilp::Problem &prob) {
  if (prev.rows() >= t.size())
    throw Error(ErrorKind::FullyScheduledStatement, "statement already has full iterator rank");
  RatMatrix perp = orthogonal_complement(prev);
  ilp::AffineForm pick(Rational(-1));
  for (size_t r = 0; r < perp.rows(); ++r) {
    ilp::AffineForm f;
    Rational big(1);
    for (size_t k = 0; k < t.size(); ++k) {
      f.add(t[k], perp(r, k));
      big += perp(r, k).abs() * Rational(coef_bound);
    }
    if (f.is_constant()) continue;
    for (int sign : {1, -1}) {
      size_t z = prob.add_variable("prog_" + std::to_string(r) + (sign > 0 ? "p" : "n"), Rational(0), Rational(1));
      // sign * f >= 1 - big * (1 - z)
      ilp::AffineForm g = f * Rational(sign);
      g.add_constant(Rational(-1) + big);
      g.add(z, -big);
      prob.add_constraint(std::move(g));
      pick.add(z, Rational(1));
    }
  }
  prob.add_constraint(std::move(pick));
}

std::vector<ilp::AffineForm> cost_proximity(const std::vector<const Dependence *> &deps, const CoefficientVars &vars,
                                            const std::vector<PolyRow> &context, size_t n_params, ilp::Problem &prob) {
  std::vector<size_t> u;
  for (size_t p = 0; p < n_params; ++p) u.push_back(prob.add_variable("u_" + std::to_string(p), Rational(0), std::nullopt));
  size_t w = prob.add_variable("w", Rational(0), std::nullopt);
  for (const Dependence *d : deps) {
    ParametricRow f = distance_form(*d, vars);
    for (auto &e : f) e *= Rational(-1);
    const size_t off = d->polyhedron.param_offset();
    for (size_t p = 0; p < n_params; ++p) f[off + p].add(u[p], Rational(1));
    f.back().add(w, Rational(1));
    farkas_linearize(d->polyhedron, context, f, prob, "prox");
  }
  ilp::AffineForm sum_u;
  for (size_t x : u) sum_u.add(x, Rational(1));
  return {sum_u, ilp::AffineForm::variable(w)};
}

ilp::AffineForm cost_feautrier(const std::vector<const Dependence *> &deps, const CoefficientVars &vars,
                               const std::vector<PolyRow> &context, ilp::Problem &prob) {
  ilp::AffineForm obj(Rational(static_cast<int64_t>(deps.size())));
  for (size_t i = 0; i < deps.size(); ++i) {
    size_t e = prob.add_variable("e_" + std::to_string(i), Rational(0), Rational(1));
    ParametricRow f = distance_form(*deps[i], vars);
    f.back().add(e, Rational(-1));
    farkas_linearize(deps[i]->polyhedron, context, f, prob, "feau");
    obj.add(e, Rational(-1));
  }
  return obj;
}

std::vector<int64_t> contiguity_coefficients(const Statement &s) {
  std::vector<int64_t> c(s.depth(), 0);
  for (const auto &a : s.accesses) {
    for (size_t q = 0; q < a.subscripts.size(); ++q) {
      int64_t weight = 1;
      for (size_t e = 0; e < q; ++e) weight *= 10;
      for (size_t k = 0; k < s.depth(); ++k)
        if (a.subscripts[q][k] != 0) c[k] = std::max(c[k], weight);
    }
  }
  return c;
}

ilp::AffineForm cost_contiguity(const Scop &scop, const CoefficientVars &vars, const std::vector<bool> &skip,
                                ilp::Problem &prob) {
  ilp::AffineForm obj;
  for (size_t s = 0; s < scop.statements.size(); ++s) {
    if (skip[s]) continue;
    std::vector<int64_t> c = contiguity_coefficients(scop.statements[s]);
    size_t v = prob.add_variable(scop.statements[s].name + "_contiguity", Rational(0), std::nullopt);
    ilp::AffineForm def = ilp::AffineForm::variable(v, Rational(-1));
    for (size_t k = 0; k < c.size(); ++k) def.add(vars.it[s][k], Rational(c[k]));
    prob.add_constraint(std::move(def), ilp::Relation::Equal);
    obj.add(v, Rational(1));
  }
  return obj;
}

namespace {

// Trip count of iterator k as (parametric?, constant value) when its bounds
// are one lower and one upper row free of other iterators.
struct Trip {
  bool ok = false;
  bool parametric = false;
  int64_t value = 0;
};

Trip trip_count(const Statement &s, size_t k) {
  const size_t d = s.depth();
  const IntRow *lo = nullptr, *hi = nullptr;
  for (const auto &r : s.domain.rows) {
    if (r.coef[k] == 0) continue;
    for (size_t j = 0; j < d; ++j)
      if (j != k && r.coef[j] != 0) return {};
    if (r.rel == RowRel::Equal) return {};
    if (r.coef[k] == 1) {
      if (lo) return {};
      lo = &r.coef;
    } else if (r.coef[k] == -1) {
      if (hi) return {};
      hi = &r.coef;
    } else {
      return {};
    }
  }
  if (!lo || !hi) return {};
  // k >= -lo_rest and k <= hi_rest: count = hi_rest + lo_rest + 1.
  Trip t;
  t.ok = true;
  for (size_t p = d; p + 1 < lo->size(); ++p) t.parametric = t.parametric || ((*lo)[p] + (*hi)[p]) != 0;
  t.value = (*lo).back() + (*hi).back() + 1;
  return t;
}

}  // namespace

std::vector<int64_t> blf_coefficients(const Statement &s) {
  const size_t d = s.depth();
  std::vector<Trip> trips;
  for (size_t k = 0; k < d; ++k) {
    trips.push_back(trip_count(s, k));
    if (!trips.back().ok) return std::vector<int64_t>(d, 1);
  }
  std::vector<size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (trips[a].parametric != trips[b].parametric) return trips[a].parametric;
    if (trips[a].parametric) return false;
    return trips[a].value > trips[b].value;
  });
  std::vector<int64_t> c(d, 1);
  int64_t weight = 1;
  for (size_t r = 0; r < d; ++r, weight *= 10) c[order[r]] = weight;
  return c;
}

ilp::AffineForm cost_big_loops_first(const Scop &scop, const CoefficientVars &vars, const std::vector<bool> &skip) {
  ilp::AffineForm obj;
  for (size_t s = 0; s < scop.statements.size(); ++s) {
    if (skip[s]) continue;
    std::vector<int64_t> c = blf_coefficients(scop.statements[s]);
    for (size_t k = 0; k < c.size(); ++k) obj.add(vars.it[s][k], Rational(c[k]));
  }
  return obj;
}

}  // namespace polysched
