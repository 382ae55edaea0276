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
#include "polysched/ilp.hpp"

#include <algorithm>
#include <cstdint>

#include "polysched/error.hpp"

namespace polysched::ilp {

// ---------------------------------------------------------------------------
// AffineForm

AffineForm AffineForm::variable(size_t var, Rational coef) {
  AffineForm f;
  f.add(var, coef);
  return f;
}

void AffineForm::add(size_t var, const Rational &coef) {
  if (coef.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                             [](const auto &term, size_t v) { return term.first < v; });
  if (it != terms_.end() && it->first == var) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, {var, coef});
  }
}

AffineForm &AffineForm::operator+=(const AffineForm &other) {
  for (const auto &[v, c] : other.terms_) add(v, c);
  constant_ += other.constant_;
  return *this;
}

AffineForm &AffineForm::operator-=(const AffineForm &other) {
  for (const auto &[v, c] : other.terms_) add(v, -c);
  constant_ -= other.constant_;
  return *this;
}

AffineForm &AffineForm::operator*=(const Rational &factor) {
  if (factor.is_zero()) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto &[v, c] : terms_) c *= factor;
  constant_ *= factor;
  return *this;
}

Rational AffineForm::coefficient(size_t var) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                             [](const auto &term, size_t v) { return term.first < v; });
  if (it != terms_.end() && it->first == var) return it->second;
  return Rational(0);
}

Rational AffineForm::evaluate(const std::vector<Rational> &values) const {
  Rational sum = constant_;
  for (const auto &[v, c] : terms_) sum += c * values[v];
  return sum;
}

// ---------------------------------------------------------------------------
// Problem

size_t Problem::add_variable(std::string name, std::optional<Rational> lower, std::optional<Rational> upper,
                             Domain domain) {
  variables_.push_back({std::move(name), std::move(lower), std::move(upper), domain});
  return variables_.size() - 1;
}

void Problem::add_constraint(AffineForm form, Relation relation) {
  for (const auto &[v, c] : form.terms())
    if (v >= variables_.size()) throw Error(ErrorKind::Internal, "constraint references undeclared variable");
  constraints_.push_back({std::move(form), relation});
}

namespace {

void write_form(std::ostream &os, const AffineForm &f, const std::vector<Variable> &vars) {
  bool first = true;
  for (const auto &[v, c] : f.terms()) {
    if (c.sign() < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    Rational a = c.abs();
    if (a != Rational(1)) os << a << " ";
    os << vars[v].name;
    first = false;
  }
  if (!f.constant().is_zero() || first) {
    if (first) {
      os << f.constant();
    } else {
      os << (f.constant().sign() < 0 ? " - " : " + ") << f.constant().abs();
    }
  }
}

}  // namespace

void Problem::dump(std::ostream &os) const {
  os << "\\ polysched lexicographic ILP\nminimize\n";
  for (size_t k = 0; k < objectives_.size(); ++k) {
    os << " obj" << k << ": ";
    write_form(os, objectives_[k], variables_);
    os << "\n";
  }
  os << "subject to\n";
  for (size_t k = 0; k < constraints_.size(); ++k) {
    os << " c" << k << ": ";
    write_form(os, constraints_[k].form, variables_);
    os << (constraints_[k].relation == Relation::Equal ? " = 0\n" : " >= 0\n");
  }
  os << "bounds\n";
  for (const auto &v : variables_) {
    os << " " << (v.lower ? v.lower->to_string() : "-inf") << " <= " << v.name << " <= "
       << (v.upper ? v.upper->to_string() : "+inf") << "\n";
  }
  os << "general\n";
  for (const auto &v : variables_)
    if (v.domain == Domain::Integer) os << " " << v.name;
  os << "\nend\n";
}

// ---------------------------------------------------------------------------
// Bounded-variable simplex tableau.
//
// Every constraint row gets a slack s = form(x), bounded [0, inf) or [0, 0].
// Row i of the tableau reads  x_{basis[i]} = sum_j rows[i][j] * x_j  over the
// nonbasic columns; basic columns are identically zero. Variable values are
// tracked explicitly and updated exactly on every move, so no right-hand side
// is stored.

namespace {

constexpr size_t kNoRow = SIZE_MAX;
constexpr int kDegenerateLimit = 25;
constexpr long kPivotLimit = 2000000;
constexpr long kNodeLimit = 2000000;

class Tableau {
 public:
  explicit Tableau(const Problem &p, bool relax_integrality = false);

  bool bounds_consistent() const { return consistent_; }

  /// Dual simplex towards primal feasibility. Returns false when infeasible.
  bool restore_feasibility();
  /// Primal simplex on the current objective. Returns false when unbounded.
  bool optimize();

  void set_objective(const AffineForm &f);
  Rational objective_value() const;

  void set_lower(size_t var, const Rational &v);
  void set_upper(size_t var, const Rational &v);
  void fix(size_t var, const Rational &v);
  /// Appends the equality f(x) == 0 as a new fixed slack row.
  void add_equality(const AffineForm &f);

  const std::vector<Rational> &values() const { return value_; }
  size_t structural() const { return n_struct_; }
  bool is_integer_var(size_t j) const { return integer_[j]; }

 private:
  bool can_increase(size_t j) const { return !up_[j] || value_[j] < *up_[j]; }
  bool can_decrease(size_t j) const { return !lo_[j] || value_[j] > *lo_[j]; }
  bool is_fixed(size_t j) const { return lo_[j] && up_[j] && *lo_[j] == *up_[j]; }
  void move_nonbasic(size_t j, const Rational &delta);
  void pivot(size_t r, size_t e);
  void recompute_reduced_costs();

  size_t n_struct_ = 0;
  size_t n_ = 0;
  bool consistent_ = true;
  std::vector<std::vector<Rational>> rows_;
  std::vector<size_t> basis_;
  std::vector<size_t> row_of_;
  std::vector<Rational> value_;
  std::vector<std::optional<Rational>> lo_, up_;
  std::vector<bool> integer_;
  AffineForm objective_;
  std::vector<Rational> cost_;
  std::vector<Rational> d_;
};

Tableau::Tableau(const Problem &p, bool relax_integrality) {
  const auto &vars = p.variables();
  const auto &cons = p.constraints();
  n_struct_ = vars.size();
  n_ = n_struct_ + cons.size();
  lo_.resize(n_);
  up_.resize(n_);
  integer_.assign(n_, false);
  value_.assign(n_, Rational(0));
  row_of_.assign(n_, kNoRow);
  for (size_t j = 0; j < n_struct_; ++j) {
    const Variable &v = vars[j];
    bool integral = v.domain == Domain::Integer && !relax_integrality;
    integer_[j] = integral;
    lo_[j] = v.lower;
    up_[j] = v.upper;
    if (integral) {
      if (lo_[j]) lo_[j] = lo_[j]->ceil();
      if (up_[j]) up_[j] = up_[j]->floor();
    }
    if (lo_[j] && up_[j] && *lo_[j] > *up_[j]) consistent_ = false;
    if (lo_[j]) {
      value_[j] = *lo_[j];
    } else if (up_[j]) {
      value_[j] = *up_[j];
    }
  }
  rows_.assign(cons.size(), std::vector<Rational>(n_));
  basis_.resize(cons.size());
  for (size_t i = 0; i < cons.size(); ++i) {
    size_t s = n_struct_ + i;
    lo_[s] = Rational(0);
    if (cons[i].relation == Relation::Equal) up_[s] = Rational(0);
    for (const auto &[v, c] : cons[i].form.terms()) rows_[i][v] = c;
    basis_[i] = s;
    row_of_[s] = i;
    value_[s] = cons[i].form.evaluate(value_);
  }
  cost_.assign(n_, Rational(0));
  d_.assign(n_, Rational(0));
}

void Tableau::move_nonbasic(size_t j, const Rational &delta) {
  if (delta.is_zero()) return;
  value_[j] += delta;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rational &a = rows_[i][j];
    if (!a.is_zero()) value_[basis_[i]] += a * delta;
  }
}

void Tableau::pivot(size_t r, size_t e) {
  std::vector<Rational> &row = rows_[r];
  const size_t leave = basis_[r];
  const Rational inv = Rational(1) / row[e];
  std::vector<size_t> nz;
  for (size_t j = 0; j < n_; ++j) {
    if (j == e || row[j].is_zero()) continue;
    row[j] = -(row[j] * inv);
    nz.push_back(j);
  }
  row[e] = Rational(0);
  row[leave] = inv;
  nz.push_back(leave);
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i == r) continue;
    std::vector<Rational> &other = rows_[i];
    if (other[e].is_zero()) continue;
    const Rational g = other[e];
    other[e] = Rational(0);
    for (size_t j : nz) other[j] += g * row[j];
  }
  if (!d_[e].is_zero()) {
    const Rational g = d_[e];
    d_[e] = Rational(0);
    for (size_t j : nz) d_[j] += g * row[j];
  }
  basis_[r] = e;
  row_of_[e] = r;
  row_of_[leave] = kNoRow;
}

void Tableau::recompute_reduced_costs() {
  d_ = cost_;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rational &cb = cost_[basis_[i]];
    if (cb.is_zero()) continue;
    for (size_t j = 0; j < n_; ++j)
      if (!rows_[i][j].is_zero()) d_[j] += cb * rows_[i][j];
  }
  for (size_t i = 0; i < rows_.size(); ++i) d_[basis_[i]] = Rational(0);
}

void Tableau::set_objective(const AffineForm &f) {
  objective_ = f;
  cost_.assign(n_, Rational(0));
  for (const auto &[v, c] : f.terms()) cost_[v] = c;
  recompute_reduced_costs();
}

Rational Tableau::objective_value() const { return objective_.evaluate(value_); }

bool Tableau::restore_feasibility() {
  if (!consistent_) return false;
  for (long iter = 0;; ++iter) {
    if (iter > kPivotLimit) throw Error(ErrorKind::Internal, "dual simplex iteration limit");
    // Leaving row: smallest basic variable index among the violated ones.
    size_t r = kNoRow;
    size_t best_var = SIZE_MAX;
    for (size_t i = 0; i < rows_.size(); ++i) {
      size_t b = basis_[i];
      const Rational &x = value_[b];
      bool violated = (lo_[b] && x < *lo_[b]) || (up_[b] && x > *up_[b]);
      if (violated && b < best_var) {
        best_var = b;
        r = i;
      }
    }
    if (r == kNoRow) return true;
    const size_t b = basis_[r];
    const bool raise = lo_[b] && value_[b] < *lo_[b];
    const Rational target = raise ? *lo_[b] : *up_[b];
    const std::vector<Rational> &row = rows_[r];
    size_t e = kNoRow;
    Rational best_ratio;
    for (size_t j = 0; j < n_; ++j) {
      const Rational &a = row[j];
      if (a.is_zero() || row_of_[j] != kNoRow || is_fixed(j)) continue;
      // Moving x_j by t changes x_b by a * t.
      bool ok = raise ? ((a.sign() > 0 && can_increase(j)) || (a.sign() < 0 && can_decrease(j)))
                      : ((a.sign() < 0 && can_increase(j)) || (a.sign() > 0 && can_decrease(j)));
      if (!ok) continue;
      Rational ratio = (d_[j] / a).abs();
      if (e == kNoRow || ratio < best_ratio) {
        e = j;
        best_ratio = ratio;
      }
    }
    if (e == kNoRow) return false;
    Rational delta = (target - value_[b]) / row[e];
    move_nonbasic(e, delta);
    value_[b] = target;
    pivot(r, e);
  }
}

bool Tableau::optimize() {
  int degenerate = 0;
  for (long iter = 0;; ++iter) {
    if (iter > kPivotLimit) throw Error(ErrorKind::Internal, "primal simplex iteration limit");
    const bool bland = degenerate >= kDegenerateLimit;
    size_t e = kNoRow;
    int dir = 0;
    Rational best;
    for (size_t j = 0; j < n_; ++j) {
      if (row_of_[j] != kNoRow || d_[j].is_zero()) continue;
      int s = d_[j].sign();
      if ((s < 0 && can_increase(j)) || (s > 0 && can_decrease(j))) {
        Rational mag = d_[j].abs();
        if (e == kNoRow || (!bland && mag > best)) {
          e = j;
          dir = -s;
          best = mag;
          if (bland) break;
        }
      }
    }
    if (e == kNoRow) return true;

    // Ratio test.
    std::optional<Rational> step;
    if (dir > 0 && up_[e]) step = *up_[e] - value_[e];
    if (dir < 0 && lo_[e]) step = value_[e] - *lo_[e];
    size_t r = kNoRow;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rational &a = rows_[i][e];
      if (a.is_zero()) continue;
      size_t b = basis_[i];
      int rate = a.sign() * dir;
      std::optional<Rational> limit;
      if (rate > 0 && up_[b]) limit = (*up_[b] - value_[b]) / a.abs();
      if (rate < 0 && lo_[b]) limit = (value_[b] - *lo_[b]) / a.abs();
      if (!limit) continue;
      if (!step || *limit < *step || (*limit == *step && r != kNoRow && b < basis_[r])) {
        step = limit;
        r = i;
      }
    }
    if (!step) return false;
    degenerate = step->is_zero() ? degenerate + 1 : 0;
    Rational delta = dir > 0 ? *step : -*step;
    if (r == kNoRow) {
      move_nonbasic(e, delta);  // bound flip
      continue;
    }
    size_t b = basis_[r];
    move_nonbasic(e, delta);
    value_[b] = rows_[r][e].sign() * dir > 0 ? *up_[b] : *lo_[b];
    pivot(r, e);
  }
}

void Tableau::set_lower(size_t var, const Rational &v) {
  lo_[var] = v;
  if (up_[var] && *up_[var] < v) consistent_ = false;
  if (row_of_[var] == kNoRow && value_[var] < v) move_nonbasic(var, v - value_[var]);
}

void Tableau::set_upper(size_t var, const Rational &v) {
  up_[var] = v;
  if (lo_[var] && *lo_[var] > v) consistent_ = false;
  if (row_of_[var] == kNoRow && value_[var] > v) move_nonbasic(var, v - value_[var]);
}

void Tableau::fix(size_t var, const Rational &v) {
  if ((lo_[var] && *lo_[var] > v) || (up_[var] && *up_[var] < v)) consistent_ = false;
  lo_[var] = v;
  up_[var] = v;
  if (row_of_[var] == kNoRow) move_nonbasic(var, v - value_[var]);
}

void Tableau::add_equality(const AffineForm &f) {
  const size_t s = n_++;
  for (auto &row : rows_) row.emplace_back(0);
  lo_.emplace_back(Rational(0));
  up_.emplace_back(Rational(0));
  integer_.push_back(false);
  cost_.emplace_back(0);
  d_.emplace_back(0);
  value_.push_back(f.evaluate(value_));
  std::vector<Rational> row(n_);
  for (const auto &[v, c] : f.terms()) {
    if (row_of_[v] == kNoRow) {
      row[v] += c;
    } else {
      const auto &src = rows_[row_of_[v]];
      for (size_t j = 0; j < n_; ++j)
        if (!src[j].is_zero()) row[j] += c * src[j];
    }
  }
  rows_.push_back(std::move(row));
  basis_.push_back(s);
  row_of_.push_back(rows_.size() - 1);
}

// ---------------------------------------------------------------------------
// Branch and bound

bool objective_is_integral(const AffineForm &f, const Tableau &t) {
  if (!f.constant().is_integer()) return false;
  for (const auto &[v, c] : f.terms())
    if (!c.is_integer() || !t.is_integer_var(v)) return false;
  return true;
}

size_t first_fractional(const Tableau &t) {
  for (size_t j = 0; j < t.structural(); ++j)
    if (t.is_integer_var(j) && !t.values()[j].is_integer()) return j;
  return kNoRow;
}

struct Incumbent {
  bool found = false;
  std::vector<Rational> values;
  Rational objective;
};

class BranchAndBound {
 public:
  BranchAndBound(bool integral_objective) : integral_objective_(integral_objective) {}

  void run(Tableau t) { explore(std::move(t)); }
  Incumbent &incumbent() { return best_; }

 private:
  bool pruned(const Rational &bound) const {
    if (!best_.found) return false;
    return integral_objective_ ? bound.ceil() >= best_.objective : bound >= best_.objective;
  }

  void explore(Tableau t) {
    if (++nodes_ > kNodeLimit) throw Error(ErrorKind::Internal, "branch-and-bound node limit");
    Rational bound = t.objective_value();
    if (pruned(bound)) return;
    size_t j = first_fractional(t);
    if (j == kNoRow) {
      best_.found = true;
      best_.values.assign(t.values().begin(), t.values().begin() + t.structural());
      best_.objective = bound;
      return;
    }
    const Rational v = t.values()[j];
    {
      Tableau down = t;
      down.set_upper(j, v.floor());
      if (down.restore_feasibility() && down.optimize()) explore(std::move(down));
    }
    t.set_lower(j, v.ceil());
    if (t.restore_feasibility() && t.optimize()) explore(std::move(t));
  }

  bool integral_objective_;
  Incumbent best_;
  long nodes_ = 0;
};

}  // namespace

Solution solve_lex_min(const Problem &problem, const SolveOptions &options) {
  if (options.dump) problem.dump(*options.dump);
  Solution sol;
  Tableau base(problem);
  if (!base.restore_feasibility()) {
    sol.status = Status::Infeasible;
    return sol;
  }

  struct Stage {
    AffineForm form;
    bool tie_break;
  };
  std::vector<Stage> stages;
  for (const auto &f : problem.objectives()) stages.push_back({f, false});
  const auto &vars = problem.variables();
  if (problem.tie_break() != TieBreak::None) {
    for (size_t j = 0; j < vars.size(); ++j) {
      if (problem.tie_break() == TieBreak::IntegerVariables && vars[j].domain != Domain::Integer) continue;
      stages.push_back({AffineForm::variable(j), true});
    }
  }
  if (stages.empty()) stages.push_back({AffineForm(), false});

  std::vector<Rational> current;
  for (size_t k = 0; k < stages.size(); ++k) {
    const Stage &stage = stages[k];
    base.set_objective(stage.form);
    if (!base.optimize()) {
      if (stage.tie_break) continue;  // no lexicographic minimum along this variable
      sol.status = Status::Unbounded;
      sol.failed_objective = k;
      return sol;
    }
    Incumbent inc;
    if (first_fractional(base) == kNoRow) {
      inc.found = true;
      inc.values.assign(base.values().begin(), base.values().begin() + base.structural());
      inc.objective = base.objective_value();
    } else {
      BranchAndBound bb(objective_is_integral(stage.form, base));
      bb.run(base);
      inc = std::move(bb.incumbent());
    }
    if (!inc.found) {
      sol.status = Status::Infeasible;
      sol.failed_objective = k;
      return sol;
    }
    current = inc.values;
    if (!stage.tie_break && k < problem.objectives().size()) sol.objective_values.push_back(inc.objective);

    // Pin this stage's optimum before moving on.
    if (k + 1 < stages.size()) {
      const auto &terms = stage.form.terms();
      if (terms.empty()) continue;
      if (terms.size() == 1) {
        base.fix(terms[0].first, current[terms[0].first]);
      } else {
        AffineForm eq = stage.form;
        eq.add_constant(-inc.objective);
        base.add_equality(eq);
      }
      if (!base.restore_feasibility())
        throw Error(ErrorKind::Internal, "lexicographic stage lost feasibility");
    }
  }
  sol.status = Status::Optimal;
  sol.values = std::move(current);
  return sol;
}

bool is_feasible_relaxation(const Problem &problem) {
  Tableau t(problem, /*relax_integrality=*/true);
  return t.restore_feasibility();
}

LpResult minimize_relaxation(const Problem &problem, const AffineForm &objective) {
  LpResult out;
  Tableau t(problem, /*relax_integrality=*/true);
  if (!t.restore_feasibility()) return out;
  t.set_objective(objective);
  if (!t.optimize()) {
    out.status = Status::Unbounded;
    return out;
  }
  out.status = Status::Optimal;
  out.value = t.objective_value();
  return out;
}

}  // namespace polysched::ilp
