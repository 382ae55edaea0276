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
#ifndef POLYSCHED_ILP_HPP_
#define POLYSCHED_ILP_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "polysched/rational.hpp"

namespace polysched::ilp {

enum class Domain { Integer, Continuous };

struct Variable {
  std::string name;
  std::optional<Rational> lower;  // nullopt: unbounded below
  std::optional<Rational> upper;  // nullopt: unbounded above
  Domain domain = Domain::Integer;
};

/// Sparse affine form: sum of coefficient * variable, plus a constant.
/// Terms are kept sorted by variable index with no zero coefficients.
class AffineForm {
 public:
  AffineForm() = default;
  explicit AffineForm(Rational constant) : constant_(std::move(constant)) {}
  static AffineForm variable(size_t var, Rational coef = 1);

  void add(size_t var, const Rational &coef);
  void add_constant(const Rational &c) { constant_ += c; }
  AffineForm &operator+=(const AffineForm &other);
  AffineForm &operator-=(const AffineForm &other);
  AffineForm &operator*=(const Rational &factor);
  friend AffineForm operator+(AffineForm a, const AffineForm &b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm &b) { return a -= b; }
  friend AffineForm operator*(AffineForm a, const Rational &f) { return a *= f; }
  AffineForm operator-() const { return *this * Rational(-1); }

  const std::vector<std::pair<size_t, Rational>> &terms() const { return terms_; }
  const Rational &constant() const { return constant_; }
  Rational coefficient(size_t var) const;
  bool is_constant() const { return terms_.empty(); }

  Rational evaluate(const std::vector<Rational> &values) const;

 private:
  std::vector<std::pair<size_t, Rational>> terms_;
  Rational constant_;
};

enum class Relation { GreaterEqual, Equal };

/// form >= 0 or form == 0.
struct Constraint {
  AffineForm form;
  Relation relation = Relation::GreaterEqual;
};

/// Which variables take part in the final lexicographic tie-break.
enum class TieBreak { AllVariables, IntegerVariables, None };

class Problem {
 public:
  size_t add_variable(std::string name, std::optional<Rational> lower, std::optional<Rational> upper,
                      Domain domain = Domain::Integer);
  void add_constraint(AffineForm form, Relation relation = Relation::GreaterEqual);
  void add_objective(AffineForm form) { objectives_.push_back(std::move(form)); }

  void set_tie_break(TieBreak t) { tie_break_ = t; }
  TieBreak tie_break() const { return tie_break_; }

  const std::vector<Variable> &variables() const { return variables_; }
  std::vector<Variable> &variables() { return variables_; }
  const std::vector<Constraint> &constraints() const { return constraints_; }
  const std::vector<AffineForm> &objectives() const { return objectives_; }
  std::vector<AffineForm> &objectives() { return objectives_; }

  /// LP-like plain text, for human inspection.
  void dump(std::ostream &os) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<AffineForm> objectives_;
  TieBreak tie_break_ = TieBreak::AllVariables;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  /// For Unbounded: index of the objective that is unbounded below.
  size_t failed_objective = 0;
  std::vector<Rational> values;
  std::vector<Rational> objective_values;

  bool optimal() const { return status == Status::Optimal; }
  const Rational &operator[](size_t var) const { return values[var]; }
};

struct SolveOptions {
  /// When set, every problem handed to solve_lex_min is dumped here first.
  std::ostream *dump = nullptr;
};

/// Lexicographic minimisation: each objective is minimised in order and its
/// optimum fixed before the next; the remaining freedom is resolved by
/// minimising the variables one by one in declaration order (per the problem's
/// tie-break mode). Integer variables are handled by depth-first
/// branch-and-bound on the lowest-index fractional variable, floor branch first.
Solution solve_lex_min(const Problem &problem, const SolveOptions &options = {});

/// True iff the rational relaxation has a feasible point (integrality ignored).
bool is_feasible_relaxation(const Problem &problem);

/// Minimum of `objective` over the rational relaxation.
struct LpResult {
  Status status = Status::Infeasible;
  Rational value;
};
LpResult minimize_relaxation(const Problem &problem, const AffineForm &objective);

}  // namespace polysched::ilp

#endif  // POLYSCHED_ILP_HPP_
