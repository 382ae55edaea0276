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
#ifndef POLYSCHED_CONFIG_HPP_
#define POLYSCHED_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polysched/dependence.hpp"
#include "polysched/schedule.hpp"
#include "polysched/scop.hpp"

namespace polysched {

// ---- Constraint expressions -------------------------------------------------

enum class SymbolClass { Iterator, Parameter, Constant, User };

/// A schedule-coefficient symbol such as S0_it_1, S2_par_i, Si_cst or a user
/// variable. kAny marks the wildcard `i` (statement or index).
struct Symbol {
  static constexpr int kAny = -1;
  SymbolClass cls = SymbolClass::Iterator;
  int statement = 0;
  int index = 0;
  std::string user;

  bool operator==(const Symbol &) const = default;
  auto operator<=>(const Symbol &) const = default;
};

struct Term {
  int64_t coef = 1;
  Symbol symbol;

  bool operator==(const Term &) const = default;
};

enum class ExprRel { GreaterEqual, LessEqual, Equal };

/// sum(terms) REL rhs, with like terms merged and sorted by symbol.
struct ConstraintExpr {
  std::vector<Term> terms;
  ExprRel rel = ExprRel::GreaterEqual;
  int64_t rhs = 0;

  bool operator==(const ConstraintExpr &) const = default;
};

/// Syntax only; symbol ranges are checked by resolve_constraint_expr.
ConstraintExpr parse_constraint_expr(const std::string &text);
/// Parses and checks every symbol against the scop and user variable names.
ConstraintExpr parse_constraint_expr(const std::string &text, const Scop &scop,
                                     const std::vector<std::string> &user_vars = {});
void resolve_constraint_expr(const ConstraintExpr &expr, const Scop &scop, const std::vector<std::string> &user_vars);
std::string print(const ConstraintExpr &expr);

// ---- Configuration ----------------------------------------------------------

struct UserVariable {
  std::string name;
  std::optional<int64_t> lower = 0;
  std::optional<int64_t> upper;
};

struct ScopedConstraint {
  std::optional<size_t> dimension;  // nullopt: every dimension
  ConstraintExpr expr;
};

struct FusionEntry {
  size_t dimension = 0;
  std::vector<std::vector<size_t>> fuse;
  std::vector<std::vector<size_t>> distribute;
};

enum class DirectiveKind { Parallel, Vectorize, Sequential };

struct Directive {
  size_t statement = 0;
  size_t loop = 0;
  DirectiveKind kind = DirectiveKind::Vectorize;

  bool operator==(const Directive &) const = default;
};

struct CoefficientBounds {
  int64_t iterators = 4;
  int64_t parameters = 4;
  std::optional<int64_t> constants;  // default: statement count + 4
};

struct TilingConfig {
  std::vector<std::vector<int64_t>> sizes;  // indexed by band
  bool wavefront = false;
};

enum class PlanKind { Solve, Distribute };

/// What to do at one scheduling dimension.
struct DimensionPlan {
  PlanKind kind = PlanKind::Solve;
  std::vector<std::string> costs;
  std::vector<ConstraintExpr> constraints;
  std::vector<std::vector<size_t>> groups;  // distribute: ordered partition
  bool forced = false;                      // from an explicit fusion entry

  bool operator==(const DimensionPlan &) const = default;
};

/// Outcome of solving the current dimension with a candidate cost list,
/// without committing it.
struct TrialResult {
  bool feasible = false;
  bool parallel = false;
  size_t newly_satisfied = 0;
  std::vector<IntRow> rows;
};

struct StrategyContext {
  const Scop &scop;
  const Schedule &partial;
  const std::vector<Dependence> &unsatisfied;
  size_t dimension;
  std::function<TrialResult(const std::vector<std::string> &costs)> trial;
};

/// Called before each dimension; returning nullopt defers to the static plan.
using StrategyCallback = std::function<std::optional<DimensionPlan>(const StrategyContext &)>;

struct Config {
  std::vector<UserVariable> variables;
  std::vector<std::string> default_costs{"proximity"};
  std::map<size_t, std::vector<std::string>> dimension_costs;
  std::vector<ScopedConstraint> constraints;
  std::vector<FusionEntry> fusion;
  std::vector<Directive> directives;
  bool auto_vectorize = false;
  std::string preset;
  std::optional<TilingConfig> tiling;
  CoefficientBounds bounds;
  StrategyCallback callback;

  std::vector<std::string> user_variable_names() const;
};

Config parse_config(const std::string &text);

/// Applies a named preset: pluto-style, tensor-style, feautrier-style or isl-style.
void apply_preset(Config &config, const std::string &name);

/// The isl-style strategy: proximity first, Feautrier when the proximity
/// dimension is not parallel.
StrategyCallback isl_style_callback();

/// Checks statement, loop and symbol references against the scop.
void validate_config(const Config &config, const Scop &scop);

/// The static plan for one dimension: callback output, else fusion entries,
/// else per-dimension costs, else defaults. Scoped constraints are included.
DimensionPlan compile_plan(const Config &config, const Scop &scop, size_t dim, const StrategyContext *ctx = nullptr);

/// Per statement, the loop that moves contiguously in memory, if any.
std::vector<std::optional<size_t>> auto_vectorize_detect(const Scop &scop);

/// Explicit directives plus auto-detected vectorize directives (explicit ones
/// win for a statement that has both).
std::vector<Directive> effective_directives(const Config &config, const Scop &scop);

bool is_builtin_cost(const std::string &name);
std::string to_string(DirectiveKind kind);

}  // namespace polysched

#endif  // POLYSCHED_CONFIG_HPP_
