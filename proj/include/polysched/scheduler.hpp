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
#ifndef POLYSCHED_SCHEDULER_HPP_
#define POLYSCHED_SCHEDULER_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "polysched/config.hpp"
#include "polysched/dependence.hpp"
#include "polysched/ilp.hpp"
#include "polysched/matrix.hpp"
#include "polysched/schedule.hpp"
#include "polysched/scop.hpp"

namespace polysched {

/// An affine form over a polyhedron's columns whose coefficients are ILP
/// forms: one entry per column, then the constant.
using ParametricRow = std::vector<ilp::AffineForm>;

/// Requires form(x) >= 0 for every rational x in p and the context. Adds one
/// continuous multiplier per remaining polyhedron row and the coefficient
/// matching equalities to `prob`; equalities of p are substituted first.
/// Returns the indices of the multipliers created.
std::vector<size_t> farkas_linearize(const Polyhedron &p, const std::vector<PolyRow> &context,
                                     const ParametricRow &form, ilp::Problem &prob, const std::string &tag = "l");

/// ILP variables holding the coefficients of one dimension's rows.
struct CoefficientVars {
  std::vector<std::vector<size_t>> it;   // [statement][iterator]
  std::vector<std::vector<size_t>> par;  // [statement][parameter]
  std::vector<size_t> cst;               // [statement]
  std::vector<size_t> user;              // config variables, declaration order
};

/// Declares coefficient variables (iterator variables of a statement in
/// reverse loop order, so ties resolve toward the original loop order).
/// Statements flagged in `frozen` get iterator and parameter parts fixed to 0.
CoefficientVars declare_coefficients(const Scop &scop, const CoefficientBounds &bounds, const std::vector<bool> &frozen,
                                     const std::vector<UserVariable> &user_vars, ilp::Problem &prob);

/// phi_target(y) - phi_source(x) over the dependence layout.
ParametricRow distance_form(const Dependence &dep, const CoefficientVars &vars);

/// Legality of one unsatisfied dependence at the current dimension.
void build_legality(const Dependence &dep, const CoefficientVars &vars, const std::vector<PolyRow> &context,
                    ilp::Problem &prob);

/// Progression for a statement whose earlier non-scalar iterator rows are
/// `prev`: every row r of the integer orthogonal complement gives r.t >= 0,
/// and their sum gives sum r.t >= 1. Throws FullyScheduledStatement when
/// prev already has full rank.
void build_progression(const RatMatrix &prev, const std::vector<size_t> &t, ilp::Problem &prob);

/// Disjunctive progression: some row r of the orthogonal complement has
/// r.t >= 1 or -r.t >= 1, selected by binary indicators with big-M bounds.
void build_progression_disjunctive(const RatMatrix &prev, const std::vector<size_t> &t, int64_t coef_bound,
                                   ilp::Problem &prob);

/// Adds u (per parameter) and w with u.N + w - distance >= 0 for each
/// dependence and returns the objectives [sum u, w].
std::vector<ilp::AffineForm> cost_proximity(const std::vector<const Dependence *> &deps, const CoefficientVars &vars,
                                            const std::vector<PolyRow> &context, size_t n_params, ilp::Problem &prob);

/// Adds a binary e_d per dependence with distance - e_d >= 0 and returns the
/// objective sum(1 - e_d). These constraints imply legality.
ilp::AffineForm cost_feautrier(const std::vector<const Dependence *> &deps, const CoefficientVars &vars,
                               const std::vector<PolyRow> &context, ilp::Problem &prob);

/// c_k = max over accesses of 10^q, q the first subscript position using
/// iterator k; 0 when k is never used in a subscript.
std::vector<int64_t> contiguity_coefficients(const Statement &s);

/// One variable per statement equal to c_S . t_S; returns the objective
/// summing them. Statements in `skip` are left out.
ilp::AffineForm cost_contiguity(const Scop &scop, const CoefficientVars &vars, const std::vector<bool> &skip,
                                ilp::Problem &prob);

/// 10^rank by decreasing trip count (parametric counts exceed constants, ties
/// by iterator index); all ones when the domain is not rectangular.
std::vector<int64_t> blf_coefficients(const Statement &s);
ilp::AffineForm cost_big_loops_first(const Scop &scop, const CoefficientVars &vars, const std::vector<bool> &skip);

/// phi_target - phi_source of fixed rows, over the dependence layout. Rows
/// are laid out as (iterators, parameters, 1).
IntRow distance_row(const Dependence &dep, const IntRow &source_row, const IntRow &target_row, size_t n_params);

/// True iff no dependence has two instances equal on dimensions before `dim`
/// and different at `dim` (rational check, conservative).
bool detect_parallel(const Scop &scop, const Schedule &sched, size_t dim, const std::vector<Dependence> &deps);

/// Marks every unsatisfied dependence that the rows so far order strictly:
/// strongly at one dimension, or lexicographically over all of them.
/// Returns how many were newly marked.
size_t remove_satisfied(const Scop &scop, const Schedule &sched, std::vector<Dependence> &deps);

/// Scalar rows placing group g at constant g. Throws IllegalDistribution if
/// an unsatisfied dependence runs from a later group to an earlier one.
std::vector<IntRow> distribute_dim(const Scop &scop, const std::vector<std::vector<size_t>> &groups,
                                   const std::vector<Dependence> &deps);

/// Orders a partition topologically along unsatisfied dependences, ties by
/// smallest statement. Throws IllegalDistribution on a cycle.
std::vector<std::vector<size_t>> order_groups(std::vector<std::vector<size_t>> groups,
                                              const std::vector<Dependence> &deps);

struct SchedulerOptions {
  /// Receives every dimension ILP in plain text when set.
  std::ostream *ilp_dump = nullptr;
};

/// The iterative scheduler. deps are updated in place with satisfaction
/// levels. Throws ConfigInfeasible when custom constraints or forced fusion
/// leave no legal dimension.
Schedule schedule(const Scop &scop, std::vector<Dependence> &deps, const Config &config,
                  const SchedulerOptions &options = {});

}  // namespace polysched

#endif  // POLYSCHED_SCHEDULER_HPP_
