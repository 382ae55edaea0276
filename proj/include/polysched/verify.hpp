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
#ifndef POLYSCHED_VERIFY_HPP_
#define POLYSCHED_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polysched/dependence.hpp"
#include "polysched/schedule.hpp"
#include "polysched/scop.hpp"

namespace polysched {

/// Parameter values by name. Parameters not listed take the default value.
using ParamValues = std::map<std::string, int64_t>;

struct EnumerateOptions {
  int64_t default_param = 6;
  /// Maximum number of integer points per enumerated set.
  size_t budget = 100000;
};

/// Parameter values in scop order; throws UnknownSymbol for names the scop
/// does not declare.
std::vector<int64_t> resolve_params(const Scop &scop, const ParamValues &params, const EnumerateOptions &options = {});

/// Integer points of p with its parameters fixed, in lexicographic order.
/// Throws UnboundedDomain or BudgetExceeded.
std::vector<std::vector<int64_t>> enumerate_points(const Polyhedron &p, const std::vector<int64_t> &params,
                                                   size_t budget);

/// Date of one instance. Tile iterators evaluate to floor(phi / size).
std::vector<int64_t> instance_date(const Scop &scop, const Schedule &sched, size_t stmt,
                                   const std::vector<int64_t> &iteration, const std::vector<int64_t> &params);

struct TraceEntry {
  size_t statement = 0;
  std::vector<int64_t> iteration;
  std::vector<int64_t> date;
};

/// Sorted by date, then statement index, then iteration.
struct InstanceTrace {
  std::vector<TraceEntry> entries;
};

InstanceTrace enumerate_dates(const Scop &scop, const Schedule &sched, const ParamValues &params,
                              const EnumerateOptions &options = {});

struct Violation {
  std::string kind;  // "order" or "injectivity"
  size_t dependence = 0;
  size_t source = 0;
  size_t target = 0;
  std::vector<int64_t> source_iteration;
  std::vector<int64_t> target_iteration;
  std::vector<int64_t> source_date;
  std::vector<int64_t> target_date;
};

struct ParallelFlagError {
  size_t dimension = 0;
  size_t dependence = 0;
  std::vector<int64_t> source_iteration;
  std::vector<int64_t> target_iteration;
};

struct LegalityReport {
  std::vector<Violation> violations;
  std::vector<ParallelFlagError> parallel_flag_errors;
  size_t instances_checked = 0;

  bool legal() const { return violations.empty() && parallel_flag_errors.empty(); }
};

/// Checks every dependent pair under the given parameters: the source date
/// must precede the target date, and the first dimension where they differ
/// must not be flagged parallel. Also checks that no statement maps two
/// instances to the same date.
LegalityReport verify_legality(const Scop &scop, const Schedule &sched, const std::vector<Dependence> &deps,
                               const ParamValues &params, const EnumerateOptions &options = {});

std::string report_to_json(const Scop &scop, const LegalityReport &report);

/// Loop-nest sketch of a sorted trace: consecutive date slices with the same
/// inner structure are merged into one loop whose range is their union.
std::string print_loops(const InstanceTrace &trace, const Scop &scop);
/// Same, annotating each loop with the row expression of every statement
/// it encloses.
std::string print_loops(const InstanceTrace &trace, const Scop &scop, const Schedule *sched);

}  // namespace polysched

#endif  // POLYSCHED_VERIFY_HPP_
