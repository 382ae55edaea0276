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
#ifndef POLYSCHED_DEPENDENCE_HPP_
#define POLYSCHED_DEPENDENCE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polysched/scop.hpp"

namespace polysched {

enum class DepKind { RAW, WAR, WAW };

/// Memory-based dependence between an instance of `source` and a later
/// instance of `target`. The polyhedron's columns are the source iterators,
/// then the target iterators, then the parameters.
struct Dependence {
  size_t source = 0;
  size_t target = 0;
  DepKind kind = DepKind::RAW;
  std::string array;
  size_t level = 0;  // initial-schedule row at which the order is decided
  size_t source_access = 0;
  size_t target_access = 0;
  Polyhedron polyhedron;
  std::optional<size_t> satisfied_at;

  bool satisfied() const { return satisfied_at.has_value(); }
  size_t source_depth() const;
  size_t target_depth() const;
  bool operator==(const Dependence &) const = default;
};

std::vector<Dependence> compute_dependences(const Scop &scop);

/// True iff p, the context (over parameters and constant) and any extra rows
/// (in p's layout) admit no rational point.
bool is_empty(const Polyhedron &p, const std::vector<PolyRow> &context, const std::vector<PolyRow> &extra = {});

/// Strongly connected components of the graph of unsatisfied dependences,
/// restricted to `nodes` when given, in topological order of the
/// condensation; ties go to the component with the smallest statement index.
std::vector<std::vector<size_t>> scc_condense(size_t n_statements, const std::vector<Dependence> &deps);
std::vector<std::vector<size_t>> scc_condense(const std::vector<size_t> &nodes, const std::vector<Dependence> &deps);

std::string deps_to_json(const std::vector<Dependence> &deps);
std::vector<Dependence> parse_deps(const std::string &text, const Scop &scop);

std::string to_string(DepKind kind);

}  // namespace polysched

#endif  // POLYSCHED_DEPENDENCE_HPP_
