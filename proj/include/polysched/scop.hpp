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
#ifndef POLYSCHED_SCOP_HPP_
#define POLYSCHED_SCOP_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace polysched {

using IntRow = std::vector<int64_t>;

enum class RowRel { GreaterEqual, Equal };

/// One relation: coefficients (last entry is the constant) >= 0 or == 0.
struct PolyRow {
  RowRel rel = RowRel::GreaterEqual;
  IntRow coef;

  bool operator==(const PolyRow &) const = default;
};

/// Integer polyhedron over an explicit column layout. Columns are the
/// variables in order; the constant column is implicit and comes last. The
/// last n_params variables are always the program parameters.
struct Polyhedron {
  std::vector<std::string> columns;
  size_t n_params = 0;
  std::vector<PolyRow> rows;

  size_t width() const { return columns.size() + 1; }
  size_t param_offset() const { return columns.size() - n_params; }
  /// Value of every row at an integer point (one value per column, no constant).
  bool contains(const std::vector<int64_t> &point) const;

  bool operator==(const Polyhedron &) const = default;
};

enum class AccessKind { Read, Write };

struct Access {
  std::string array;
  AccessKind kind = AccessKind::Read;
  std::vector<IntRow> subscripts;  // subscript 0 varies slowest

  bool operator==(const Access &) const = default;
};

struct Statement {
  std::string name;
  std::vector<std::string> iterators;
  Polyhedron domain;  // columns: iterators, parameters
  std::vector<Access> accesses;
  std::vector<IntRow> initial_schedule;  // 2k+1 rows over (iterators, parameters, 1)

  size_t depth() const { return iterators.size(); }
  bool operator==(const Statement &) const = default;
};

struct Scop {
  std::vector<std::string> parameters;
  std::vector<PolyRow> context;  // over (parameters, 1)
  std::vector<Statement> statements;

  /// The context used for emptiness decisions: the supplied one, or every
  /// parameter >= 2 when none is given.
  std::vector<PolyRow> effective_context() const;
  bool operator==(const Scop &) const = default;
};

/// Parses and validates a Mini-SCoP JSON document.
Scop parse_scop(const std::string &text);
std::string scop_to_json(const Scop &scop);

/// Copies context rows (over parameters and constant) into the layout of p.
std::vector<PolyRow> embed_context(const std::vector<PolyRow> &context, const Polyhedron &p);

/// Dot product of row (with trailing constant) and point (without it).
int64_t evaluate_row(const IntRow &row, const std::vector<int64_t> &point);

std::string to_string(AccessKind kind);

}  // namespace polysched

#endif  // POLYSCHED_SCOP_HPP_
