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
#ifndef POLYSCHED_SCHEDULE_HPP_
#define POLYSCHED_SCHEDULE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polysched/scop.hpp"

namespace polysched {

/// Auxiliary tile iterator tau with size * tau <= phi <= size * tau + size - 1,
/// phi being an affine row over (iterators, parameters, 1).
struct TileIterator {
  std::string name;
  IntRow phi;
  int64_t size = 1;

  bool operator==(const TileIterator &) const = default;
};

/// Rows are laid out as (iterators, tile iterators, parameters, 1).
struct StatementSchedule {
  std::vector<TileIterator> tiles;
  std::vector<IntRow> rows;

  bool operator==(const StatementSchedule &) const = default;
};

enum class DimKind { Solve, Distribute, Tile, Pad };

/// How one dimension was produced: kept for inspection and strategy tests.
struct DimensionInfo {
  DimKind kind = DimKind::Solve;
  std::vector<std::string> costs;

  bool operator==(const DimensionInfo &) const = default;
};

struct Schedule {
  std::vector<StatementSchedule> statements;
  std::vector<int> bands;
  std::vector<bool> parallel;
  std::vector<DimensionInfo> dims;
  std::vector<std::string> warnings;

  size_t dimensions() const { return bands.size(); }
  bool operator==(const Schedule &other) const {
    return statements == other.statements && bands == other.bands && parallel == other.parallel && dims == other.dims;
  }
};

/// Accessors into a row of statement s laid out as above.
struct RowLayout {
  size_t depth = 0;
  size_t tiles = 0;
  size_t params = 0;

  size_t width() const { return depth + tiles + params + 1; }
  size_t param_begin() const { return depth + tiles; }
};
RowLayout row_layout(const Scop &scop, const Schedule &sched, size_t stmt);

/// True iff the row has no iterator or tile-iterator coefficient.
bool is_scalar_row(const IntRow &row, const RowLayout &layout);

/// Rank of the iterator parts of the non-scalar rows of statement s.
size_t iterator_rank(const Scop &scop, const Schedule &sched, size_t stmt);

/// Validates shape against the scop; throws IncompleteSchedule or DimensionMismatch.
void check_schedule(const Scop &scop, const Schedule &sched);

/// The 2k+1 initial schedule of the scop, one band per dimension.
Schedule initial_schedule(const Scop &scop);

enum class ScheduleFormat { Json, MatrixText };
std::string emit_schedule(const Scop &scop, const Schedule &sched, ScheduleFormat format);
Schedule parse_schedule(const std::string &text, const Scop &scop);

std::string to_string(DimKind kind);

}  // namespace polysched

#endif  // POLYSCHED_SCHEDULE_HPP_
