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
#ifndef POLYSCHED_POSTPROCESS_HPP_
#define POLYSCHED_POSTPROCESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polysched/config.hpp"
#include "polysched/dependence.hpp"
#include "polysched/schedule.hpp"
#include "polysched/scop.hpp"

namespace polysched {

/// Dimensions [begin, end) carrying one band index.
struct BandRange {
  size_t begin = 0;
  size_t end = 0;
  size_t width() const { return end - begin; }
};

/// Throws NotABand if no dimension carries `band`.
BandRange band_range(const Schedule &sched, int band);

/// True iff every dependence not yet separated before the band has a
/// non-negative distance on each of its dimensions. Dependences without a
/// satisfaction level count as unsatisfied. Untiled schedules only.
bool is_permutable(const Scop &scop, const Schedule &sched, const BandRange &range,
                   const std::vector<Dependence> &deps);

/// Tiles one band: for each dimension d of the band with size s > 1, a tile
/// iterator tau = floor(phi_d / s) is added per statement and a tile
/// dimension selecting it is placed ahead of the band. The tile dimensions
/// form band `band`, the point dimensions band `band` + 1, later bands shift
/// by one. A tile dimension is flagged parallel only when the point
/// dimension was and its distance is zero on every pair not separated
/// before the band. Throws NotABand, BandNotTilable (width < 2 or not
/// permutable) and DimensionMismatch (size count differs from the width).
Schedule tile_band(const Scop &scop, const Schedule &sched, int band, const std::vector<int64_t> &sizes,
                   const std::vector<Dependence> &deps);

/// Applies tile_band to every band listed in spec.sizes with a non-empty
/// size list, highest band first so lower band indices stay valid.
Schedule tile(const Scop &scop, const Schedule &sched, const TilingConfig &spec,
              const std::vector<Dependence> &deps);

/// Replaces the first row of a permutable band by the sum of its first two
/// rows, so that the second becomes parallel. Throws NotApplicable when the
/// band is narrower than 2, already parallel on its first dimension, not
/// permutable, or tiled.
Schedule wavefront_skew(const Scop &scop, const Schedule &sched, int band, const std::vector<Dependence> &deps);

/// The configured post-processing: wavefront skewing of every band where it
/// applies (when spec.wavefront is set), then tiling.
Schedule postprocess(const Scop &scop, Schedule sched, const TilingConfig &spec, const std::vector<Dependence> &deps);

}  // namespace polysched

#endif  // POLYSCHED_POSTPROCESS_HPP_
