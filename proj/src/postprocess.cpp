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
#include "polysched/postprocess.hpp"

#include <algorithm>
#include <string>

#include "polysched/error.hpp"
#include "polysched/scheduler.hpp"

namespace polysched {

namespace {

// Row over (iterators, parameters, 1); tile columns must be zero.
IntRow untiled_row(const Scop &scop, const Schedule &sched, size_t s, size_t dim) {
  const RowLayout l = row_layout(scop, sched, s);
  const IntRow &row = sched.statements[s].rows[dim];
  IntRow out(row.begin(), row.begin() + l.depth);
  for (size_t k = 0; k < l.tiles; ++k)
    if (row[l.depth + k] != 0) throw Error(ErrorKind::BandNotTilable, "band rows already use tile iterators");
  out.insert(out.end(), row.begin() + l.param_begin(), row.end());
  return out;
}

IntRow delta(const Scop &scop, const Schedule &sched, const Dependence &d, size_t dim) {
  return distance_row(d, untiled_row(scop, sched, d.source, dim), untiled_row(scop, sched, d.target, dim),
                      scop.parameters.size());
}

bool relevant(const Dependence &d, size_t begin) { return !d.satisfied_at || *d.satisfied_at >= begin; }

std::vector<PolyRow> equal_before(const Scop &scop, const Schedule &sched, const Dependence &d, size_t begin) {
  std::vector<PolyRow> eq;
  for (size_t j = 0; j < begin; ++j) eq.push_back({RowRel::Equal, delta(scop, sched, d, j)});
  return eq;
}

// Some unseparated pair has distance <= -1 (sign = -1) or >= 1 (sign = 1).
bool reaches(const Scop &scop, const Schedule &sched, const Dependence &d, size_t begin, size_t dim, int sign,
             const std::vector<PolyRow> &context) {
  auto extra = equal_before(scop, sched, d, begin);
  IntRow r = delta(scop, sched, d, dim);
  if (sign < 0)
    for (auto &v : r) v = -v;
  r.back() -= 1;
  extra.push_back({RowRel::GreaterEqual, r});
  return !is_empty(d.polyhedron, context, extra);
}

}  // namespace

BandRange band_range(const Schedule &sched, int band) {
  auto first = std::find(sched.bands.begin(), sched.bands.end(), band);
  if (first == sched.bands.end()) throw Error(ErrorKind::NotABand, "no dimension belongs to band " + std::to_string(band));
  BandRange r;
  r.begin = first - sched.bands.begin();
  r.end = r.begin;
  while (r.end < sched.bands.size() && sched.bands[r.end] == band) ++r.end;
  return r;
}

bool is_permutable(const Scop &scop, const Schedule &sched, const BandRange &range,
                   const std::vector<Dependence> &deps) {
  const auto context = scop.effective_context();
  for (const auto &d : deps) {
    if (!relevant(d, range.begin)) continue;
    for (size_t dim = range.begin; dim < range.end; ++dim)
      if (reaches(scop, sched, d, range.begin, dim, -1, context)) return false;
  }
  return true;
}

Schedule tile_band(const Scop &scop, const Schedule &sched, int band, const std::vector<int64_t> &sizes,
                   const std::vector<Dependence> &deps) {
  const BandRange range = band_range(sched, band);
  if (range.width() < 2)
    throw Error(ErrorKind::BandNotTilable, "band " + std::to_string(band) + " has a single dimension");
  if (sizes.size() != range.width())
    throw Error(ErrorKind::DimensionMismatch, "band " + std::to_string(band) + " has " +
                                                  std::to_string(range.width()) + " dimensions but " +
                                                  std::to_string(sizes.size()) + " tile sizes were given");
  for (int64_t s : sizes)
    if (s < 1) throw Error(ErrorKind::SchemaError, "tile sizes must be positive");
  if (!is_permutable(scop, sched, range, deps))
    throw Error(ErrorKind::BandNotTilable, "band " + std::to_string(band) + " is not permutable");

  std::vector<size_t> tiled;
  for (size_t k = 0; k < sizes.size(); ++k)
    if (sizes[k] > 1) tiled.push_back(range.begin + k);
  if (tiled.empty()) return sched;

  const auto context = scop.effective_context();
  Schedule out;
  out.warnings = sched.warnings;
  out.statements.resize(sched.statements.size());
  for (size_t s = 0; s < sched.statements.size(); ++s) {
    const RowLayout l = row_layout(scop, sched, s);
    const StatementSchedule &in = sched.statements[s];
    StatementSchedule &st = out.statements[s];
    st.tiles = in.tiles;
    for (size_t dim : tiled) {
      st.tiles.push_back({"T" + std::to_string(dim) + "_" + scop.statements[s].name, untiled_row(scop, sched, s, dim),
                          sizes[dim - range.begin]});
    }
    const size_t added = tiled.size();
    auto widen = [&](const IntRow &row) {
      IntRow r(row.begin(), row.begin() + l.param_begin());
      r.insert(r.end(), added, 0);
      r.insert(r.end(), row.begin() + l.param_begin(), row.end());
      return r;
    };
    for (size_t dim = 0; dim < sched.dimensions(); ++dim) {
      if (dim == range.begin) {
        for (size_t t = 0; t < added; ++t) {
          IntRow r(l.width() + added, 0);
          r[l.param_begin() + t] = 1;
          st.rows.push_back(std::move(r));
        }
      }
      st.rows.push_back(widen(in.rows[dim]));
    }
  }
  for (size_t dim = 0; dim < sched.dimensions(); ++dim) {
    const int b = sched.bands[dim];
    if (dim == range.begin) {
      for (size_t t : tiled) {
        bool parallel = sched.parallel[t];
        for (const auto &d : deps) {
          if (!parallel) break;
          if (!relevant(d, range.begin)) continue;
          parallel = !reaches(scop, sched, d, range.begin, t, 1, context) &&
                     !reaches(scop, sched, d, range.begin, t, -1, context);
        }
        out.bands.push_back(band);
        out.parallel.push_back(parallel);
        out.dims.push_back({DimKind::Tile, sched.dims[t].costs});
      }
    }
    out.bands.push_back(b >= band ? b + 1 : b);
    out.parallel.push_back(sched.parallel[dim]);
    out.dims.push_back(sched.dims[dim]);
  }
  return out;
}

Schedule tile(const Scop &scop, const Schedule &sched, const TilingConfig &spec, const std::vector<Dependence> &deps) {
  Schedule out = sched;
  for (size_t b = spec.sizes.size(); b-- > 0;) {
    if (spec.sizes[b].empty()) continue;
    out = tile_band(scop, out, static_cast<int>(b), spec.sizes[b], deps);
  }
  return out;
}

Schedule wavefront_skew(const Scop &scop, const Schedule &sched, int band, const std::vector<Dependence> &deps) {
  BandRange range;
  try {
    range = band_range(sched, band);
  } catch (const Error &) {
    throw Error(ErrorKind::NotApplicable, "no dimension belongs to band " + std::to_string(band));
  }
  for (const auto &st : sched.statements)
    if (!st.tiles.empty()) throw Error(ErrorKind::NotApplicable, "wavefront skewing runs before tiling");
  if (range.width() < 2) throw Error(ErrorKind::NotApplicable, "band has a single dimension");
  if (sched.parallel[range.begin]) throw Error(ErrorKind::NotApplicable, "band is already parallel outermost");
  if (!is_permutable(scop, sched, range, deps)) throw Error(ErrorKind::NotApplicable, "band is not permutable");

  Schedule out = sched;
  for (auto &st : out.statements) {
    IntRow &first = st.rows[range.begin];
    const IntRow &second = st.rows[range.begin + 1];
    for (size_t k = 0; k < first.size(); ++k) first[k] += second[k];
  }
  // Distances only grow on the summed row, so no satisfaction moves later
  // and the flags below stay sound.
  for (size_t dim = range.begin; dim < range.end; ++dim) out.parallel[dim] = detect_parallel(scop, out, dim, deps);
  return out;
}

Schedule postprocess(const Scop &scop, Schedule sched, const TilingConfig &spec, const std::vector<Dependence> &deps) {
  if (spec.wavefront) {
    for (int b = 0; !sched.bands.empty() && b <= sched.bands.back(); ++b) {
      try {
        sched = wavefront_skew(scop, sched, b, deps);
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::NotApplicable) throw;
      }
    }
  }
  return tile(scop, sched, spec, deps);
}

}  // namespace polysched
