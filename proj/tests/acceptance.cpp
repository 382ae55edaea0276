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
// Acceptance run: one PASS/FAIL line per criterion A1..A11. Tolerances and
// budgets are fixed below; the process exits non-zero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polysched/config.hpp"
#include "polysched/dependence.hpp"
#include "polysched/error.hpp"
#include "polysched/ilp.hpp"
#include "polysched/postprocess.hpp"
#include "polysched/schedule.hpp"
#include "polysched/scheduler.hpp"
#include "polysched/verify.hpp"
#include "support/corpus.hpp"
#include "support/random_ilp.hpp"
#include "support/random_scop.hpp"

namespace polysched {
namespace {

constexpr double kA1Seconds = 1.0;
constexpr double kA5Seconds = 300.0;
constexpr double kA10Seconds = 60.0;
constexpr int kA3MinKernels = 20;
constexpr int kA5Kernels = 200;
constexpr int kA10Problems = 500;
constexpr uint32_t kA5Seed = 20261015;
constexpr uint32_t kA10Seed = 4242;

const char *const kPresets[] = {"pluto-style", "tensor-style", "feautrier-style", "isl-style"};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string artifact;  // deterministic output, compared by A11
};

void require(Outcome &o, bool cond, const std::string &what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

Config preset(const std::string &name) {
  Config c;
  apply_preset(c, name);
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

bool full_rank(const Scop &scop, const Schedule &s) {
  for (size_t k = 0; k < scop.statements.size(); ++k)
    if (iterator_rank(scop, s, k) != scop.statements[k].depth()) return false;
  return true;
}

// ---- A1 ---------------------------------------------------------------------

Outcome a1() {
  Outcome o;
  Scop scop = testing::load_kernel("fig1");
  Config distribute = preset("tensor-style");
  distribute.fusion.push_back({0, {}, {{0}, {1}}});
  Config autovec = preset("tensor-style");
  autovec.auto_vectorize = true;
  const std::vector<IntRow> s0{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}};
  const std::vector<IntRow> s1{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  double worst = 0;
  for (const Config *c : {&distribute, &autovec}) {
    auto t0 = std::chrono::steady_clock::now();
    auto deps = compute_dependences(scop);
    Schedule s = schedule(scop, deps, *c);
    worst = std::max(worst, seconds_since(t0));
    require(o, s.statements[0].rows == s0, "S0 rows differ from (0; j; i)");
    require(o, s.statements[1].rows == s1, "S1 rows differ from (1; i; j)");
    o.artifact += emit_schedule(scop, s, ScheduleFormat::Json);
  }
  require(o, worst < kA1Seconds, "runtime " + fmt_seconds(worst));
  if (o.pass) o.detail = "S0 (0; j; i), S1 (1; i; j) under distribution and autoVectorize, worst " + fmt_seconds(worst);
  return o;
}

// ---- A2 ---------------------------------------------------------------------

Outcome a2() {
  Outcome o;
  Scop scop = testing::load_kernel("fig1");
  const auto c0 = contiguity_coefficients(scop.statements[0]);
  const auto c1 = contiguity_coefficients(scop.statements[1]);
  const auto b0 = blf_coefficients(scop.statements[0]);
  const auto b1 = blf_coefficients(scop.statements[1]);
  require(o, c0 == std::vector<int64_t>{10, 1}, "contiguity S0");
  require(o, c1 == std::vector<int64_t>{1, 10}, "contiguity S1");
  require(o, b0 == std::vector<int64_t>{1, 10} && b1 == std::vector<int64_t>{1, 10}, "bigLoopsFirst");
  for (const auto *v : {&c0, &c1, &b0, &b1})
    for (int64_t x : *v) o.artifact += std::to_string(x) + ",";
  if (o.pass) o.detail = "contiguity (10,1) (1,10), bigLoopsFirst (1,10) (1,10)";
  return o;
}

// ---- A3 ---------------------------------------------------------------------

Outcome a3() {
  Outcome o;
  int kernels = 0;
  for (const auto &name : testing::corpus_kernels()) {
    Scop scop = testing::load_kernel(name);
    Config c;
    c.constraints.push_back({std::nullopt, parse_constraint_expr("Si_it_i <= 1")});
    auto deps = compute_dependences(scop);
    Schedule s = schedule(scop, deps, c);
    ++kernels;
    for (size_t k = 0; k < scop.statements.size(); ++k) {
      const RowLayout l = row_layout(scop, s, k);
      for (const auto &row : s.statements[k].rows) {
        if (is_scalar_row(row, l)) continue;
        int ones = 0, others = 0;
        for (size_t j = 0; j < l.depth; ++j) (row[j] == 1 ? ones : others) += row[j] != 0;
        require(o, ones == 1 && others == 0, name + ": non-unit row for " + scop.statements[k].name);
      }
    }
    o.artifact += emit_schedule(scop, s, ScheduleFormat::MatrixText);
  }
  require(o, kernels >= kA3MinKernels, "only " + std::to_string(kernels) + " kernels");
  if (o.pass) o.detail = std::to_string(kernels) + " corpus kernels, every non-scalar row a unit vector";
  return o;
}

// ---- A4 ---------------------------------------------------------------------

Outcome a4() {
  Outcome o;
  Scop scop = testing::load_kernel("chain1d");
  auto deps = compute_dependences(scop);
  Schedule s = schedule(scop, deps, preset("pluto-style"));
  require(o, s.statements[0].rows == std::vector<IntRow>{{1, 0, 0}}, "schedule is not t = i");
  require(o, deps.size() == 1 && deps[0].satisfied_at == std::optional<size_t>(0), "not satisfied at dim 0");
  require(o, s.parallel == std::vector<bool>{false}, "dim 0 not sequential");

  // Exhaustive: t in [0,4] with progression t >= 1, proximity u*N + w >= t
  // for every N >= 2, i.e. 2u + w >= t; lexicographic minimum of (u, w, t).
  std::vector<int64_t> best;
  for (int64_t t = 1; t <= 4; ++t)
    for (int64_t u = 0; u <= 4; ++u)
      for (int64_t w = 0; w <= 4; ++w)
        if (2 * u + w >= t && (best.empty() || std::vector<int64_t>{u, w, t} < best)) best = {u, w, t};

  auto fresh = compute_dependences(scop);
  ilp::Problem p;
  auto vars = declare_coefficients(scop, {}, {false}, {}, p);
  build_legality(fresh[0], vars, scop.effective_context(), p);
  build_progression(RatMatrix(0, 1), vars.it[0], p);
  for (auto &obj : cost_proximity({&fresh[0]}, vars, scop.effective_context(), 1, p)) p.add_objective(obj);
  auto sol = ilp::solve_lex_min(p);
  require(o, sol.optimal(), "proximity ILP not optimal");
  if (sol.optimal()) {
    std::vector<int64_t> got{sol.objective_values[0].to_int64(), sol.objective_values[1].to_int64(),
                             sol[vars.it[0][0]].to_int64()};
    require(o, got == best, "ILP optimum differs from enumeration");
    require(o, best == std::vector<int64_t>{0, 1, 1}, "enumeration optimum is not (0, 1)");
    for (int64_t v : got) o.artifact += std::to_string(v) + ",";
  }
  o.artifact += emit_schedule(scop, s, ScheduleFormat::Json);
  if (o.pass) o.detail = "t = 1, (u, w) = (0, 1) as enumerated, satisfied at dim 0, sequential";
  return o;
}

// ---- A5 / A6 ----------------------------------------------------------------

struct RandomRun {
  size_t schedules = 0;
  size_t violations = 0;
  size_t flag_errors = 0;
  size_t rank_failures = 0;
  size_t errors = 0;
  std::string first_failure;
  std::string artifact;
  double seconds = 0;
};

RandomRun compute_random_run() {
  RandomRun r;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(kA5Seed);
  for (int iter = 0; iter < kA5Kernels; ++iter) {
    Scop scop = testing::random_scop(rng);
    for (const char *p : kPresets) {
      const std::string label = "kernel " + std::to_string(iter) + " " + p;
      try {
        auto deps = compute_dependences(scop);
        Schedule s = schedule(scop, deps, preset(p));
        ++r.schedules;
        LegalityReport rep = verify_legality(scop, s, compute_dependences(scop), {});
        r.violations += rep.violations.size();
        r.flag_errors += rep.parallel_flag_errors.size();
        r.rank_failures += !full_rank(scop, s);
        if (!rep.legal() && r.first_failure.empty()) r.first_failure = label;
        r.artifact += emit_schedule(scop, s, ScheduleFormat::MatrixText);
      } catch (const Error &e) {
        ++r.errors;
        if (r.first_failure.empty()) r.first_failure = label + ": " + e.what();
      }
    }
  }
  r.seconds = seconds_since(t0);
  return r;
}

// Filled by A5 and reused by A6 within the same round.
RandomRun g_random_run;

const RandomRun &random_run() {
  if (g_random_run.schedules == 0 && g_random_run.errors == 0) g_random_run = compute_random_run();
  return g_random_run;
}

Outcome a5() {
  Outcome o;
  g_random_run = compute_random_run();
  const RandomRun &r = g_random_run;
  require(o, r.errors == 0, "scheduling error at " + r.first_failure);
  require(o, r.violations == 0, std::to_string(r.violations) + " violations, first at " + r.first_failure);
  require(o, r.flag_errors == 0, std::to_string(r.flag_errors) + " parallel flag errors, first at " + r.first_failure);
  require(o, r.seconds < kA5Seconds, "runtime " + fmt_seconds(r.seconds));
  o.artifact = r.artifact;
  if (o.pass)
    o.detail = std::to_string(kA5Kernels) + " kernels x 4 presets legal, no flag errors, " + fmt_seconds(r.seconds);
  return o;
}

Outcome a6() {
  Outcome o;
  size_t checked = 0, failures = 0;
  std::string first;
  for (const auto &name : testing::corpus_kernels()) {
    Scop scop = testing::load_kernel(name);
    for (const char *p : kPresets) {
      auto deps = compute_dependences(scop);
      Schedule s = schedule(scop, deps, preset(p));
      ++checked;
      if (!full_rank(scop, s)) {
        ++failures;
        if (first.empty()) first = name + " " + p;
      }
      o.artifact += emit_schedule(scop, s, ScheduleFormat::MatrixText);
    }
  }
  const RandomRun &r = random_run();
  checked += r.schedules;
  failures += r.rank_failures;
  require(o, failures == 0, std::to_string(failures) + " rank-deficient schedules, first " + first);
  if (o.pass) o.detail = std::to_string(checked) + " schedules (corpus and random), rank = depth for every statement";
  return o;
}

// ---- A7 ---------------------------------------------------------------------

Outcome a7() {
  Outcome o;
  Scop scop = testing::load_kernel("jacobi1d");
  auto deps = compute_dependences(scop);
  Schedule s = schedule(scop, deps, preset("isl-style"));
  size_t feautrier_dims = 0;
  for (const auto &d : s.dims)
    for (const auto &c : d.costs) feautrier_dims += c == "feautrier";
  require(o, feautrier_dims >= 1, "no Feautrier dimension");
  LegalityReport r = verify_legality(scop, s, compute_dependences(scop), {});
  require(o, r.legal(), "schedule not legal");
  o.artifact = emit_schedule(scop, s, ScheduleFormat::Json) + report_to_json(scop, r);
  if (o.pass) o.detail = std::to_string(feautrier_dims) + " Feautrier dimension(s) on jacobi1d, legal";
  return o;
}

// ---- A8 ---------------------------------------------------------------------

Outcome a8() {
  Outcome o;
  Scop scop = testing::load_kernel("trsml");
  const size_t depth = scop.statements[0].depth();
  auto deps = compute_dependences(scop);
  Schedule plain = schedule(scop, deps, preset("pluto-style"));
  // The loop proximity puts outermost, which carries no dependence.
  size_t loop = depth;
  for (size_t k = 0; k < depth; ++k)
    if (plain.statements[0].rows[0][k] == 1) loop = k;
  require(o, loop < depth, "first row is not a single loop");
  require(o, plain.parallel[0], "outer loop is not dependence-free");
  if (!o.pass) return o;

  Config c = preset("pluto-style");
  c.directives.push_back({0, loop, DirectiveKind::Vectorize});
  deps = compute_dependences(scop);
  Schedule s = schedule(scop, deps, c);
  IntRow unit(plain.statements[0].rows[0].size(), 0);
  unit[loop] = 1;
  require(o, s.statements[0].rows.back() == unit, "vectorized loop is not innermost with unit coefficient");
  require(o, s.warnings.empty(), "directive dropped");
  LegalityReport r = verify_legality(scop, s, compute_dependences(scop), {});
  require(o, r.legal(), "schedule not legal");
  o.artifact = emit_schedule(scop, plain, ScheduleFormat::Json) + emit_schedule(scop, s, ScheduleFormat::Json);
  if (o.pass)
    o.detail = "loop " + scop.statements[0].iterators[loop] + " moves from outermost to innermost, legal";
  return o;
}

// ---- A9 ---------------------------------------------------------------------

Outcome a9() {
  Outcome o;
  Scop scop = parse_scop(R"({"parameters": [], "statements": [
    {"name": "S0", "iterators": ["i", "j"],
     "domain": [[1, 0, 0], [-1, 0, 3], [0, 1, 0], [0, -1, 3]],
     "accesses": [{"array": "b", "kind": "write", "subscripts": [[1, 0, 0], [0, 1, 0]]},
                  {"array": "a", "kind": "read", "subscripts": [[1, 0, 0], [0, 1, 0]]}],
     "initial_schedule": [[0, 0, 0], [1, 0, 0], [0, 0, 0], [0, 1, 0], [0, 0, 0]]}]})");
  auto deps = compute_dependences(scop);
  Schedule s = schedule(scop, deps, preset("pluto-style"));
  require(o, s.bands == std::vector<int>{0, 0} && s.parallel == std::vector<bool>{true, true},
          "not a 2-D parallel band");
  if (!o.pass) return o;
  Schedule tiled = tile_band(scop, s, 0, {2, 2}, deps);
  LegalityReport r = verify_legality(scop, tiled, compute_dependences(scop), {});
  require(o, r.legal() && r.instances_checked == 16, "tiled schedule not legal on 4x4");
  InstanceTrace tt = enumerate_dates(scop, tiled, {});
  std::vector<std::vector<int64_t>> tiles;
  for (const auto &e : tt.entries) {
    std::vector<int64_t> t{e.date[0], e.date[1]};
    if (tiles.empty() || tiles.back() != t) tiles.push_back(t);
  }
  require(o, tiles.size() == 4, "expected 4 tiles");

  Schedule unit = tile_band(scop, s, 0, {1, 1}, deps);
  InstanceTrace a = enumerate_dates(scop, unit, {}), b = enumerate_dates(scop, s, {});
  bool same = a.entries.size() == b.entries.size();
  for (size_t k = 0; same && k < a.entries.size(); ++k)
    same = a.entries[k].statement == b.entries[k].statement && a.entries[k].iteration == b.entries[k].iteration;
  require(o, same, "sizes (1,1) change the order");
  o.artifact = emit_schedule(scop, tiled, ScheduleFormat::Json) + print_loops(tt, scop);
  if (o.pass) o.detail = "(2,2): 16 points in 4 tiles, legal; (1,1): order identical";
  return o;
}

// ---- A10 --------------------------------------------------------------------

ilp::Problem a10_problem(std::mt19937 &rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  ilp::Problem p;
  const int n = pick(1, 4);
  for (int v = 0; v < n; ++v) p.add_variable("x" + std::to_string(v), Rational(0), Rational(5));
  const int m = pick(0, 8);
  for (int c = 0; c < m; ++c) {
    ilp::AffineForm f(Rational(pick(-6, 10)));
    for (int v = 0; v < n; ++v) f.add(v, Rational(pick(-3, 3)));
    p.add_constraint(f, pick(0, 5) == 0 ? ilp::Relation::Equal : ilp::Relation::GreaterEqual);
  }
  const int k = pick(1, 3);
  for (int o = 0; o < k; ++o) {
    ilp::AffineForm f;
    for (int v = 0; v < n; ++v) f.add(v, Rational(pick(-3, 3)));
    p.add_objective(f);
  }
  return p;
}

Outcome a10() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(kA10Seed);
  size_t optimal = 0;
  for (int i = 0; i < kA10Problems; ++i) {
    ilp::Problem p = a10_problem(rng);
    auto sol = ilp::solve_lex_min(p);
    auto brute = testing::brute_force_lex_min(p);
    const std::string label = "problem " + std::to_string(i);
    require(o, sol.optimal() == brute.has_value(), label + ": status differs");
    if (sol.optimal() && brute) {
      ++optimal;
      for (size_t k = 0; k < p.objectives().size(); ++k)
        require(o, sol.objective_values[k] == p.objectives()[k].evaluate(*brute), label + ": objective differs");
      for (const auto &v : sol.objective_values) o.artifact += v.to_string() + ",";
    }
    o.artifact += ";";
  }
  const double secs = seconds_since(t0);
  require(o, secs < kA10Seconds, "runtime " + fmt_seconds(secs));
  if (o.pass)
    o.detail = std::to_string(kA10Problems) + " problems (" + std::to_string(optimal) +
               " feasible) match enumeration, " + fmt_seconds(secs);
  return o;
}

}  // namespace
}  // namespace polysched

int main() {
  using namespace polysched;
  struct Criterion {
    const char *id;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{{"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
                                        {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
  auto guarded = [](const Criterion &c) {
    try {
      return c.run();
    } catch (const std::exception &e) {
      return Outcome{false, std::string("exception: ") + e.what(), ""};
    }
  };
  bool all = true;
  std::vector<std::string> first_artifacts;
  for (const auto &c : criteria) {
    Outcome o = guarded(c);
    all = all && o.pass;
    first_artifacts.push_back(o.artifact);
    std::printf("%-4s %s  %s\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }

  // A11: a second run of every criterion yields byte-identical artifacts.
  std::string differing;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (guarded(criteria[i]).artifact != first_artifacts[i]) differing += std::string(" ") + criteria[i].id;
  }
  const bool a11 = differing.empty();
  all = all && a11;
  std::printf("%-4s %s  %s\n", "A11", a11 ? "PASS" : "FAIL",
              a11 ? "A1..A10 re-run, artifacts byte-identical" : ("artifacts differ:" + differing).c_str());
  return all ? 0 : 1;
}
