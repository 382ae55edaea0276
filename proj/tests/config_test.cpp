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
#include "polysched/config.hpp"

#include <gtest/gtest.h>

#include <random>

#include "polysched/error.hpp"
#include "support/corpus.hpp"

namespace polysched {
namespace {

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Internal;
}

TEST(ConfigParseTest, DefaultsAndPresets) {
  Config empty = parse_config("{}");
  EXPECT_EQ(empty.default_costs, (std::vector<std::string>{"proximity"}));
  EXPECT_TRUE(empty.constraints.empty());
  EXPECT_FALSE(empty.tiling.has_value());

  Config pluto = parse_config(R"({"costFunctions": {"default": ["proximity"]}})");
  EXPECT_EQ(pluto.default_costs, (std::vector<std::string>{"proximity"}));

  Config tensor = parse_config(
      R"({"costFunctions": {"default": ["contiguity", "proximity"]},
          "constraints": [{"scope": "all", "expr": "Si_it_i <= 1"}]})");
  Config preset;
  apply_preset(preset, "tensor-style");
  EXPECT_EQ(tensor.default_costs, preset.default_costs);
  ASSERT_EQ(tensor.constraints.size(), 1u);
  ASSERT_EQ(preset.constraints.size(), 1u);
  EXPECT_EQ(tensor.constraints[0].expr, preset.constraints[0].expr);
  EXPECT_FALSE(tensor.constraints[0].dimension.has_value());

  Config feautrier = parse_config(R"({"preset": "feautrier-style"})");
  EXPECT_EQ(feautrier.default_costs, (std::vector<std::string>{"feautrier"}));
  Config isl = parse_config(R"({"preset": "isl-style"})");
  EXPECT_TRUE(static_cast<bool>(isl.callback));
}

TEST(ConfigParseTest, ExplicitKeysOverridePreset) {
  Config c = parse_config(R"({"preset": "tensor-style", "costFunctions": {"default": ["bigLoopsFirst"]}})");
  EXPECT_EQ(c.default_costs, (std::vector<std::string>{"bigLoopsFirst"}));
  EXPECT_EQ(c.constraints.size(), 1u);
}

TEST(ConfigParseTest, FullDocument) {
  Config c = parse_config(R"({
    "variables": [{"name": "x", "lower": 0, "upper": 3}],
    "costFunctions": {"default": ["proximity"], "perDimension": [{"dimension": 1, "costs": ["x", "contiguity"]}]},
    "constraints": [{"scope": 0, "expr": "S0_it_0 - x >= 0"}],
    "fusion": [{"dimension": 0, "fuse": [[0, 1]], "distribute": [[2]]}],
    "directives": [{"statement": 1, "loop": 0, "type": "parallel"}, {"statement": 0, "loop": 0, "type": "sequential"}],
    "autoVectorize": true,
    "tiling": {"sizes": [[32, 32]]},
    "bounds": {"iterators": 3, "parameters": 2, "constants": 9}})");
  ASSERT_EQ(c.variables.size(), 1u);
  EXPECT_EQ(c.variables[0].upper, std::optional<int64_t>(3));
  EXPECT_EQ(c.dimension_costs.at(1), (std::vector<std::string>{"x", "contiguity"}));
  EXPECT_EQ(c.constraints[0].dimension, std::optional<size_t>(0));
  EXPECT_EQ(c.fusion[0].fuse, (std::vector<std::vector<size_t>>{{0, 1}}));
  EXPECT_EQ(c.directives[0].kind, DirectiveKind::Parallel);
  EXPECT_EQ(c.directives[1].kind, DirectiveKind::Sequential);
  EXPECT_TRUE(c.auto_vectorize);
  ASSERT_TRUE(c.tiling.has_value());
  EXPECT_EQ(c.tiling->sizes, (std::vector<std::vector<int64_t>>{{32, 32}}));
  EXPECT_EQ(c.bounds.iterators, 3);
  EXPECT_EQ(c.bounds.constants, std::optional<int64_t>(9));
}

TEST(ConfigParseTest, Errors) {
  EXPECT_EQ(kind_of([] { parse_config(R"({"colour": 1})"); }), ErrorKind::SchemaError);
  EXPECT_EQ(kind_of([] { parse_config("{"); }), ErrorKind::SchemaError);
  EXPECT_EQ(kind_of([] { parse_config(R"({"costFunctions": {"default": ["speed"]}})"); }), ErrorKind::UnknownCost);
  EXPECT_EQ(kind_of([] { parse_config(R"({"preset": "fast"})"); }), ErrorKind::SchemaError);
  EXPECT_EQ(kind_of([] { parse_config(R"({"fusion": [{"dimension": 0, "fuse": [[0, 1], [1, 2]]}]})"); }),
            ErrorKind::BadGroup);
  EXPECT_EQ(kind_of([] {
              parse_config(R"({"directives": [{"statement": 0, "loop": 0, "type": "unroll"}]})");
            }),
            ErrorKind::SchemaError);
}

TEST(ConstraintExprTest, Examples) {
  Scop scop = testing::load_kernel("producer_consumer");
  ConstraintExpr e = parse_constraint_expr("S0_it_i <= 1", scop);
  ASSERT_EQ(e.terms.size(), 1u);
  EXPECT_EQ(e.terms[0].symbol.cls, SymbolClass::Iterator);
  EXPECT_EQ(e.terms[0].symbol.index, Symbol::kAny);
  EXPECT_EQ(e.rel, ExprRel::LessEqual);
  EXPECT_EQ(e.rhs, 1);

  e = parse_constraint_expr("S0_it_0 - S1_it_0 = 0", scop);
  ASSERT_EQ(e.terms.size(), 2u);
  EXPECT_EQ(e.terms[1].coef, -1);
  EXPECT_EQ(e.terms[1].symbol.statement, 1);
  EXPECT_EQ(e.rel, ExprRel::Equal);

  EXPECT_EQ(kind_of([&] { parse_constraint_expr("S0_it_0 * S1_it_0 >= 1", scop); }), ErrorKind::NonAffine);
  EXPECT_EQ(kind_of([&] { parse_constraint_expr("S0_it_0 >=", scop); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { parse_constraint_expr("S7_it_0 >= 1", scop); }), ErrorKind::UnknownSymbol);
  EXPECT_EQ(kind_of([&] { parse_constraint_expr("S0_it_3 >= 1", scop); }), ErrorKind::UnknownSymbol);
  EXPECT_EQ(kind_of([&] { parse_constraint_expr("y >= 1", scop); }), ErrorKind::UnknownSymbol);
  EXPECT_NO_THROW(parse_constraint_expr("y >= 1", scop, {"y"}));
}

TEST(ConstraintExprTest, PrintParseFixpoint) {
  const char *texts[] = {"S0_it_i <= 1", "2*S0_it_0 - S1_it_0 >= 1", "Si_it_i <= 1", "S0_cst + S1_par_0 = 3",
                         "-S0_it_0 + 4 >= -2", "Si_par_i + x <= 5"};
  for (const char *t : texts) {
    ConstraintExpr e = parse_constraint_expr(t);
    std::string printed = print(e);
    EXPECT_EQ(parse_constraint_expr(printed), e) << t << " -> " << printed;
    EXPECT_EQ(print(parse_constraint_expr(printed)), printed);
  }
}

TEST(ConstraintExprTest, RandomFixpoint) {
  std::mt19937 rng(99);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const char *rels[] = {">=", "<=", "="};
  for (int iter = 0; iter < 300; ++iter) {
    std::string text;
    int terms = pick(1, 4);
    for (int t = 0; t < terms; ++t) {
      int coef = pick(-3, 3);
      if (coef == 0) coef = 1;
      text += (t == 0 ? (coef < 0 ? "-" : "") : (coef < 0 ? " - " : " + "));
      if (std::abs(coef) != 1) text += std::to_string(std::abs(coef)) + "*";
      std::string stmt = pick(0, 3) == 0 ? "Si" : "S" + std::to_string(pick(0, 2));
      switch (pick(0, 3)) {
        case 0: text += stmt + "_it_" + (pick(0, 2) == 0 ? "i" : std::to_string(pick(0, 2))); break;
        case 1: text += stmt + "_par_" + (pick(0, 2) == 0 ? "i" : std::to_string(pick(0, 1))); break;
        case 2: text += stmt + "_cst"; break;
        default: text += "u" + std::to_string(pick(0, 2)); break;
      }
    }
    text += std::string(" ") + rels[pick(0, 2)] + " " + std::to_string(pick(-5, 5));
    ConstraintExpr e = parse_constraint_expr(text);
    EXPECT_EQ(parse_constraint_expr(print(e)), e) << text;
  }
}

TEST(CompilePlanTest, Examples) {
  Scop scop = testing::load_kernel("producer_consumer");
  DimensionPlan none = compile_plan(Config{}, scop, 0);
  EXPECT_EQ(none.kind, PlanKind::Solve);
  EXPECT_EQ(none.costs, (std::vector<std::string>{"proximity"}));
  EXPECT_FALSE(none.forced);

  Config c = parse_config(R"({"fusion": [{"dimension": 0, "fuse": [[0, 1]], "distribute": [[2]]}],
                              "constraints": [{"scope": 1, "expr": "S0_cst <= 0"}],
                              "costFunctions": {"perDimension": [{"dimension": 1, "costs": ["feautrier"]}]}})");
  DimensionPlan d0 = compile_plan(c, scop, 0);
  EXPECT_EQ(d0.kind, PlanKind::Distribute);
  EXPECT_EQ(d0.groups, (std::vector<std::vector<size_t>>{{0, 1}, {2}}));
  EXPECT_TRUE(d0.constraints.empty());
  DimensionPlan d1 = compile_plan(c, scop, 1);
  EXPECT_EQ(d1.kind, PlanKind::Solve);
  EXPECT_EQ(d1.costs, (std::vector<std::string>{"feautrier"}));
  EXPECT_EQ(d1.constraints.size(), 1u);

  Config conflict = parse_config(R"({"fusion": [{"dimension": 0, "fuse": [[0, 1]], "distribute": [[1, 2]]}]})");
  EXPECT_EQ(kind_of([&] { compile_plan(conflict, scop, 0); }), ErrorKind::ConflictingPlan);

  Config one = parse_config(R"({"fusion": [{"dimension": 0, "fuse": [[0, 1, 2]]}]})");
  DimensionPlan fused = compile_plan(one, scop, 0);
  EXPECT_EQ(fused.kind, PlanKind::Solve);
  EXPECT_TRUE(fused.forced);
}

TEST(CompilePlanTest, IslCallbackFallsBackToFeautrier) {
  Scop scop = testing::load_kernel("chain1d");
  Config c;
  apply_preset(c, "isl-style");
  Schedule partial;
  std::vector<Dependence> deps;
  for (bool parallel : {false, true}) {
    StrategyContext ctx{scop, partial, deps, 0, [&](const std::vector<std::string> &costs) {
                          EXPECT_EQ(costs, (std::vector<std::string>{"proximity"}));
                          TrialResult t;
                          t.feasible = true;
                          t.parallel = parallel;
                          return t;
                        }};
    DimensionPlan p = compile_plan(c, scop, 0, &ctx);
    EXPECT_EQ(p.costs, (std::vector<std::string>{parallel ? "proximity" : "feautrier"}));
  }
}

TEST(DirectiveTest, AutoVectorizeDetect) {
  Scop fig1 = testing::load_kernel("fig1");
  auto v = auto_vectorize_detect(fig1);
  EXPECT_EQ(v[0], std::optional<size_t>(0));  // S0 -> i
  EXPECT_EQ(v[1], std::optional<size_t>(1));  // S1 -> j
  Config c;
  c.auto_vectorize = true;
  auto dirs = effective_directives(c, fig1);
  ASSERT_EQ(dirs.size(), 2u);
  EXPECT_EQ(dirs[0], (Directive{0, 0, DirectiveKind::Vectorize}));

  Scop scalar = testing::load_kernel("chain1d");
  scalar.statements[0].accesses[0].subscripts[0] = {0, 0, 0};
  scalar.statements[0].accesses[1].subscripts[0] = {0, 0, 2};
  EXPECT_EQ(auto_vectorize_detect(scalar)[0], std::nullopt);
}

TEST(DirectiveTest, ValidateRejectsMissingTargets) {
  Scop scop = testing::load_kernel("chain1d");
  Config c;
  c.directives.push_back({0, 3, DirectiveKind::Vectorize});
  EXPECT_EQ(kind_of([&] { validate_config(c, scop); }), ErrorKind::SchemaError);
  Config d;
  d.fusion.push_back({0, {{0, 4}}, {}});
  EXPECT_EQ(kind_of([&] { validate_config(d, scop); }), ErrorKind::BadGroup);
}

}  // namespace
}  // namespace polysched
