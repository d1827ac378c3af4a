#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "lstn/plan.hpp"

using namespace lstn;
using namespace lstn::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Plan, RoverFile) {
  auto plan = parse_plan(slurp(LSTN_DATA_DIR "/rover.plan"));
  EXPECT_EQ(plan.event_count(), 6u);
  EXPECT_EQ(plan.space.size(), 1u);
  EXPECT_EQ(plan.constraints.size(), 7u);
  const auto& c = plan.constraints[0];
  EXPECT_EQ(plan.event_name(c.from), "A");
  EXPECT_EQ(plan.event_name(c.to), "F");
  EXPECT_EQ(c.lower, 0);
  EXPECT_EQ(c.upper, 100);
  EXPECT_TRUE(c.env.empty());
  EXPECT_EQ(plan.space.render(plan.constraints[3].env), "{x=collect}");
}

TEST(Plan, RoverDistanceGraph) {
  auto plan = parse_plan(slurp(LSTN_DATA_DIR "/rover.plan"));
  auto g = to_labeled_distance_graph(plan);
  const auto collect = plan.space.environment({{"x", "collect"}});
  const auto B = plan.event("B"), C = plan.event("C");
  ASSERT_NE(g.weight(B, C), nullptr);
  EXPECT_EQ(*g.weight(B, C), (WeightSet{{60, collect}}));
  EXPECT_EQ(*g.weight(C, B), (WeightSet{{-50, collect}}));
}

TEST(Plan, InfiniteBoundsProduceNoEdges) {
  LabeledSTN plan;
  plan.add_event("A");
  plan.add_event("B");
  plan.add_constraint("A", "B", -kInf, kInf);
  EXPECT_TRUE(to_labeled_distance_graph(plan).weights.empty());
}

TEST(Plan, TighterSubsumingConstraintWins) {
  LabeledSTN plan;
  plan.space = binary_space(1);
  plan.add_event("A");
  plan.add_event("B");
  plan.add_constraint("A", "B", 0, 10, {{"x", "1"}});
  plan.add_constraint("A", "B", 2, 8);
  auto g = to_labeled_distance_graph(plan);
  EXPECT_EQ(g.weight(0, 1)->size(), 1u);
  EXPECT_EQ(g.weight(1, 0)->size(), 1u);
  for (const auto& e : all_complete(plan.space)) {
    auto m = project_plan(plan, e);
    EXPECT_EQ(g.project(e), m);
  }
}

TEST(Plan, ImportDtnWithDisjunctions) {
  auto d = parse_dtn(slurp(LSTN_DATA_DIR "/disjunctive.dtn"));
  auto plan = import_dtn(d);
  LabeledSTN expect;
  expect.space.add_variable("x", {"1", "2"});
  for (auto e : {"A", "B", "C"}) expect.add_event(e);
  expect.add_constraint("A", "B", 3, 5);
  expect.add_constraint("B", "C", 0, 6, {{"x", "1"}});
  expect.add_constraint("A", "C", -4, -4, {{"x", "2"}});
  EXPECT_EQ(plan, expect);
  EXPECT_EQ(render_plan(plan),
            "var x { 1, 2 }\nevent A\nevent B\nevent C\nconstraint A B [3, 5]\n"
            "constraint B C [0, 6] if x=1\nconstraint A C [-4, -4] if x=2\n");
}

TEST(Plan, ImportDtnWithoutDisjunctions) {
  DTN d;
  d.events = {"A", "B"};
  d.constraints = {{{0, 1, 1, 2}}};
  auto plan = import_dtn(d);
  EXPECT_EQ(plan.space.size(), 0u);
  EXPECT_EQ(plan.constraints.size(), 1u);
}

// A schedule satisfies the DTN iff it satisfies the import under some
// complete environment; checked on random small instances and integer schedules.
TEST(Plan, ImportDtnPreservesConsistency) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    DTN d;
    d.events = {"A", "B", "C"};
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      std::vector<SimpleConstraint> disj;
      const int m = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < m; ++j) {
        VertexId a = rng() % 3, b = (a + 1 + rng() % 2) % 3;
        int l = static_cast<int>(rng() % 9) - 4;
        disj.push_back({a, b, static_cast<double>(l), static_cast<double>(l + rng() % 5)});
      }
      d.constraints.push_back(disj);
    }
    auto plan = import_dtn(d);
    auto complete = all_complete(plan.space);
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) {
        const double t[3] = {0, static_cast<double>(a), static_cast<double>(b)};
        auto sat = [&](const SimpleConstraint& c) {
          const double diff = t[c.to] - t[c.from];
          return c.lower <= diff && diff <= c.upper;
        };
        bool dtn_ok = true;
        for (const auto& c : d.constraints) dtn_ok &= std::any_of(c.begin(), c.end(), sat);
        bool plan_ok = false;
        for (const auto& e : complete) {
          bool all = true;
          for (const auto& c : plan.constraints)
            if (subsumes(c.env, e)) all &= sat({c.from, c.to, c.lower, c.upper});
          plan_ok |= all;
        }
        EXPECT_EQ(dtn_ok, plan_ok);
      }
  }
}

TEST(Plan, EmptyFile) {
  auto plan = parse_plan("");
  EXPECT_EQ(plan.event_count(), 0u);
  EXPECT_TRUE(plan.constraints.empty());
  EXPECT_EQ(parse_plan("# only a comment\n\n").event_count(), 0u);
}

TEST(Plan, ParseErrorsCarryPosition) {
  try {
    parse_plan("event A\nconstraint A Q [0, 1]\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 14u);
  }
  EXPECT_THROW(parse_plan("event A\nevent B\nconstraint A B [0, 1] if x=1\n"), ParseError);
  EXPECT_THROW(parse_plan("var x { a }\nevent A\nevent B\nconstraint A B [0, 1] if x=b\n"), ParseError);
  EXPECT_THROW(parse_plan("event A\nevent A\n"), ParseError);
  EXPECT_THROW(parse_plan("event A\nevent B\nconstraint A B [0 1]\n"), ParseError);
  EXPECT_THROW(parse_plan("frobnicate\n"), ParseError);
  EXPECT_THROW(parse_plan("event A\nevent B\nconstraint A B [zero, 1]\n"), ParseError);
}

TEST(Plan, NegativeUpperIsSoft) {
  const char* text = "event A\nevent C\nconstraint A C [-4, -4]\n";
  std::vector<std::string> warnings;
  auto plan = parse_plan(text, {false, &warnings});
  EXPECT_EQ(plan.constraints.size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(parse_plan(text, {true, nullptr}), ParseError);
}

TEST(Plan, InfiniteBoundsRoundTrip) {
  const char* text = "event A\nevent B\nconstraint A B [-inf, inf]\nconstraint A B [0.5, inf]\n";
  auto plan = parse_plan(text);
  EXPECT_EQ(render_plan(plan), text);
}

TEST(Plan, RenderParseRoundTrip) {
  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto plan = random_plan(rng, 2 + i % 7, i % 5, 3 + i % 9);
    auto text = render_plan(plan);
    auto back = parse_plan(text);
    EXPECT_EQ(back, plan);
    EXPECT_EQ(render_plan(back), text);
  }
}

// Projection of the labeled distance graph equals the component STN's graph.
TEST(Plan, ProjectionSoundness) {
  std::mt19937 rng(2);
  for (int i = 0; i < 60; ++i) {
    auto plan = random_plan(rng, 3 + i % 5, 1 + i % 6, 6 + i % 10);
    auto g = to_labeled_distance_graph(plan);
    for (const auto& e : all_complete(plan.space)) EXPECT_EQ(g.project(e), project_plan(plan, e));
  }
}
