#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "lstn/compiler.hpp"
#include "lstn/dispatcher.hpp"

using namespace lstn;
using namespace lstn::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DispatchableForm empty_form(std::size_t vars, std::vector<std::string> names) {
  DispatchableForm f;
  f.graph.space = binary_space(vars);
  f.graph.names = std::move(names);
  f.conflicts = ConflictDatabase(f.graph.space);
  return f;
}

// Four events, x and y binary; A and C zero-related under {x=1}.
DispatchableForm four_event_form() {
  auto f = empty_form(2, {"A", "B", "C", "D"});
  const auto& s = f.graph.space;
  f.graph.add(0, 3, -1, s.environment({{"x", "2"}}));
  f.graph.add(0, 2, -1, s.environment({{"y", "2"}}));
  f.graph.add(3, 2, -2, {});
  f.graph.add(1, 0, -3, s.environment({{"y", "1"}}));
  f.graph.add(0, 1, 6, s.environment({{"y", "1"}}));
  f.zero_related.push_back({{0, 2}, s.environment({{"x", "1"}})});
  return f;
}

}  // namespace

TEST(WorkedExamples, ExecutionWindowPropagation) {
  auto f = empty_form(1, {"A", "B"});
  const auto x1 = f.graph.space.environment({{"x", "1"}});
  f.graph.add(0, 1, 7, x1);
  f.graph.add(0, 1, 8, {});
  f.graph.add(1, 0, -5, x1);
  f.graph.add(1, 0, -2, {});
  auto st = make_dispatch_state(f);
  st.executed[0] = 2;
  propagate_execution(st, 0, 2, f.graph);
  EXPECT_EQ(st.lower[1], (LowerSet{{7, x1}, {4, {}}}));
  EXPECT_EQ(st.upper[1], (UpperSet{{9, x1}, {10, {}}}));
}

TEST(Dispatcher, NoEdgesLeaveBoundsUnchanged) {
  auto f = empty_form(0, {"A", "B"});
  auto st = make_dispatch_state(f);
  st.executed[0] = 0;
  propagate_execution(st, 0, 0, f.graph);
  EXPECT_EQ(st.upper[1], (UpperSet{{kInf, {}}}));
  EXPECT_EQ(st.lower[1], (LowerSet{{-kInf, {}}}));
}

TEST(Dispatcher, CandidateSets) {
  auto f = four_event_form();
  auto st = make_dispatch_state(f);
  EXPECT_EQ(candidate_sets(st, f), (std::vector<std::vector<VertexId>>{{0}, {1}, {2}, {3}, {0, 2}}));
  st.executed[0] = st.executed[2] = 0;
  EXPECT_EQ(candidate_sets(st, f), (std::vector<std::vector<VertexId>>{{1}, {3}}));
  for (auto& e : st.executed) e = 0;
  EXPECT_TRUE(candidate_sets(st, f).empty());
}

TEST(WorkedExamples, DispatchZeroGroupMemberAlone) {
  auto f = four_event_form();
  auto st = make_dispatch_state(f);
  auto need = executable(st, f, {2}, 0);
  ASSERT_TRUE(need);
  EXPECT_EQ(*need, (std::vector<Environment>{f.space().environment({{"x", "1"}})}));
  execute_set(st, f, {2}, 0, *need);
  // With {x=1} gone, D must precede A.
  EXPECT_FALSE(executable(st, f, {0}, 5));
  ASSERT_TRUE(executable(st, f, {3}, 2));
  execute_set(st, f, {3}, 2, *executable(st, f, {3}, 2));
  EXPECT_FALSE(executable(st, f, {0}, 2));
  EXPECT_TRUE(executable(st, f, {0}, 3));
}

TEST(WorkedExamples, DispatchRejectsEliminatingEveryChoice) {
  auto f = four_event_form();
  auto st = make_dispatch_state(f);
  EXPECT_FALSE(executable(st, f, {0}, 0));
}

TEST(WorkedExamples, DispatchZeroGroupTogether) {
  auto f = four_event_form();
  auto st = make_dispatch_state(f);
  auto need = executable(st, f, {0, 2}, 0);
  ASSERT_TRUE(need);
  const auto& s = f.space();
  EXPECT_EQ(*need, (std::vector<Environment>{s.environment({{"x", "2"}}), s.environment({{"y", "2"}})}));
}

TEST(WorkedExamples, DispatchEnablementAndMissedUpperBound) {
  auto f = four_event_form();
  const auto& s = f.space();
  const auto y1 = s.environment({{"y", "1"}});
  {
    auto st = make_dispatch_state(f);
    auto need = executable(st, f, {1}, 0);
    ASSERT_TRUE(need);
    EXPECT_EQ(*need, (std::vector<Environment>{y1}));
  }
  auto st = make_dispatch_state(f);
  auto need = executable(st, f, {0, 2}, 0);
  ASSERT_TRUE(need);
  execute_set(st, f, {0, 2}, 0, *need);
  EXPECT_EQ(st.lower[1], (LowerSet{{3, y1}, {-kInf, {}}}));
  // Only {x=1, y=1} survives, so executing B early would need {y=1} eliminated.
  for (double t : {0.0, 1.0, 2.0}) EXPECT_FALSE(executable(st, f, {1}, t));
  auto ok = executable(st, f, {1}, 3);
  ASSERT_TRUE(ok);
  EXPECT_TRUE(ok->empty());
  auto r6 = check_missed_upper_bounds(st, 6);
  EXPECT_TRUE(r6.created.empty());
  auto r7 = check_missed_upper_bounds(st, 7);
  EXPECT_EQ(r7.created, (std::vector<Environment>{y1}));
  EXPECT_FALSE(r7.consistent);  // {x=1, y=1} was the last option
}

TEST(WorkedExamples, DispatchBlockedByUnexecutedPredecessor) {
  auto f = four_event_form();
  auto st = make_dispatch_state(f);
  EXPECT_FALSE(executable(st, f, {3}, 0));
}

TEST(Dispatcher, MissedBoundsNoOps) {
  auto f = empty_form(1, {"A", "B"});
  auto st = make_dispatch_state(f);
  EXPECT_TRUE(check_missed_upper_bounds(st, 100).created.empty());
  for (auto& e : st.executed) e = 0;
  st.upper[1].insert(-5, {});
  EXPECT_TRUE(check_missed_upper_bounds(st, 100).created.empty());
}

TEST(Dispatcher, SingleEventRun) {
  auto f = empty_form(0, {"A"});
  auto tr = run(f, {});
  EXPECT_TRUE(tr.completed);
  ASSERT_TRUE(tr.schedule[0]);
  EXPECT_EQ(*tr.schedule[0], 0);
}

TEST(Dispatcher, RoverRun) {
  auto plan = parse_plan(slurp(LSTN_DATA_DIR "/rover.plan"));
  auto r = compile(plan);
  ASSERT_TRUE(r.feasible);
  auto sc = parse_scenario(slurp(LSTN_DATA_DIR "/rover.scenario"), plan.events());
  auto tr = run(r.form, sc.delays, sc.options);
  ASSERT_TRUE(tr.completed) << tr.failure_reason;
  const std::vector<double> expect{0, 45, 95, 45, 95, 95};
  for (VertexId v = 0; v < 6; ++v) {
    ASSERT_TRUE(tr.schedule[v]);
    EXPECT_EQ(*tr.schedule[v], expect[v]) << plan.event_name(v);
  }
  const auto charge = plan.space.environment({{"x", "charge"}});
  bool seen = false;
  for (const auto& rec : tr.records)
    for (const auto& c : rec.conflicts)
      if (c == charge) {
        seen = true;
        EXPECT_GE(rec.time, 45);
      }
  EXPECT_TRUE(seen);
}

TEST(Dispatcher, ScenarioRoundTrip) {
  std::vector<std::string> names{"A", "B", "C"};
  auto sc = parse_scenario("seed 3\npolicy latest\ntick 0.5\nevent B activity-end A uniform 2 9\nevent C activity-end B 4\n", names);
  EXPECT_EQ(sc.options.seed, 3u);
  EXPECT_EQ(sc.options.policy, Policy::Latest);
  EXPECT_EQ(sc.options.tick, 0.5);
  EXPECT_FALSE(sc.delays.at(1).controlled);
  EXPECT_EQ(sc.delays.at(1).duration, (Duration{2, 9}));
  auto back = parse_scenario(render_scenario(sc, names), names);
  EXPECT_EQ(back.delays, sc.delays);
  EXPECT_EQ(back.options.policy, sc.options.policy);
  EXPECT_THROW(parse_scenario("event Q controlled\n", names), ParseError);
  EXPECT_THROW(parse_scenario("policy sometimes\n", names), ParseError);
  EXPECT_THROW(parse_scenario("tick 0\n", names), ParseError);
}

// Completed runs on random plans satisfy the original plan under some
// complete environment, and zero-related groups that hold there share a time.
TEST(DispatcherProperties, CompletedSchedulesAreConsistent) {
  std::mt19937 rng(5);
  int completed = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto plan = random_plan(rng, 3 + trial % 5, 1 + trial % 3, 3 + trial % 7, -3, 15);
    auto r = compile(plan);
    if (!r.feasible) continue;
    for (Policy pol : {Policy::Earliest, Policy::Latest, Policy::Random}) {
      RunOptions o;
      o.policy = pol;
      o.seed = static_cast<std::uint64_t>(trial);
      DelayModel dm;
      if (plan.event_count() > 2) dm.set_activity(1, 0, {0, 6});
      auto tr = run(r.form, dm, o);
      auto again = run(r.form, dm, o);
      EXPECT_EQ(tr.schedule, again.schedule);
      if (!tr.completed) continue;
      ++completed;
      bool ok = false;
      for (const auto& e : all_complete(plan.space)) {
        bool all = true;
        for (const auto& c : plan.constraints) {
          if (!subsumes(c.env, e)) continue;
          const double d = *tr.schedule[c.to] - *tr.schedule[c.from];
          all &= c.lower <= d && d <= c.upper;
        }
        if (!all) continue;
        ok = true;
        for (const auto& z : r.form.zero_related) {
          if (!subsumes(z.env, e)) continue;
          for (auto v : z.members) EXPECT_EQ(*tr.schedule[v], *tr.schedule[z.members[0]]);
        }
      }
      EXPECT_TRUE(ok) << "trial " << trial << " policy " << policy_name(pol) << "\n" << render_plan(plan);
    }
  }
  EXPECT_GT(completed, 60);
}

TEST(DispatcherProperties, WindowsAreMonotone) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    auto plan = random_plan(rng, 4 + trial % 3, 2, 6, -3, 15);
    auto r = compile(plan);
    if (!r.feasible) continue;
    detail::LabeledReasoner lr(r.form);
    const auto envs = all_complete(plan.space);
    auto snapshot = [&]() {
      std::vector<std::pair<double, double>> w;
      for (const auto& e : envs)
        for (VertexId v = 0; v < plan.event_count(); ++v) {
          if (lr.state().conflicts.is_subsumed(e)) {
            w.push_back({-kInf, kInf});
            continue;
          }
          w.push_back({lr.state().lower[v].best_real(e).value_or(-kInf), lr.state().upper[v].best_real(e).value_or(kInf)});
        }
      return w;
    };
    auto prev = snapshot();
    for (double t = 0; t < 80; ++t) {
      std::vector<Environment> created;
      if (!lr.check_missed(t, created)) break;
      for (const auto& s : lr.candidates()) {
        bool done = false;
        for (auto v : s) done |= lr.executed()[v].has_value();
        if (!done) lr.try_execute(s, t, created);
      }
      auto now = snapshot();
      for (std::size_t i = 0; i < now.size(); ++i) {
        if (std::isinf(now[i].first) && now[i].first < 0 && std::isinf(now[i].second)) continue;
        EXPECT_GE(now[i].first, prev[i].first);
        EXPECT_LE(now[i].second, prev[i].second);
      }
      prev = now;
    }
  }
}
