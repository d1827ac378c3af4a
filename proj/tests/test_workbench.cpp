#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "helpers.hpp"
#include "lstn/lstn.hpp"

using namespace lstn;
using namespace lstn::testing;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

/// CSV rows with the timing columns blanked.
std::vector<std::string> without_timings(const std::string& csv) {
  std::vector<std::string> out;
  for (const auto& line : split_lines(csv)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (cols.size() == 9)
      for (int i : {4, 5, 6, 7}) cols[i].clear();
    std::string joined;
    for (const auto& c : cols) joined += c + ",";
    out.push_back(joined);
  }
  return out;
}

}  // namespace

TEST(Generator, DeterministicInSeed) {
  GeneratorParams p;
  p.choices = 2;
  p.events = 6;
  p.seed = 7;
  EXPECT_EQ(generate(p), generate(p));
  auto q = p;
  q.seed = 8;
  EXPECT_FALSE(generate(p) == generate(q));
}

TEST(Generator, RejectsBadParams) {
  GeneratorParams p;
  p.events = 1;
  EXPECT_THROW(generate(p), InvalidInput);
  p = {};
  p.ratio = 0;
  EXPECT_THROW(generate(p), InvalidInput);
  p = {};
  p.sharing = 1.5;
  EXPECT_THROW(generate(p), InvalidInput);
  p = {};
  p.weight_hi = 0;
  EXPECT_THROW(generate(p), InvalidInput);
}

TEST(Generator, ShapeFollowsParams) {
  for (std::size_t arity : {2, 3}) {
    GeneratorParams p;
    p.choices = 4;
    p.arity = arity;
    p.events = 12;
    p.ratio = 2;
    auto plan = generate(p);
    EXPECT_EQ(plan.space.size(), 4u);
    EXPECT_EQ(plan.space.domain_size(0), arity);
    EXPECT_EQ(plan.event_count(), 12u);
    EXPECT_EQ(plan.constraints.size(), 24u);
  }
}

TEST(Generator, SharingExtremes) {
  GeneratorParams p;
  p.choices = 3;
  p.events = 8;
  p.sharing = 1;
  for (const auto& c : generate(p).constraints) EXPECT_TRUE(c.env.empty());
  EXPECT_EQ(compile_enumerated(generate(p)).size(), 8u);
  p.sharing = 0;
  for (const auto& c : generate(p).constraints) EXPECT_EQ(c.env.size(), 1u);
}

// The {}-labeled part reaches every event and is consistent on its own.
TEST(GeneratorProperties, BackboneConnectsAllEventsAndIsConsistent) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorParams p;
    p.choices = 1 + seed % 5;
    p.arity = 2 + seed % 2;
    p.events = 4 + seed % 15;
    p.seed = seed;
    const auto plan = generate(p);
    std::vector<std::set<VertexId>> adj(plan.event_count());
    for (const auto& c : plan.constraints) {
      adj[c.from].insert(c.to);
      adj[c.to].insert(c.from);
    }
    std::vector<char> seen(plan.event_count(), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    for (auto s : seen) EXPECT_TRUE(s) << "seed " << seed;
    auto backbone = to_labeled_distance_graph(plan).project({});
    EXPECT_TRUE(detail::fw_closure(backbone));
  }
}

TEST(GeneratorProperties, PlansParseRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorParams p;
    p.choices = seed % 6;
    p.arity = 2 + seed % 2;
    p.events = 3 + seed % 12;
    p.sharing = static_cast<double>(seed % 5) / 4;
    p.seed = seed;
    const auto plan = generate(p);
    EXPECT_EQ(parse_plan(render_plan(plan)), plan);
  }
}

TEST(Serialize, CompiledRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams p;
    p.choices = 1 + seed % 4;
    p.events = 4 + seed % 8;
    p.seed = seed;
    auto r = compile(generate(p));
    if (!r.feasible) continue;
    const auto text = render_compiled(r.form);
    const auto back = parse_compiled(text);
    EXPECT_EQ(render_compiled(back), text);
    EXPECT_EQ(back.graph, r.form.graph);
  }
}

TEST(Serialize, EnumeratedRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams p;
    p.choices = 1 + seed % 4;
    p.events = 4 + seed % 8;
    p.seed = seed;
    const auto plan = generate(p);
    const auto comps = compile_enumerated(plan);
    const auto text = render_enumerated(plan.space, plan.events(), comps);
    const auto back = parse_enumerated(text);
    ASSERT_EQ(back.components.size(), comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
      EXPECT_EQ(back.components[i].env, comps[i].env);
      EXPECT_EQ(back.components[i].graph.w, comps[i].graph.w);
      EXPECT_EQ(back.components[i].graph.zero_groups, comps[i].graph.zero_groups);
    }
    EXPECT_EQ(render_enumerated(back.space, back.names, back.components), text);
  }
}

TEST(Serialize, RejectsWrongFormat) {
  EXPECT_THROW(parse_compiled("format enumerated-dispatchable 1\n"), ParseError);
  EXPECT_THROW(parse_enumerated("format labeled-dispatchable 1\n"), ParseError);
  EXPECT_THROW(parse_enumerated("format enumerated-dispatchable 1\nevent A\nedge A A {(0, {})}\n"), ParseError);
  EXPECT_THROW(parse_compiled("format labeled-dispatchable 1\nevent A\nedge A B {(0, {})}\n"), ParseError);
}

TEST(Serialize, TraceLines) {
  auto plan = parse_plan("var x { 1, 2 }\nevent A\nevent B\nconstraint A B [2, 2] if x=1\nconstraint A B [5, 5] if x=2\n");
  auto r = compile(plan);
  ASSERT_TRUE(r.feasible);
  auto tr = run(r.form, {});
  ASSERT_TRUE(tr.completed);
  EXPECT_EQ(render_trace(tr, plan.space, plan.events()), "t=0 execute {A}\nt=2 execute {B} conflict {x=2}\nCOMPLETED A=0 B=2\n");
  ExecutionTrace failed;
  failed.end_time = 3;
  failed.failure_reason = "missed upper bound";
  failed.failing_conflict = plan.space.environment({{"x", "2"}});
  EXPECT_EQ(render_trace(failed, plan.space, plan.events()), "FAILED t=3 missed upper bound {x=2}\n");
}

TEST(Bench, SuiteIdsAreUnique) {
  SuiteParams s;
  s.seeds = 4;
  std::set<std::string> ids;
  for (const auto& inst : suite_instances(s)) EXPECT_TRUE(ids.insert(inst.id).second) << inst.id;
  EXPECT_EQ(ids.size(), s.choices.size() * 4);
}

TEST(Bench, DeterministicExceptTimings) {
  SuiteParams s;
  s.choices = {2, 3, 4};
  s.seeds = 2;
  s.compile_repeats = 1;
  std::ostringstream a, b;
  write_csv(a, bench(s));
  write_csv(b, bench(s));
  EXPECT_EQ(without_timings(a.str()), without_timings(b.str()));
  EXPECT_EQ(split_lines(a.str()).front(), kBenchHeader);
}

TEST(Bench, SingleComponentHasRatioNearOne) {
  SuiteParams s;
  s.choices = {0};
  s.seeds = 3;
  s.compile_repeats = 1;
  for (const auto& r : bench(s)) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_EQ(r.components, 1u);
    const double ratio = static_cast<double>(r.enum_bytes) / static_cast<double>(r.labeled_bytes);
    EXPECT_GT(ratio, 0.8);
    EXPECT_LT(ratio, 1.25);
  }
}

TEST(Bench, DelayModelUsesSharedForwardConstraints) {
  GeneratorParams p;
  p.choices = 3;
  p.events = 12;
  const auto plan = generate(p);
  const auto dm = bench_delay_model(plan, 3, 1.0);
  EXPECT_EQ(dm, bench_delay_model(plan, 3, 1.0));
  std::size_t activities = 0;
  for (VertexId v = 0; v < plan.event_count(); ++v) {
    const auto& m = dm.at(v);
    if (m.controlled) continue;
    ++activities;
    bool found = false;
    for (const auto& c : plan.constraints)
      found |= c.env.empty() && c.from == m.driver && c.to == v && c.lower == m.duration.lo;
    EXPECT_TRUE(found);
  }
  EXPECT_GT(activities, 0u);
  EXPECT_TRUE(bench_delay_model(plan, 3, 0.0).events.empty());
}

// Labeled bytes stay within a fixed header constant of the enumeration on
// every instance, and both pipelines agree on feasibility.
TEST(BenchProperties, LabeledNeverMuchLarger) {
  for (double sharing : {0.0, 0.5}) {
    SuiteParams s;
    s.choices = {1, 2, 3, 4, 5, 6};
    s.seeds = 3;
    s.sharing = sharing;
    s.compile_repeats = 1;
    for (const auto& r : bench(s)) {
      ASSERT_NE(r.status, "mismatch") << r.id;
      if (r.status != "ok") continue;
      EXPECT_LE(static_cast<double>(r.labeled_bytes), 1.5 * static_cast<double>(r.enum_bytes) + 64) << r.id;
    }
  }
}
