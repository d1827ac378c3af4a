#pragma once

// Benchmark harness: both pipelines over a suite of generated plans, with
// compiled size, compile time and dispatch latency per instance.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "lstn/baseline.hpp"
#include "lstn/compiler.hpp"
#include "lstn/dispatcher.hpp"
#include "lstn/generator.hpp"
#include "lstn/serialize.hpp"

namespace lstn {

struct SuiteParams {
  std::vector<std::size_t> choices{2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  std::size_t arity = 2;
  std::size_t seeds = 3;  // instances per choice count
  std::size_t max_events = 22;
  double ratio = 1.5;
  double sharing = 0.5;
  double wild = 0.1;
  std::uint64_t seed = 1;
  int compile_repeats = 5;
  double activity_fraction = 0.3;
  std::uint64_t cap = 4096;
};

struct SuiteInstance {
  std::string id;
  GeneratorParams params;
};

/// Events grow with the choice count, 2c + 2 up to max_events.
inline std::vector<SuiteInstance> suite_instances(const SuiteParams& s) {
  std::vector<SuiteInstance> out;
  for (std::size_t c : s.choices)
    for (std::size_t k = 0; k < s.seeds; ++k) {
      GeneratorParams p;
      p.choices = c;
      p.arity = s.arity;
      p.events = std::max<std::size_t>(2, std::min(2 * c + 2, s.max_events));
      p.ratio = s.ratio;
      p.sharing = s.sharing;
      p.wild = s.wild;
      p.seed = s.seed + 7919 * k + 104729 * c;
      out.push_back({"c" + std::to_string(c) + "a" + std::to_string(s.arity) + "-" + std::to_string(k), p});
    }
  return out;
}

/// Some events become activity ends driven by an earlier event of a {}-labeled
/// constraint, with a duration drawn from that constraint's bounds stretched
/// by half its width. Deterministic in seed.
inline DelayModel bench_delay_model(const LabeledSTN& plan, std::uint64_t seed, double fraction) {
  DelayModel dm;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<char> used(plan.event_count(), 0);
  for (const auto& c : plan.constraints) {
    if (!c.env.empty() || c.from >= c.to || used[c.to]) continue;
    if (std::isinf(c.lower) || std::isinf(c.upper) || c.lower < 0) continue;
    used[c.to] = 1;
    if (unit(rng) >= fraction) continue;
    const double slack = std::floor((c.upper - c.lower) / 2);
    dm.set_activity(c.to, c.from, {c.lower, c.upper + slack});
  }
  return dm;
}

struct BenchRecord {
  std::string id;
  std::size_t components = 0;
  std::size_t labeled_bytes = 0;
  std::size_t enum_bytes = 0;
  double labeled_compile_s = 0;
  double enum_compile_s = 0;
  double labeled_max_latency_s = 0;
  double enum_first_latency_s = 0;
  std::string status;  // ok, infeasible, mismatch or error: ...
};

inline constexpr const char* kBenchHeader =
    "id,components,labeled_bytes,enum_bytes,labeled_compile_s,enum_compile_s,labeled_max_latency_s,"
    "enum_first_latency_s,status";

namespace detail {

template <typename F>
double median_seconds(int repeats, F&& f) {
  std::vector<double> ts;
  for (int i = 0; i < std::max(1, repeats); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    ts.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(ts.begin(), ts.end());
  return ts[ts.size() / 2];
}

}  // namespace detail

inline BenchRecord bench_instance(const SuiteInstance& inst, const SuiteParams& s) {
  BenchRecord rec;
  rec.id = inst.id;
  try {
    const LabeledSTN plan = generate(inst.params);
    const auto g = to_labeled_distance_graph(plan);
    CompileResult labeled;
    std::vector<CompiledComponent> comps;
    rec.labeled_compile_s = detail::median_seconds(s.compile_repeats, [&] { labeled = compile(g); });
    rec.enum_compile_s = detail::median_seconds(s.compile_repeats, [&] { comps = compile_enumerated(g, s.cap); });
    rec.components = comps.size();
    rec.enum_bytes = render_enumerated(plan.space, plan.events(), comps).size();
    if (labeled.feasible) rec.labeled_bytes = render_compiled(labeled.form).size();
    if (labeled.feasible != !comps.empty()) {
      rec.status = "mismatch";
      return rec;
    }
    if (!labeled.feasible) {
      rec.status = "infeasible";
      return rec;
    }
    const auto dm = bench_delay_model(plan, inst.params.seed, s.activity_fraction);
    RunOptions o;
    o.seed = inst.params.seed;
    const auto a = run(labeled.form, dm, o);
    const auto b = parallel_dispatch(comps, plan.event_count(), dm, o);
    rec.labeled_max_latency_s = a.max_decision_seconds;
    rec.enum_first_latency_s = b.first_execution_seconds;
    rec.status = a.completed == b.completed ? "ok" : "mismatch";
  } catch (const std::exception& e) {
    rec.status = std::string("error: ") + e.what();
  }
  return rec;
}

inline std::vector<BenchRecord> bench(const SuiteParams& s) {
  std::vector<BenchRecord> out;
  for (const auto& inst : suite_instances(s)) out.push_back(bench_instance(inst, s));
  return out;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& rs) {
  out << kBenchHeader << '\n';
  for (const auto& r : rs) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << r.id << ',' << r.components << ',' << r.labeled_bytes << ',' << r.enum_bytes << ','
        << format_number(r.labeled_compile_s) << ',' << format_number(r.enum_compile_s) << ','
        << format_number(r.labeled_max_latency_s) << ',' << format_number(r.enum_first_latency_s) << ',' << status
        << '\n';
  }
}

}  // namespace lstn
