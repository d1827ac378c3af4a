#pragma once

// Greedy execution of a dispatchable labeled distance graph on a simulated
// clock. Execution windows are labeled value sets; choices are committed by
// adding conflicts only when an execution requires it.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lstn/compiler.hpp"
#include "lstn/environment.hpp"
#include "lstn/errors.hpp"
#include "lstn/labeled_value_set.hpp"
#include "lstn/plan.hpp"

namespace lstn {

enum class Policy { Earliest, Latest, Random };

inline const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Earliest: return "earliest";
    case Policy::Latest: return "latest";
    case Policy::Random: return "random";
  }
  return "earliest";
}

inline std::optional<Policy> parse_policy(std::string_view s) {
  if (s == "earliest") return Policy::Earliest;
  if (s == "latest") return Policy::Latest;
  if (s == "random") return Policy::Random;
  return std::nullopt;
}

/// Fixed when lo == hi, otherwise an integer drawn uniformly from [lo, hi].
struct Duration {
  double lo = 0;
  double hi = 0;
  friend bool operator==(const Duration&, const Duration&) = default;
};

struct EventModel {
  bool controlled = true;
  VertexId driver = kNil;
  Duration duration;
  friend bool operator==(const EventModel&, const EventModel&) = default;
};

/// Per-event release rules. An activity-end event may not execute before its
/// driver has executed and the drawn duration has elapsed.
struct DelayModel {
  std::vector<EventModel> events;

  const EventModel& at(VertexId v) const {
    static const EventModel controlled{};
    return v < events.size() ? events[v] : controlled;
  }

  void set_activity(VertexId v, VertexId driver, Duration d) {
    if (events.size() <= v) events.resize(v + 1);
    events[v] = EventModel{false, driver, d};
  }

  /// One duration per event, NaN for controlled events.
  std::vector<double> draw(std::uint64_t seed, std::size_t n) const {
    std::mt19937_64 rng(seed);
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    for (VertexId v = 0; v < n; ++v) {
      const auto& m = at(v);
      if (m.controlled) continue;
      if (m.duration.lo >= m.duration.hi) {
        out[v] = m.duration.lo;
      } else {
        std::uniform_int_distribution<long long> d(static_cast<long long>(std::ceil(m.duration.lo)),
                                                   static_cast<long long>(std::floor(m.duration.hi)));
        out[v] = static_cast<double>(d(rng));
      }
    }
    return out;
  }

  friend bool operator==(const DelayModel&, const DelayModel&) = default;
};

struct RunOptions {
  Policy policy = Policy::Earliest;
  double tick = 1;
  double start = 0;
  std::uint64_t seed = 0;
  std::size_t max_ticks = 1000000;
};

struct Scenario {
  RunOptions options;
  DelayModel delays;
};

struct TraceRecord {
  double time = 0;
  std::vector<std::vector<VertexId>> executed;
  std::vector<Environment> conflicts;
};

struct ExecutionTrace {
  std::vector<TraceRecord> records;
  bool completed = false;
  double end_time = 0;
  std::vector<std::optional<double>> schedule;
  std::string failure_reason;
  std::optional<Environment> failing_conflict;
  double max_decision_seconds = 0;
  double first_execution_seconds = 0;
  std::size_t ticks = 0;
};

struct DispatchState {
  double clock = 0;
  std::vector<std::optional<double>> executed;
  std::vector<UpperSet> upper;
  std::vector<LowerSet> lower;
  ConflictDatabase conflicts;
};

inline DispatchState make_dispatch_state(const DispatchableForm& form) {
  DispatchState st;
  const std::size_t n = form.graph.vertex_count();
  st.executed.assign(n, std::nullopt);
  st.upper.assign(n, UpperSet{{kInf, {}}});
  st.lower.assign(n, LowerSet{{-kInf, {}}});
  st.conflicts = form.conflicts;
  return st;
}

inline void propagate_execution(DispatchState& st, VertexId a, double t, const LabeledDistanceGraph& g) {
  for (const auto& [k, w] : g.weights) {
    if (k.first == a && !st.executed[k.second]) {
      for (const auto& p : w) st.upper[k.second].insert(p.value + t, p.env, st.conflicts);
    } else if (k.second == a && !st.executed[k.first]) {
      for (const auto& p : w) st.lower[k.first].insert(t - p.value, p.env, st.conflicts);
    }
  }
}

inline std::vector<std::vector<VertexId>> candidate_sets(const DispatchState& st, const DispatchableForm& form) {
  std::vector<std::vector<VertexId>> out;
  for (VertexId v = 0; v < st.executed.size(); ++v)
    if (!st.executed[v]) out.push_back({v});
  std::vector<std::vector<VertexId>> groups;
  for (const auto& z : form.zero_related) {
    std::vector<VertexId> live;
    for (auto v : z.members)
      if (!st.executed[v]) live.push_back(v);
    if (live.size() >= 2) groups.push_back(std::move(live));
  }
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  out.insert(out.end(), groups.begin(), groups.end());
  return out;
}

namespace detail {

inline bool contains(const std::vector<VertexId>& s, VertexId v) { return std::find(s.begin(), s.end(), v) != s.end(); }

/// Out-edges of `a` are contiguous in the weight map.
template <typename F>
void for_out_edges(const LabeledDistanceGraph& g, VertexId a, F&& f) {
  for (auto it = g.weights.lower_bound({a, 0}); it != g.weights.end() && it->first.first == a; ++it)
    f(it->first.second, it->second);
}

}  // namespace detail

/// Environments that must become conflicts for S to execute at t, or nullopt
/// when no consistent complete environment would survive.
inline std::optional<std::vector<Environment>> executable(const DispatchState& st, const DispatchableForm& form,
                                                          const std::vector<VertexId>& s, double t) {
  std::vector<Environment> need;
  for (auto a : s) {
    for (const auto& p : st.lower[a])
      if (p.value > t) need.push_back(p.env);
    for (const auto& p : st.upper[a])
      if (p.value < t) need.push_back(p.env);
    detail::for_out_edges(form.graph, a, [&](VertexId b, const WeightSet& w) {
      const bool inside = detail::contains(s, b);
      if (!inside && st.executed[b]) return;
      for (const auto& p : w)
        if (p.value < 0) need.push_back(p.env);
    });
  }
  for (const auto& z : form.zero_related) {
    bool touches = false, left_out = false;
    for (auto v : z.members) {
      if (detail::contains(s, v))
        touches = true;
      else if (!st.executed[v])
        left_out = true;
    }
    if (touches && left_out) need.push_back(z.env);
  }
  std::erase_if(need, [&](const Environment& e) { return st.conflicts.is_subsumed(e); });
  keep_most_general(need);
  if (!st.conflicts.consistent_extension_exists(Environment{}, need)) return std::nullopt;
  return need;
}

/// Adds the conflicts, records the execution and propagates it.
inline std::vector<Environment> execute_set(DispatchState& st, const DispatchableForm& form,
                                            const std::vector<VertexId>& s, double t,
                                            const std::vector<Environment>& conflicts) {
  std::vector<Environment> created;
  for (const auto& c : conflicts)
    if (st.conflicts.add(c)) created.push_back(c);
  for (auto a : s) st.executed[a] = t;
  for (auto a : s) propagate_execution(st, a, t, form.graph);
  if (!created.empty()) {
    for (auto& u : st.upper) u.purge_conflicted(st.conflicts);
    for (auto& l : st.lower) l.purge_conflicted(st.conflicts);
  }
  return created;
}

struct MissedBounds {
  std::vector<Environment> created;
  bool consistent = true;
};

inline MissedBounds check_missed_upper_bounds(DispatchState& st, double t) {
  MissedBounds r;
  for (VertexId a = 0; a < st.executed.size(); ++a) {
    if (st.executed[a]) continue;
    std::vector<Environment> missed;
    for (const auto& p : st.upper[a])
      if (p.value < t) missed.push_back(p.env);
    for (const auto& e : missed)
      if (st.conflicts.add(e)) r.created.push_back(e);
  }
  if (!r.created.empty()) {
    for (auto& u : st.upper) u.purge_conflicted(st.conflicts);
    for (auto& l : st.lower) l.purge_conflicted(st.conflicts);
  }
  r.consistent = st.conflicts.some_complete_consistent();
  return r;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline bool coin(std::uint64_t seed, std::uint64_t tick, const std::vector<VertexId>& s) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ tick);
  for (auto v : s) h = mix64(h ^ v);
  return (h >> 17) & 1u;
}

/// The tick loop shared by the labeled dispatcher and the enumeration
/// baseline. The reasoner decides executability; the loop handles time,
/// releases and policy.
template <typename Reasoner>
ExecutionTrace run_loop(Reasoner& r, std::size_t n, const DelayModel& model, const RunOptions& opts) {
  using clock = std::chrono::steady_clock;
  if (!(opts.tick > 0)) throw InvalidInput("tick must be positive");
  ExecutionTrace tr;
  const auto durations = model.draw(opts.seed, n);
  auto release = [&](VertexId v) -> double {
    const auto& m = model.at(v);
    if (m.controlled) return -kInf;
    if (m.driver == kNil) return opts.start + durations[v];
    const auto& ex = r.executed();
    return ex[m.driver] ? *ex[m.driver] + durations[v] : kInf;
  };
  bool any_executed = false;
  for (std::size_t k = 0;; ++k) {
    const double t = opts.start + static_cast<double>(k) * opts.tick;
    const auto t0 = clock::now();
    TraceRecord rec;
    rec.time = t;
    tr.ticks = k + 1;
    const bool alive = r.check_missed(t, rec.conflicts);
    if (!alive) {
      tr.records.push_back(rec);
      tr.end_time = t;
      tr.failure_reason = "missed upper bound";
      if (!rec.conflicts.empty()) tr.failing_conflict = rec.conflicts.back();
      break;
    }
    const bool stall = !r.has_finite_upper();
    for (const auto& s : r.candidates()) {
      const auto& ex = r.executed();
      bool skip = false, forced = false;
      for (auto v : s) {
        if (ex[v] || release(v) > t) skip = true;
        if (!model.at(v).controlled) forced = true;
      }
      if (skip) continue;
      bool attempt = forced || stall || opts.policy == Policy::Earliest || r.deadline(s, t + opts.tick);
      if (!attempt && opts.policy == Policy::Random) attempt = coin(opts.seed, k, s);
      if (!attempt) continue;
      if (r.try_execute(s, t, rec.conflicts)) rec.executed.push_back(s);
    }
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    tr.max_decision_seconds = std::max(tr.max_decision_seconds, dt);
    if (!rec.executed.empty() && !any_executed) {
      any_executed = true;
      tr.first_execution_seconds = dt;
    }
    const bool acted = !rec.executed.empty() || !rec.conflicts.empty();
    if (acted) tr.records.push_back(rec);
    const auto& ex = r.executed();
    if (std::all_of(ex.begin(), ex.end(), [](const auto& x) { return x.has_value(); })) {
      tr.completed = true;
      tr.end_time = t;
      break;
    }
    if (!acted) {
      bool pending = r.has_future_bound(t);
      for (VertexId v = 0; v < n && !pending; ++v) {
        if (ex[v]) continue;
        const double rel = release(v);
        if (rel > t && rel < kInf) pending = true;
      }
      if (!pending) {
        tr.end_time = t;
        tr.failure_reason = "no event can ever become executable";
        break;
      }
    }
    if (k + 1 >= opts.max_ticks) {
      tr.end_time = t;
      tr.failure_reason = "tick limit reached";
      break;
    }
  }
  tr.schedule = r.executed();
  return tr;
}

class LabeledReasoner {
 public:
  explicit LabeledReasoner(const DispatchableForm& form) : form_(form), st_(make_dispatch_state(form)) {}

  const std::vector<std::optional<double>>& executed() const { return st_.executed; }
  const DispatchState& state() const { return st_; }

  bool check_missed(double t, std::vector<Environment>& created) {
    auto r = check_missed_upper_bounds(st_, t);
    created.insert(created.end(), r.created.begin(), r.created.end());
    return r.consistent;
  }

  std::vector<std::vector<VertexId>> candidates() const { return candidate_sets(st_, form_); }

  bool try_execute(const std::vector<VertexId>& s, double t, std::vector<Environment>& created) {
    st_.clock = t;
    auto need = executable(st_, form_, s, t);
    if (!need) return false;
    auto c = execute_set(st_, form_, s, t, *need);
    created.insert(created.end(), c.begin(), c.end());
    return true;
  }

  bool has_finite_upper() const {
    for (VertexId a = 0; a < st_.executed.size(); ++a) {
      if (st_.executed[a]) continue;
      for (const auto& p : st_.upper[a])
        if (p.value < kInf && st_.conflicts.consistent_extension_exists(p.env)) return true;
    }
    return false;
  }

  bool deadline(const std::vector<VertexId>& s, double next) const {
    for (auto a : s)
      for (const auto& p : st_.upper[a]) {
        if (!(p.value < next)) break;
        if (st_.conflicts.consistent_extension_exists(p.env)) return true;
      }
    return false;
  }

  bool has_future_bound(double t) const {
    for (VertexId a = 0; a < st_.executed.size(); ++a) {
      if (st_.executed[a]) continue;
      for (const auto& p : st_.upper[a])
        if (p.value < kInf) return true;
      for (const auto& p : st_.lower[a])
        if (p.value > t) return true;
    }
    return false;
  }

 private:
  const DispatchableForm& form_;
  DispatchState st_;
};

}  // namespace detail

inline ExecutionTrace run(const DispatchableForm& form, const DelayModel& model, const RunOptions& opts = {}) {
  detail::LabeledReasoner r(form);
  return detail::run_loop(r, form.graph.vertex_count(), model, opts);
}

/// Scenario file lines: "seed N", "policy earliest|latest|random", "tick D",
/// "event X controlled", "event X activity-end DRIVER V" or
/// "event X activity-end DRIVER uniform LO HI". Unlisted events are controlled.
inline Scenario parse_scenario(std::string_view text, const std::vector<std::string>& names) {
  Scenario sc;
  auto find = [&](detail::LineLexer& lex) {
    const auto t = lex.peek();
    const std::string n = lex.word("event name");
    for (VertexId v = 0; v < names.size(); ++v)
      if (names[v] == n) return v;
    lex.fail(t, "unknown event '" + n + "'");
  };
  detail::for_each_line(text, [&](detail::LineLexer& lex) {
    const auto kw = lex.peek();
    const std::string word = lex.word("keyword");
    if (word == "seed") {
      const auto t = lex.peek();
      const double v = lex.number("seed");
      if (v < 0 || v != std::floor(v)) lex.fail(t, "seed must be a non-negative integer");
      sc.options.seed = static_cast<std::uint64_t>(v);
    } else if (word == "policy") {
      const auto t = lex.peek();
      auto p = parse_policy(lex.word("policy"));
      if (!p) lex.fail(t, "unknown policy");
      sc.options.policy = *p;
    } else if (word == "tick") {
      const auto t = lex.peek();
      sc.options.tick = lex.number("tick");
      if (!(sc.options.tick > 0) || std::isinf(sc.options.tick)) lex.fail(t, "tick must be positive");
    } else if (word == "event") {
      const VertexId v = find(lex);
      const auto ct = lex.peek();
      const std::string cls = lex.word("event class");
      if (cls == "controlled") {
        if (sc.delays.events.size() > v) sc.delays.events[v] = EventModel{};
      } else if (cls == "activity-end") {
        const VertexId driver = find(lex);
        Duration d;
        if (lex.peek().kind == detail::Token::Word && lex.peek().text == "uniform") {
          lex.next();
          d.lo = lex.number("duration");
          d.hi = lex.number("duration");
        } else {
          d.lo = d.hi = lex.number("duration");
        }
        if (d.lo < 0 || d.hi < d.lo || std::isinf(d.hi)) lex.fail(ct, "bad duration");
        sc.delays.set_activity(v, driver, d);
      } else {
        lex.fail(ct, "expected 'controlled' or 'activity-end'");
      }
    } else {
      lex.fail(kw, "unknown keyword '" + word + "'");
    }
    lex.expect_end();
  });
  return sc;
}

inline std::string render_scenario(const Scenario& sc, const std::vector<std::string>& names) {
  std::string out = "seed " + std::to_string(sc.options.seed) + "\npolicy " + policy_name(sc.options.policy) +
                    "\ntick " + format_number(sc.options.tick) + "\n";
  for (VertexId v = 0; v < sc.delays.events.size(); ++v) {
    const auto& m = sc.delays.events[v];
    if (m.controlled) continue;
    out += "event " + names[v] + " activity-end " + names[m.driver] + " ";
    if (m.duration.lo == m.duration.hi)
      out += format_number(m.duration.lo);
    else
      out += "uniform " + format_number(m.duration.lo) + " " + format_number(m.duration.hi);
    out += "\n";
  }
  return out;
}

}  // namespace lstn
