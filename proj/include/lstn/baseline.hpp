#pragma once

// Enumeration baseline: one unlabeled STN per complete environment, compiled
// with Floyd-Warshall and triangle pruning, dispatched in lockstep. Kept
// independent of the labeled compiler so it can serve as an oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "lstn/dispatcher.hpp"
#include "lstn/environment.hpp"
#include "lstn/errors.hpp"
#include "lstn/plan.hpp"

namespace lstn {

using DistanceMatrix = std::vector<std::vector<double>>;

struct ComponentSTN {
  Environment env;
  DistanceMatrix weights;  // kInf where there is no edge
  bool consistent = true;
};

struct StnDispatchable {
  DistanceMatrix w;  // kInf where there is no edge
  std::vector<std::vector<VertexId>> zero_groups;
  bool consistent = true;

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& row : w)
      for (double x : row) n += x < kInf;
    return n;
  }
};

struct CompiledComponent {
  Environment env;
  StnDispatchable graph;
};

namespace detail {

constexpr double kTriangleEps = 1e-9;

inline bool fw_closure(DistanceMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) d[i][i] = std::min(d[i][i], 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[k][j] < kInf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  for (std::size_t i = 0; i < n; ++i)
    if (d[i][i] < 0) return false;
  return true;
}

}  // namespace detail

inline std::vector<ComponentSTN> enumerate_component_stns(const LabeledDistanceGraph& g, std::uint64_t cap = 4096) {
  if (g.space.complete_environment_count() > cap)
    throw CapacityExceeded("component enumeration exceeds cap of " + std::to_string(cap));
  std::vector<ComponentSTN> out;
  ConflictDatabase::for_each_complete(g.space.layout(), [&](const Environment& e) {
    ComponentSTN c;
    c.env = e;
    c.weights = g.project(e);
    DistanceMatrix d = c.weights;
    c.consistent = detail::fw_closure(d);
    out.push_back(std::move(c));
  });
  return out;
}

inline std::vector<ComponentSTN> enumerate_component_stns(const LabeledSTN& plan, std::uint64_t cap = 4096) {
  return enumerate_component_stns(to_labeled_distance_graph(plan), cap);
}

/// APSP, rigid-component contraction onto a leader, then triangle pruning
/// among leaders.
inline StnDispatchable stn_compile(const DistanceMatrix& weights) {
  const std::size_t n = weights.size();
  StnDispatchable out;
  out.w.assign(n, std::vector<double>(n, kInf));
  DistanceMatrix d = weights;
  if (!detail::fw_closure(d)) {
    out.consistent = false;
    return out;
  }
  auto rigid = [&](std::size_t i, std::size_t j) {
    return d[i][j] < kInf && d[j][i] < kInf && std::abs(d[i][j] + d[j][i]) <= detail::kTriangleEps;
  };
  std::vector<std::size_t> cls(n, n);
  std::vector<std::size_t> leaders;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != n) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < n; ++j)
      if (cls[j] == n && (j == i || rigid(i, j))) members.push_back(j);
    std::size_t leader = members[0];
    for (auto m : members)
      if (d[i][m] < d[i][leader] - detail::kTriangleEps) leader = m;
    for (auto m : members) cls[m] = leader;
    leaders.push_back(leader);
    if (members.size() < 2) continue;
    std::vector<std::pair<double, VertexId>> by_offset;
    for (auto m : members) {
      if (m == leader) {
        by_offset.push_back({0, static_cast<VertexId>(m)});
        continue;
      }
      out.w[leader][m] = d[leader][m];
      out.w[m][leader] = d[m][leader];
      by_offset.push_back({d[leader][m], static_cast<VertexId>(m)});
    }
    std::sort(by_offset.begin(), by_offset.end());
    for (std::size_t a = 0; a < by_offset.size();) {
      std::size_t b = a;
      std::vector<VertexId> group;
      while (b < by_offset.size() && std::abs(by_offset[b].first - by_offset[a].first) <= detail::kTriangleEps)
        group.push_back(by_offset[b++].second);
      if (group.size() >= 2) {
        std::sort(group.begin(), group.end());
        out.zero_groups.push_back(std::move(group));
      }
      a = b;
    }
  }
  std::sort(leaders.begin(), leaders.end());
  for (auto a : leaders)
    for (auto c : leaders) {
      if (a == c || d[a][c] == kInf) continue;
      bool dominated = false;
      for (auto b : leaders) {
        if (b == a || b == c || d[a][b] == kInf || d[b][c] == kInf) continue;
        if (std::abs(d[a][b] + d[b][c] - d[a][c]) > detail::kTriangleEps) continue;
        if (d[a][c] >= 0 && d[b][c] >= 0) dominated = true;
        if (d[a][c] < 0 && d[a][b] < 0) dominated = true;
        if (dominated) break;
      }
      if (!dominated) out.w[a][c] = d[a][c];
    }
  std::sort(out.zero_groups.begin(), out.zero_groups.end());
  return out;
}

inline StnDispatchable stn_compile(const ComponentSTN& c) {
  if (!c.consistent) {
    StnDispatchable out;
    out.consistent = false;
    out.w.assign(c.weights.size(), std::vector<double>(c.weights.size(), kInf));
    return out;
  }
  return stn_compile(c.weights);
}

/// Consistent components only, compiled.
inline std::vector<CompiledComponent> compile_enumerated(const LabeledDistanceGraph& g, std::uint64_t cap = 4096) {
  std::vector<CompiledComponent> out;
  for (const auto& c : enumerate_component_stns(g, cap)) {
    if (!c.consistent) continue;
    out.push_back({c.env, stn_compile(c)});
  }
  return out;
}

inline std::vector<CompiledComponent> compile_enumerated(const LabeledSTN& plan, std::uint64_t cap = 4096) {
  return compile_enumerated(to_labeled_distance_graph(plan), cap);
}

namespace detail {

class EnumeratedReasoner {
 public:
  EnumeratedReasoner(const std::vector<const StnDispatchable*>& comps, std::size_t n) : executed_(n) {
    for (const auto* c : comps) {
      if (!c->consistent) continue;
      comps_.push_back({c, true, std::vector<double>(n, -kInf), std::vector<double>(n, kInf)});
      for (const auto& z : c->zero_groups) groups_.push_back(z);
    }
    std::sort(groups_.begin(), groups_.end());
    groups_.erase(std::unique(groups_.begin(), groups_.end()), groups_.end());
  }

  const std::vector<std::optional<double>>& executed() const { return executed_; }

  std::size_t alive_count() const {
    return static_cast<std::size_t>(std::count_if(comps_.begin(), comps_.end(), [](const Comp& c) { return c.alive; }));
  }

  bool check_missed(double t, std::vector<Environment>&) {
    for (auto& c : comps_) {
      if (!c.alive) continue;
      for (VertexId a = 0; a < executed_.size(); ++a)
        if (!executed_[a] && c.hi[a] < t) c.alive = false;
    }
    return alive_count() > 0;
  }

  std::vector<std::vector<VertexId>> candidates() const {
    std::vector<std::vector<VertexId>> out;
    for (VertexId v = 0; v < executed_.size(); ++v)
      if (!executed_[v]) out.push_back({v});
    std::vector<std::vector<VertexId>> live_groups;
    for (const auto& z : groups_) {
      std::vector<VertexId> live;
      for (auto v : z)
        if (!executed_[v]) live.push_back(v);
      if (live.size() >= 2) live_groups.push_back(std::move(live));
    }
    std::sort(live_groups.begin(), live_groups.end());
    live_groups.erase(std::unique(live_groups.begin(), live_groups.end()), live_groups.end());
    out.insert(out.end(), live_groups.begin(), live_groups.end());
    return out;
  }

  bool try_execute(const std::vector<VertexId>& s, double t, std::vector<Environment>&) {
    std::vector<char> ok(comps_.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (comps_[i].alive && accepts(comps_[i], s, t)) ok[i] = any = true;
    if (!any) return false;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (!ok[i]) comps_[i].alive = false;
    for (auto a : s) executed_[a] = t;
    const std::size_t n = executed_.size();
    for (auto& c : comps_) {
      if (!c.alive) continue;
      for (auto a : s)
        for (VertexId b = 0; b < n; ++b) {
          if (executed_[b]) continue;
          if (c.g->w[a][b] < kInf) c.hi[b] = std::min(c.hi[b], t + c.g->w[a][b]);
          if (c.g->w[b][a] < kInf) c.lo[b] = std::max(c.lo[b], t - c.g->w[b][a]);
        }
    }
    return true;
  }

  bool has_finite_upper() const {
    for (const auto& c : comps_) {
      if (!c.alive) continue;
      for (VertexId a = 0; a < executed_.size(); ++a)
        if (!executed_[a] && c.hi[a] < kInf) return true;
    }
    return false;
  }

  bool deadline(const std::vector<VertexId>& s, double next) const {
    for (const auto& c : comps_) {
      if (!c.alive) continue;
      for (auto a : s)
        if (c.hi[a] < next) return true;
    }
    return false;
  }

  bool has_future_bound(double t) const {
    for (const auto& c : comps_) {
      if (!c.alive) continue;
      for (VertexId a = 0; a < executed_.size(); ++a)
        if (!executed_[a] && (c.hi[a] < kInf || c.lo[a] > t)) return true;
    }
    return false;
  }

 private:
  struct Comp {
    const StnDispatchable* g;
    bool alive;
    std::vector<double> lo, hi;
  };

  bool accepts(const Comp& c, const std::vector<VertexId>& s, double t) const {
    const std::size_t n = executed_.size();
    for (auto a : s) {
      if (c.lo[a] > t || c.hi[a] < t) return false;
      for (VertexId b = 0; b < n; ++b) {
        if (c.g->w[a][b] >= 0) continue;
        if (contains(s, b) || !executed_[b]) return false;
      }
    }
    for (const auto& z : c.g->zero_groups) {
      bool touches = false, left_out = false;
      for (auto v : z) {
        if (contains(s, v))
          touches = true;
        else if (!executed_[v])
          left_out = true;
      }
      if (touches && left_out) return false;
    }
    return true;
  }

  std::vector<std::optional<double>> executed_;
  std::vector<Comp> comps_;
  std::vector<std::vector<VertexId>> groups_;
};

}  // namespace detail

/// Lockstep dispatch of every consistent component: an execution is accepted
/// if at least one surviving component accepts it; the others are dropped.
inline ExecutionTrace parallel_dispatch(const std::vector<const StnDispatchable*>& comps, std::size_t n,
                                        const DelayModel& model, const RunOptions& opts = {}) {
  detail::EnumeratedReasoner r(comps, n);
  if (r.alive_count() == 0) {
    ExecutionTrace tr;
    tr.schedule.assign(n, std::nullopt);
    tr.failure_reason = "no consistent component";
    tr.end_time = opts.start;
    return tr;
  }
  return detail::run_loop(r, n, model, opts);
}

inline ExecutionTrace parallel_dispatch(const std::vector<CompiledComponent>& comps, std::size_t n,
                                        const DelayModel& model, const RunOptions& opts = {}) {
  std::vector<const StnDispatchable*> ptrs;
  for (const auto& c : comps) ptrs.push_back(&c.graph);
  return parallel_dispatch(ptrs, n, model, opts);
}

inline ExecutionTrace stn_dispatch(const StnDispatchable& g, const DelayModel& model, const RunOptions& opts = {}) {
  return parallel_dispatch(std::vector<const StnDispatchable*>{&g}, g.w.size(), model, opts);
}

/// Complete environments under which every entailed constraint holds.
inline std::vector<Environment> verify_schedule(const LabeledSTN& plan, const std::vector<double>& schedule,
                                                std::uint64_t cap = 4096, double tol = 1e-9) {
  if (schedule.size() != plan.event_count()) throw InvalidInput("schedule does not assign every event");
  if (plan.space.complete_environment_count() > cap) throw CapacityExceeded("schedule verification exceeds cap");
  std::vector<Environment> out;
  ConflictDatabase::for_each_complete(plan.space.layout(), [&](const Environment& e) {
    for (const auto& c : plan.constraints) {
      if (!subsumes(c.env, e)) continue;
      const double d = schedule[c.to] - schedule[c.from];
      if (d < c.lower - tol || d > c.upper + tol) return;
    }
    out.push_back(e);
  });
  return out;
}

inline std::vector<Environment> verify_schedule(const LabeledSTN& plan,
                                                const std::vector<std::optional<double>>& schedule,
                                                std::uint64_t cap = 4096, double tol = 1e-9) {
  std::vector<double> s;
  for (const auto& x : schedule) {
    if (!x) throw InvalidInput("schedule does not assign every event");
    s.push_back(*x);
  }
  return verify_schedule(plan, s, cap, tol);
}

}  // namespace lstn
