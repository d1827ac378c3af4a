#pragma once

// Compilation of a labeled distance graph to its minimal dispatchable form:
// rigid-component preprocessing, then one labeled Bellman-Ford per source
// followed by predecessor-path traversal and domination pruning.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lstn/environment.hpp"
#include "lstn/errors.hpp"
#include "lstn/labeled_value_set.hpp"
#include "lstn/plan.hpp"

namespace lstn {

struct SsspState {
  VertexId source = 0;
  std::vector<DistanceSet> d;
  std::vector<Environment> new_conflicts;
  bool feasible = true;
};

struct PredecessorPath {
  std::vector<VertexId> vertices;
  std::vector<const DistanceSet::Pair*> pairs;  // pairs[i] is the pair used at vertices[i]
  Environment env;
  double min_weight_after_source = kInf;
};

struct RigidComponent {
  std::vector<VertexId> members;  // sorted
  Environment env;
  VertexId leader = 0;
  std::map<VertexId, double> offsets;
};

struct ZeroGroup {
  std::vector<VertexId> members;  // sorted
  Environment env;
  friend bool operator==(const ZeroGroup&, const ZeroGroup&) = default;
};

struct DispatchableForm {
  LabeledDistanceGraph graph;
  std::vector<ZeroGroup> zero_related;
  ConflictDatabase conflicts;

  const ChoiceSpace& space() const { return graph.space; }
};

struct CompileOptions {
  std::size_t max_rigid_rounds = 0;  // 0: 4 * |V| + 16
  std::uint64_t completion_prune_cap = 4096;  // 0 disables prune_unused_pairs
};

struct CompileStats {
  std::size_t rigid_rounds = 0;
  std::size_t rigid_components = 0;
  std::size_t environments_checked = 0;
  std::size_t pairs_pruned = 0;
};

struct CompileResult {
  bool feasible = false;
  DispatchableForm form;
  CompileStats stats;
  std::string reason;
};

namespace detail {

struct EdgeRef {
  VertexId u;
  VertexId v;
  const WeightSet* w;
};

inline std::vector<EdgeRef> edge_list(const LabeledDistanceGraph& g) {
  std::vector<EdgeRef> out;
  out.reserve(g.weights.size());
  for (const auto& [k, w] : g.weights) out.push_back({k.first, k.second, &w});
  return out;
}

inline bool relax(const DistanceSet& du, const WeightSet& w, VertexId u, DistanceSet& dv, const ConflictDatabase& db) {
  bool changed = false;
  for (const auto& pu : du) {
    if (std::isinf(pu.value.dist)) continue;
    for (const auto& pw : w) {
      auto env = env_union(pu.env, pw.env, db);
      if (!env) continue;
      changed |= dv.insert(DistanceSet::Pair{{pu.value.dist + pw.value, u}, *env});
    }
  }
  return changed;
}

/// d[u] + W(u, v) as a plain list of (distance, env).
inline std::vector<LabeledValue<double>> shifted(const DistanceSet& du, const WeightSet& w, const ConflictDatabase& db) {
  std::vector<LabeledValue<double>> out;
  for (const auto& pu : du) {
    if (std::isinf(pu.value.dist)) continue;
    for (const auto& pw : w)
      if (auto env = env_union(pu.env, pw.env, db)) out.push_back({pu.value.dist + pw.value, *env});
  }
  return out;
}

/// The pair at `vertex` is still among the best under `env`.
inline bool step_valid(const SsspState& st, VertexId vertex, const DistanceSet::Pair& p, const Environment& env) {
  auto best = st.d[vertex].best_real(env);
  return best && p.value.dist <= *best + kEps;
}

/// children[u] lists (v, pair index in d[v]) for every finite pair with predecessor u.
inline std::vector<std::vector<std::pair<VertexId, std::size_t>>> children_index(const SsspState& st) {
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> ch(st.d.size());
  for (VertexId v = 0; v < st.d.size(); ++v) {
    const auto& ps = st.d[v].pairs();
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (ps[i].value.pred != kNil && !std::isinf(ps[i].value.dist)) ch[ps[i].value.pred].push_back({v, i});
  }
  return ch;
}

}  // namespace detail

/// For each edge still relaxable after the rounds, the environments under which
/// it is still relaxable are conflicts.
inline std::vector<Environment> extract_negative_cycle_conflicts(const LabeledDistanceGraph& g, SsspState& st,
                                                                 ConflictDatabase& db) {
  std::vector<Environment> found;
  for (const auto& e : detail::edge_list(g)) {
    const auto& dv = st.d[e.v];
    for (const auto& uw : detail::shifted(st.d[e.u], *e.w, db)) {
      if (std::any_of(dv.begin(), dv.end(), [&](const DistanceSet::Pair& q) {
            return q.value.dist <= uw.value && subsumes(q.env, uw.env);
          }))
        continue;
      for (const auto& pv : dv) {
        if (!(pv.value.dist > uw.value)) continue;
        auto base = env_union(pv.env, uw.env, db);
        if (!base) continue;
        std::vector<Environment> split{*base};
        for (const auto& q : dv) {
          if (q.value.dist > uw.value) continue;
          std::vector<Environment> next;
          for (const auto& s : split) {
            auto a = avoid(s, q.env, db);
            next.insert(next.end(), a.begin(), a.end());
          }
          keep_most_general(next);
          split = std::move(next);
          if (split.empty()) break;
        }
        for (const auto& c : split)
          if (db.add(c)) found.push_back(c);
      }
    }
  }
  return found;
}

inline SsspState labeled_bellman_ford(const LabeledDistanceGraph& g, VertexId s, ConflictDatabase& db) {
  const std::size_t n = g.vertex_count();
  if (s >= n) throw InvalidInput("source vertex out of range");
  SsspState st;
  st.source = s;
  st.d.assign(n, DistanceSet{{PathValue{kInf, kNil}, Environment{}}});
  st.d[s] = DistanceSet{{PathValue{0, kNil}, Environment{}}};
  const auto edges = detail::edge_list(g);
  auto round = [&]() {
    bool changed = false;
    for (const auto& e : edges) {
      if (e.u == e.v) {
        const DistanceSet snapshot = st.d[e.u];
        changed |= detail::relax(snapshot, *e.w, e.u, st.d[e.v], db);
      } else {
        changed |= detail::relax(st.d[e.u], *e.w, e.u, st.d[e.v], db);
      }
    }
    return changed;
  };
  bool settled = false;
  for (std::size_t r = 1; r < n; ++r)
    if (!round()) {
      settled = true;
      break;
    }
  if (!settled) st.new_conflicts = extract_negative_cycle_conflicts(g, st, db);
  if (!st.new_conflicts.empty())
    for (auto& d : st.d) d.purge_conflicted(db);
  st.feasible = db.some_complete_consistent();
  // Distances are final, but equal-length predecessors around zero-length
  // cycles can still be missing; they matter for rigid-component detection.
  if (st.feasible && !settled)
    for (std::size_t r = 0; r < n && round(); ++r) {
    }
  return st;
}

/// Depth-first enumeration of valid paths from the source. A step is taken
/// only if every pair on the extended path is still a best value under the
/// extended path environment.
template <typename Visitor>
void enumerate_predecessor_paths(const SsspState& st, const ConflictDatabase& db, Visitor&& visit) {
  const auto children = detail::children_index(st);
  const DistanceSet::Pair* root = nullptr;
  for (const auto& p : st.d[st.source])
    if (p.value.pred == kNil && p.value.dist == 0 && p.env.empty()) root = &p;
  if (!root) throw InternalInvariant("source distance set lost its zero pair");

  PredecessorPath path;
  path.vertices.push_back(st.source);
  path.pairs.push_back(root);
  std::vector<char> on_path(st.d.size(), 0);
  on_path[st.source] = 1;

  std::function<void()> extend = [&]() {
    visit(static_cast<const PredecessorPath&>(path));
    const VertexId u = path.vertices.back();
    for (const auto& [w, idx] : children[u]) {
      const auto& p = st.d[w].pairs()[idx];
      auto env = env_union(path.env, p.env, db);
      if (!env) continue;
      if (!detail::step_valid(st, w, p, *env)) continue;
      bool ok = true;
      if (!(*env == path.env))
        for (std::size_t i = 0; i < path.vertices.size() && ok; ++i)
          ok = detail::step_valid(st, path.vertices[i], *path.pairs[i], *env);
      if (!ok) continue;
      if (on_path[w]) {
        if (db.consistent_extension_exists(*env))
          throw InternalInvariant("cycle in predecessor graph after rigid-component removal");
        continue;
      }
      const Environment saved_env = path.env;
      const double saved_min = path.min_weight_after_source;
      path.vertices.push_back(w);
      path.pairs.push_back(&p);
      path.env = *env;
      path.min_weight_after_source = std::min(saved_min, p.value.dist);
      on_path[w] = 1;
      extend();
      on_path[w] = 0;
      path.vertices.pop_back();
      path.pairs.pop_back();
      path.env = saved_env;
      path.min_weight_after_source = saved_min;
    }
  };
  extend();
}

/// A pair (d, e) at C is dropped when some valid path from the source ends in
/// it with path environment exactly e and passes an intermediate pair that
/// dominates it: one with value <= d when d >= 0, or a negative one labeled e
/// when d < 0. Such a path only uses pairs with environments inside e that
/// are best at their vertex under e, so the search runs once per distinct e
/// over that small subgraph.
inline std::vector<std::pair<VertexId, LabeledValue<double>>> prune_dominated(const SsspState& st,
                                                                              const ConflictDatabase& db,
                                                                              CompileStats* stats = nullptr) {
  const std::size_t n = st.d.size();
  std::vector<Environment> envs;
  for (VertexId c = 0; c < n; ++c)
    if (c != st.source)
      for (const auto& p : st.d[c])
        if (!std::isinf(p.value.dist)) envs.push_back(p.env);
  std::sort(envs.begin(), envs.end());
  envs.erase(std::unique(envs.begin(), envs.end()), envs.end());

  struct Node {
    bool reach = false;
    double min_inter = kInf;  // smallest value on the path after the source, this pair included
    bool neg_exact = false;   // a negative pair labeled exactly e on the path after the source
  };
  std::set<const DistanceSet::Pair*> pruned;
  std::vector<std::vector<std::size_t>> live(n);
  std::map<const DistanceSet::Pair*, Node> memo;
  std::set<const DistanceSet::Pair*> busy;

  for (const auto& e : envs) {
    if (db.is_subsumed(e)) continue;
    for (VertexId v = 0; v < n; ++v) {
      live[v].clear();
      const auto best = st.d[v].best_real(e);
      if (!best) continue;
      const auto& ps = st.d[v].pairs();
      for (std::size_t i = 0; i < ps.size() && ps[i].value.dist <= *best + kEps; ++i)
        if (subsumes(ps[i].env, e)) live[v].push_back(i);
    }
    memo.clear();
    std::function<Node(VertexId, const DistanceSet::Pair&)> eval = [&](VertexId v, const DistanceSet::Pair& p) {
      if (auto it = memo.find(&p); it != memo.end()) return it->second;
      Node out;
      if (v == st.source) {
        out.reach = p.value.pred == kNil && p.value.dist == 0 && p.env.empty();
      } else if (p.value.pred != kNil && !busy.count(&p)) {
        busy.insert(&p);
        const VertexId u = p.value.pred;
        for (std::size_t j : live[u]) {
          const Node prev = eval(u, st.d[u].pairs()[j]);
          if (!prev.reach) continue;
          out.reach = true;
          out.min_inter = std::min(out.min_inter, prev.min_inter);
          out.neg_exact |= prev.neg_exact;
        }
        busy.erase(&p);
        if (out.reach) {
          out.min_inter = std::min(out.min_inter, p.value.dist);
          out.neg_exact |= p.value.dist < 0 && p.env == e;
        }
      }
      memo[&p] = out;
      return out;
    };
    for (VertexId c = 0; c < n; ++c) {
      if (c == st.source) continue;
      for (std::size_t i : live[c]) {
        const auto& pc = st.d[c].pairs()[i];
        if (!(pc.env == e) || std::isinf(pc.value.dist) || pc.value.pred == kNil) continue;
        const VertexId u = pc.value.pred;
        if (u == st.source) continue;
        bool dominated = false;
        for (std::size_t j : live[u]) {
          const Node prev = eval(u, st.d[u].pairs()[j]);
          if (!prev.reach) continue;
          dominated |= pc.value.dist >= 0 ? prev.min_inter <= pc.value.dist + kEps : prev.neg_exact;
        }
        if (dominated) pruned.insert(&pc);
      }
    }
  }
  if (stats) {
    stats->environments_checked += envs.size();
    stats->pairs_pruned += pruned.size();
  }
  std::vector<std::pair<VertexId, LabeledValue<double>>> out;
  for (VertexId c = 0; c < n; ++c) {
    if (c == st.source) continue;
    for (const auto& p : st.d[c]) {
      if (std::isinf(p.value.dist) || pruned.count(&p)) continue;
      out.push_back({c, LabeledValue<double>{p.value.dist, p.env}});
    }
  }
  return out;
}

namespace detail {

/// Same decisions as prune_dominated, found by walking every valid path.
/// Exponential; kept for tests.
inline std::vector<std::pair<VertexId, LabeledValue<double>>> prune_dominated_by_paths(const SsspState& st,
                                                                              const ConflictDatabase& db,
                                                                              CompileStats* stats = nullptr) {
  std::set<const DistanceSet::Pair*> pruned;
  enumerate_predecessor_paths(st, db, [&](const PredecessorPath& path) {
    const std::size_t len = path.vertices.size();
    if (len < 3) return;
    const auto* pc = path.pairs.back();
    if (!(pc->env == path.env)) return;
    const double dc = pc->value.dist;
    bool dominated = false;
    if (dc >= 0) {
      double mn = kInf;
      for (std::size_t i = 1; i + 1 < len; ++i) mn = std::min(mn, path.pairs[i]->value.dist);
      dominated = mn <= dc + kEps;
    } else {
      for (std::size_t i = 1; i + 1 < len && !dominated; ++i)
        dominated = path.pairs[i]->value.dist < 0 && path.pairs[i]->env == pc->env;
    }
    if (dominated) pruned.insert(pc);
  });
  if (stats) stats->pairs_pruned += pruned.size();
  std::vector<std::pair<VertexId, LabeledValue<double>>> out;
  for (VertexId c = 0; c < st.d.size(); ++c) {
    if (c == st.source) continue;
    for (const auto& p : st.d[c]) {
      if (std::isinf(p.value.dist) || pruned.count(&p)) continue;
      out.push_back({c, LabeledValue<double>{p.value.dist, p.env}});
    }
  }
  return out;
}

}  // namespace detail

namespace detail {

struct FoundLoop {
  std::vector<VertexId> members;
  Environment env;
  std::map<VertexId, double> dist;
};

inline bool covers(const FoundLoop& big, const FoundLoop& small) {
  return std::includes(big.members.begin(), big.members.end(), small.members.begin(), small.members.end()) &&
         subsumes(big.env, small.env);
}

}  // namespace detail

/// Rigid components of g under every environment. Two events are rigidly
/// related under e when their distances in both directions sum to zero there;
/// pairs found that way are merged into maximal components.
inline std::vector<RigidComponent> find_rigid_components(const LabeledDistanceGraph& g, ConflictDatabase& db) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  std::vector<SsspState> sp;
  for (VertexId s = 0; s < n; ++s) {
    sp.push_back(labeled_bellman_ford(g, s, db));
    if (!sp.back().feasible) return {};
  }

  std::vector<detail::FoundLoop> loops;
  auto record = [&](detail::FoundLoop f) {
    for (const auto& l : loops)
      if (detail::covers(l, f)) return;
    std::erase_if(loops, [&](const detail::FoundLoop& l) { return detail::covers(f, l); });
    loops.push_back(std::move(f));
  };

  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      for (const auto& there : sp[u].d[v]) {
        if (std::isinf(there.value.dist)) continue;
        for (const auto& back : sp[v].d[u]) {
          if (std::isinf(back.value.dist) || std::abs(there.value.dist + back.value.dist) > kEps) continue;
          auto env = env_union(there.env, back.env, db);
          if (!env) continue;
          detail::FoundLoop f;
          f.env = *env;
          f.members = {u, v};
          f.dist = {{u, 0.0}, {v, there.value.dist}};
          record(std::move(f));
        }
      }

  // Components sharing a member combine under the union of their environments.
  constexpr std::size_t kMergeCap = 256;
  for (bool grew = true; grew && loops.size() <= kMergeCap;) {
    grew = false;
    for (std::size_t i = 0; i < loops.size() && !grew; ++i)
      for (std::size_t j = i + 1; j < loops.size() && !grew; ++j) {
        const auto& a = loops[i];
        const auto& b = loops[j];
        std::optional<VertexId> shared;
        for (VertexId m : a.members)
          if (b.dist.count(m)) {
            shared = m;
            break;
          }
        if (!shared) continue;
        auto env = env_union(a.env, b.env, db);
        if (!env) continue;
        detail::FoundLoop f;
        f.env = *env;
        f.dist = a.dist;
        const double shift = a.dist.at(*shared) - b.dist.at(*shared);
        for (const auto& [v, d] : b.dist) f.dist.emplace(v, d + shift);
        for (const auto& [v, d] : f.dist) f.members.push_back(v);
        bool known = false;
        for (const auto& l : loops) known |= detail::covers(l, f);
        if (known) continue;
        record(std::move(f));
        grew = true;
      }
  }

  std::vector<RigidComponent> out;
  for (const auto& l : loops) {
    RigidComponent rc;
    rc.members = l.members;
    rc.env = l.env;
    rc.leader = l.members.front();
    for (const auto& [v, d] : l.dist)
      if (d < l.dist.at(rc.leader) - kEps) rc.leader = v;
    const double base = l.dist.at(rc.leader);
    for (const auto& [v, d] : l.dist) rc.offsets[v] = d - base;
    out.push_back(std::move(rc));
  }
  std::sort(out.begin(), out.end(), [](const RigidComponent& a, const RigidComponent& b) {
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    if (a.env.size() != b.env.size()) return a.env.size() < b.env.size();
    if (a.members != b.members) return a.members < b.members;
    return a.env < b.env;
  });
  return out;
}

/// Emits the fixed-offset edges and zero-related groups of rc into `out`, and
/// rewrites g so that under rc.env only the leader carries the component's
/// constraints.
inline void rewrite_rigid_component(LabeledDistanceGraph& g, const RigidComponent& rc, DispatchableForm& out,
                                    const ConflictDatabase& db) {
  const VertexId lead = rc.leader;
  auto is_member = [&](VertexId v) { return std::binary_search(rc.members.begin(), rc.members.end(), v); };

  for (VertexId b : rc.members) {
    if (b == lead) continue;
    const double off = rc.offsets.at(b);
    out.graph.add(lead, b, off, rc.env, db);
    out.graph.add(b, lead, -off, rc.env, db);
  }
  std::map<double, std::vector<VertexId>> by_offset;
  for (VertexId b : rc.members) by_offset[rc.offsets.at(b)].push_back(b);
  for (auto& [off, group] : by_offset) {
    if (group.size() < 2) continue;
    std::sort(group.begin(), group.end());
    ZeroGroup z{group, rc.env};
    if (std::find(out.zero_related.begin(), out.zero_related.end(), z) == out.zero_related.end())
      out.zero_related.push_back(std::move(z));
  }

  std::map<LabeledDistanceGraph::Key, WeightSet> next;
  auto put = [&](VertexId u, VertexId v, double d, const Environment& e) {
    if (db.is_subsumed(e)) return;
    next[{u, v}].insert(d, e);
  };
  auto put_avoiding = [&](VertexId u, VertexId v, double d, const Environment& e) {
    for (const auto& a : avoid(e, rc.env, db)) put(u, v, d, a);
  };

  for (const auto& [k, w] : g.weights) {
    const auto [u, v] = k;
    const bool um = is_member(u), vm = is_member(v);
    for (const auto& p : w) {
      if (!um && !vm) {
        put(u, v, p.value, p.env);
      } else if (um && vm) {
        if (!subsumes(rc.env, p.env)) put_avoiding(u, v, p.value, p.env);
      } else if (um) {
        if (u == lead) {
          put(u, v, p.value, p.env);
          continue;
        }
        if (auto e = env_union(p.env, rc.env, db)) put(lead, v, p.value + rc.offsets.at(u), *e);
        put_avoiding(u, v, p.value, p.env);
      } else {
        if (v == lead) {
          put(u, v, p.value, p.env);
          continue;
        }
        if (auto e = env_union(p.env, rc.env, db)) put(u, lead, p.value - rc.offsets.at(v), *e);
        put_avoiding(u, v, p.value, p.env);
      }
    }
  }
  g.weights = std::move(next);
  g.remove_empty();
}

/// Repeats detect and rewrite until no rigid component remains. Each round
/// rewrites a maximal set of member-disjoint components.
inline bool remove_rigid_components(LabeledDistanceGraph& g, DispatchableForm& out, ConflictDatabase& db,
                                    const CompileOptions& opts = {}, CompileStats* stats = nullptr) {
  const std::size_t cap = opts.max_rigid_rounds ? opts.max_rigid_rounds : 4 * g.vertex_count() + 16;
  for (std::size_t round = 0;; ++round) {
    auto comps = find_rigid_components(g, db);
    if (!db.some_complete_consistent()) return false;
    g.purge_conflicted(db);
    if (comps.empty()) return true;
    if (round >= cap) throw InternalInvariant("rigid-component rewriting did not reach a fixed point");
    if (stats) ++stats->rigid_rounds;
    std::vector<char> used(g.vertex_count(), 0);
    for (const auto& rc : comps) {
      if (std::any_of(rc.members.begin(), rc.members.end(), [&](VertexId v) { return used[v]; })) continue;
      for (VertexId v : rc.members) used[v] = 1;
      rewrite_rigid_component(g, rc, out, db);
      if (stats) ++stats->rigid_components;
    }
  }
}

/// Drops pairs that are not the smallest weight on their edge under any
/// consistent complete environment. Projections onto consistent components
/// are unchanged. Returns the number of pairs removed.
inline std::size_t prune_unused_pairs(LabeledDistanceGraph& g, const ConflictDatabase& db, std::uint64_t cap) {
  if (cap == 0 || g.space.complete_environment_count() > cap) return 0;
  const auto complete = db.consistent_complete_environments(cap);
  std::size_t removed = 0;
  for (auto& [k, w] : g.weights) {
    const auto& ps = w.pairs();
    std::vector<char> used(ps.size(), 0);
    // Pairs are sorted by value, so the first match is a minimum.
    for (const auto& c : complete)
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (subsumes(ps[i].env, c)) {
          used[i] = 1;
          break;
        }
    WeightSet next;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (used[i]) {
        next.insert(ps[i]);
      } else {
        ++removed;
      }
    }
    w = std::move(next);
  }
  g.remove_empty();
  return removed;
}

inline CompileResult compile(const LabeledDistanceGraph& input, const CompileOptions& opts = {}) {
  CompileResult r;
  LabeledDistanceGraph g = input;
  ConflictDatabase db(g.space);
  r.form.graph.space = g.space;
  r.form.graph.names = g.names;

  auto infeasible = [&](const char* why) {
    r.feasible = false;
    r.reason = why;
    r.form.conflicts = db;
    return r;
  };

  if (!remove_rigid_components(g, r.form, db, opts, &r.stats)) return infeasible("no consistent complete environment");

  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    SsspState st = labeled_bellman_ford(g, s, db);
    if (!st.feasible) return infeasible("no consistent complete environment");
    for (const auto& [c, p] : prune_dominated(st, db, &r.stats)) r.form.graph.add(s, c, p.value, p.env, db);
    if (!st.new_conflicts.empty()) {
      g.purge_conflicted(db);
      r.form.graph.purge_conflicted(db);
    }
  }
  r.form.graph.purge_unsatisfiable(db);
  r.stats.pairs_pruned += prune_unused_pairs(r.form.graph, db, opts.completion_prune_cap);
  std::erase_if(r.form.zero_related, [&](const ZeroGroup& z) { return !db.consistent_extension_exists(z.env); });
  r.form.conflicts = db;
  r.feasible = db.some_complete_consistent();
  if (!r.feasible) r.reason = "no consistent complete environment";
  return r;
}

inline CompileResult compile(const LabeledSTN& plan, const CompileOptions& opts = {}) {
  return compile(to_labeled_distance_graph(plan), opts);
}

}  // namespace lstn
