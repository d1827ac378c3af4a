#pragma once

// Labeled value pairs and dominance-minimal labeled value sets.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lstn/environment.hpp"

namespace lstn {

using VertexId = std::uint32_t;

inline constexpr VertexId kNil = std::numeric_limits<VertexId>::max();
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kEps = 1e-9;

/// Distance plus the predecessor vertex that produced it.
struct PathValue {
  double dist = kInf;
  VertexId pred = kNil;
  friend bool operator==(const PathValue&, const PathValue&) = default;
};

inline double real_part(double v) { return v; }
inline double real_part(const PathValue& v) { return v.dist; }

template <typename V>
struct LabeledValue {
  V value{};
  Environment env;
  friend bool operator==(const LabeledValue&, const LabeledValue&) = default;
};

struct MinOrder {
  static bool le(double a, double b) { return a <= b; }
  static bool lt(double a, double b) { return a < b; }
  static constexpr double worst() { return kInf; }
};

struct MaxOrder {
  static bool le(double a, double b) { return a >= b; }
  static bool lt(double a, double b) { return a > b; }
  static constexpr double worst() { return -kInf; }
};

/// a is at least as good as b. Path values with equal distances but
/// different predecessors are incomparable.
template <typename Order>
bool value_le(double a, double b) {
  return Order::le(a, b);
}

template <typename Order>
bool value_le(const PathValue& a, const PathValue& b) {
  return Order::lt(a.dist, b.dist) || a == b;
}

template <typename Order, typename V>
bool dominates(const LabeledValue<V>& p, const LabeledValue<V>& q) {
  return value_le<Order>(p.value, q.value) && subsumes(p.env, q.env);
}

/// Shortest representation that reads back to the same double; integers
/// print without a decimal point.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename V, typename Order = MinOrder>
class LabeledValueSet {
 public:
  using Pair = LabeledValue<V>;

  LabeledValueSet() = default;
  LabeledValueSet(std::initializer_list<Pair> ps) {
    for (const auto& p : ps) insert(p);
  }

  const std::vector<Pair>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  void clear() { pairs_.clear(); }

  /// Insert without a conflict check. Returns true when the set changed.
  bool insert(const Pair& p) {
    for (const auto& q : pairs_)
      if (dominates<Order>(q, p)) return false;
    std::erase_if(pairs_, [&](const Pair& q) { return dominates<Order>(p, q); });
    auto pos = std::lower_bound(pairs_.begin(), pairs_.end(), p, &LabeledValueSet::before);
    pairs_.insert(pos, p);
    return true;
  }

  bool insert(const Pair& p, const ConflictDatabase& db) {
    if (db.is_subsumed(p.env)) return false;
    return insert(p);
  }

  bool insert(V value, const Environment& env) { return insert(Pair{value, env}); }
  bool insert(V value, const Environment& env, const ConflictDatabase& db) {
    return insert(Pair{value, env}, db);
  }

  /// Values of the best pairs whose environment subsumes e.
  std::vector<V> query(const Environment& e) const {
    std::vector<V> out;
    std::optional<double> best;
    for (const auto& p : pairs_) {
      if (!subsumes(p.env, e)) continue;
      const double r = real_part(p.value);
      if (best && Order::lt(*best, r)) break;
      best = r;
      if (std::find(out.begin(), out.end(), p.value) == out.end()) out.push_back(p.value);
    }
    return out;
  }

  /// Pairs behind query(e).
  std::vector<Pair> query_pairs(const Environment& e) const {
    std::vector<Pair> out;
    std::optional<double> best;
    for (const auto& p : pairs_) {
      if (!subsumes(p.env, e)) continue;
      const double r = real_part(p.value);
      if (best && Order::lt(*best, r)) break;
      best = r;
      out.push_back(p);
    }
    return out;
  }

  std::optional<double> best_real(const Environment& e) const {
    for (const auto& p : pairs_)
      if (subsumes(p.env, e)) return real_part(p.value);
    return std::nullopt;
  }

  /// Returns true when something was removed.
  bool purge_conflicted(const ConflictDatabase& db) {
    if (db.empty()) return false;
    return std::erase_if(pairs_, [&](const Pair& p) { return db.is_subsumed(p.env); }) > 0;
  }

  /// Drops pairs whose environment has no consistent complete extension.
  bool purge_unsatisfiable(const ConflictDatabase& db) {
    if (db.empty()) return false;
    return std::erase_if(pairs_, [&](const Pair& p) { return !db.consistent_extension_exists(p.env); }) > 0;
  }

  bool contains(const Pair& p) const { return std::find(pairs_.begin(), pairs_.end(), p) != pairs_.end(); }

  /// Non-dominated subset of {(f(a, b), e_a ∪ e_b)} over the cross product.
  template <typename F, typename VA, typename OA, typename VB, typename OB>
  static LabeledValueSet apply(F&& f, const LabeledValueSet<VA, OA>& a, const LabeledValueSet<VB, OB>& b,
                               const ConflictDatabase& db) {
    LabeledValueSet out;
    for (const auto& pa : a)
      for (const auto& pb : b) {
        auto env = env_union(pa.env, pb.env, db);
        if (!env) continue;
        out.insert(Pair{f(pa.value, pb.value), *env});
      }
    return out;
  }

  /// "{(v, {x=1}), ...}" sorted by value then environment, infinite values
  /// omitted. Only meaningful for real-valued sets.
  std::string render(const ChoiceSpace& space) const {
    std::vector<const Pair*> ps;
    for (const auto& p : pairs_)
      if (!std::isinf(real_part(p.value))) ps.push_back(&p);
    std::sort(ps.begin(), ps.end(), [](const Pair* x, const Pair* y) {
      const double a = real_part(x->value), b = real_part(y->value);
      if (a != b) return a < b;
      return x->env < y->env;
    });
    std::string out = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out += ", ";
      out += '(';
      out += format_number(real_part(ps[i]->value));
      out += ", ";
      out += space.render(ps[i]->env);
      out += ')';
    }
    out += '}';
    return out;
  }

  friend bool operator==(const LabeledValueSet&, const LabeledValueSet&) = default;

 private:
  static bool before(const Pair& x, const Pair& y) {
    const double a = real_part(x.value), b = real_part(y.value);
    if (a != b) return Order::lt(a, b);
    if (x.env.size() != y.env.size()) return x.env.size() < y.env.size();
    if (x.env != y.env) return x.env < y.env;
    return tiebreak(x.value) < tiebreak(y.value);
  }

  static VertexId tiebreak(double) { return 0; }
  static VertexId tiebreak(const PathValue& v) { return v.pred; }

  std::vector<Pair> pairs_;
};

using WeightSet = LabeledValueSet<double, MinOrder>;
using UpperSet = LabeledValueSet<double, MinOrder>;
using LowerSet = LabeledValueSet<double, MaxOrder>;
using DistanceSet = LabeledValueSet<PathValue, MinOrder>;

}  // namespace lstn
