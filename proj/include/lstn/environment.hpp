#pragma once

// Choice variables, environments (partial assignments) and the minimal
// conflict database.
//
// An environment is stored as a bitset over "literals": every (variable,
// option) pair of the choice space has a dense literal index. A second bitset
// records which variables are assigned. This makes subsumption a single
// and-not, union a single or, and structural equality semantic equality.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lstn/errors.hpp"

namespace lstn {

using VarId = std::uint16_t;
using OptId = std::uint16_t;

inline constexpr std::size_t kMaxLiterals = 256;
inline constexpr std::size_t kMaxVariables = 128;

template <std::size_t Words>
struct BitWords {
  std::array<std::uint64_t, Words> w{};

  static constexpr std::size_t capacity() { return Words * 64; }

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

  bool none() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto x : w) n += static_cast<std::size_t>(std::popcount(x));
    return n;
  }

  // true iff every bit set here is also set in `o`
  bool subset_of(const BitWords& o) const {
    for (std::size_t i = 0; i < Words; ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }

  BitWords operator|(const BitWords& o) const {
    BitWords r;
    for (std::size_t i = 0; i < Words; ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }

  BitWords operator&(const BitWords& o) const {
    BitWords r;
    for (std::size_t i = 0; i < Words; ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }

  // index of the highest set bit, or -1
  int highest() const {
    for (std::size_t i = Words; i-- > 0;)
      if (w[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(w[i]));
    return -1;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < Words; ++i) {
      std::uint64_t x = w[i];
      while (x) {
        const int b = std::countr_zero(x);
        f(i * 64 + static_cast<std::size_t>(b));
        x &= x - 1;
      }
    }
  }

  friend bool operator==(const BitWords&, const BitWords&) = default;
};

struct Assignment {
  VarId var = 0;
  OptId opt = 0;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Partial assignment of choice variables. Build through ChoiceSpace.
class Environment {
 public:
  Environment() = default;

  bool empty() const { return vars_.none(); }
  std::size_t size() const { return vars_.count(); }
  bool assigns(VarId v) const { return vars_.test(v); }
  bool has_literal(std::size_t lit) const { return lits_.test(lit); }

  /// Low-level: record that `var` takes the option with literal index `lit`.
  /// Callers must not assign a variable twice; ChoiceSpace::assign checks.
  void insert_literal(VarId var, std::size_t lit) {
    vars_.set(var);
    lits_.set(lit);
  }

  std::vector<std::size_t> literals() const {
    std::vector<std::size_t> out;
    lits_.for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  int highest_variable() const { return vars_.highest(); }

  const BitWords<kMaxLiterals / 64>& literal_bits() const { return lits_; }
  const BitWords<kMaxVariables / 64>& variable_bits() const { return vars_; }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : lits_.w) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }

  friend bool operator==(const Environment&, const Environment&) = default;

  /// Canonical total order: lexicographic over the ascending literal list.
  friend bool operator<(const Environment& a, const Environment& b) {
    // Decided at the lowest literal held by exactly one side.
    for (std::size_t i = 0; i < a.lits_.w.size(); ++i) {
      const std::uint64_t diff = a.lits_.w[i] ^ b.lits_.w[i];
      if (!diff) continue;
      const int bit = std::countr_zero(diff);
      const std::uint64_t above = bit == 63 ? 0 : ~std::uint64_t{0} << (bit + 1);
      const bool a_has = (a.lits_.w[i] >> bit) & 1u;
      const auto& other = a_has ? b.lits_ : a.lits_;
      bool other_continues = (other.w[i] & above) != 0;
      for (std::size_t j = i + 1; j < other.w.size() && !other_continues; ++j) other_continues = other.w[j] != 0;
      return a_has ? other_continues : !other_continues;
    }
    return false;
  }

  /// e subsumes e2 iff every assignment of e also appears in e2.
  friend bool subsumes(const Environment& e, const Environment& e2) {
    return e.lits_.subset_of(e2.lits_);
  }

  /// Union ignoring conflicts; nullopt when a variable gets two options.
  static std::optional<Environment> merge(const Environment& a, const Environment& b) {
    // Every shared variable must contribute one shared literal.
    if ((a.vars_ & b.vars_).count() != (a.lits_ & b.lits_).count()) return std::nullopt;
    Environment r;
    r.vars_ = a.vars_ | b.vars_;
    r.lits_ = a.lits_ | b.lits_;
    return r;
  }

 private:
  BitWords<kMaxLiterals / 64> lits_;
  BitWords<kMaxVariables / 64> vars_;
};

struct EnvironmentHash {
  std::size_t operator()(const Environment& e) const { return e.hash(); }
};

/// Result of an environment union: nullopt is BOTTOM.
using EnvResult = std::optional<Environment>;
inline constexpr std::nullopt_t kBottom = std::nullopt;

/// Domain sizes and literal offsets: everything the algebra needs to know
/// about a choice space, without the names.
struct DomainLayout {
  std::vector<std::uint16_t> sizes;
  std::vector<std::uint16_t> offsets;

  std::size_t variable_count() const { return sizes.size(); }
  std::size_t literal(VarId v, OptId o) const { return offsets[v] + o; }
  std::size_t literal_count() const {
    return sizes.empty() ? 0 : offsets.back() + sizes.back();
  }
  friend bool operator==(const DomainLayout&, const DomainLayout&) = default;
};

class ChoiceSpace {
 public:
  VarId add_variable(std::string name, std::vector<std::string> options) {
    if (name.empty()) throw InvalidInput("choice variable name is empty");
    if (index_.count(name)) throw InvalidInput("duplicate choice variable '" + name + "'");
    if (options.empty()) throw InvalidInput("choice variable '" + name + "' has an empty domain");
    for (std::size_t i = 0; i < options.size(); ++i)
      for (std::size_t j = i + 1; j < options.size(); ++j)
        if (options[i] == options[j])
          throw InvalidInput("duplicate option '" + options[i] + "' in domain of '" + name + "'");
    if (names_.size() + 1 > kMaxVariables)
      throw CapacityExceeded("more than " + std::to_string(kMaxVariables) + " choice variables");
    const std::size_t offset = layout_.literal_count();
    if (offset + options.size() > kMaxLiterals)
      throw CapacityExceeded("more than " + std::to_string(kMaxLiterals) + " options in total");
    const auto id = static_cast<VarId>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    layout_.offsets.push_back(static_cast<std::uint16_t>(offset));
    layout_.sizes.push_back(static_cast<std::uint16_t>(options.size()));
    for (std::size_t o = 0; o < options.size(); ++o) literal_owner_.push_back({id, static_cast<OptId>(o)});
    options_.push_back(std::move(options));
    return id;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(VarId v) const { return names_.at(v); }
  const std::vector<std::string>& options(VarId v) const { return options_.at(v); }
  std::size_t domain_size(VarId v) const { return layout_.sizes.at(v); }
  const DomainLayout& layout() const { return layout_; }

  std::optional<VarId> find_variable(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<OptId> find_option(VarId v, std::string_view opt) const {
    const auto& opts = options_.at(v);
    for (std::size_t i = 0; i < opts.size(); ++i)
      if (opts[i] == opt) return static_cast<OptId>(i);
    return std::nullopt;
  }

  Assignment assignment_of_literal(std::size_t lit) const { return literal_owner_.at(lit); }

  void assign(Environment& e, VarId v, OptId o) const {
    if (v >= size()) throw InvalidInput("unknown choice variable id " + std::to_string(v));
    if (o >= domain_size(v))
      throw InvalidInput("option id " + std::to_string(o) + " out of range for '" + name(v) + "'");
    if (e.assigns(v)) throw InvalidInput("variable '" + name(v) + "' assigned twice");
    e.insert_literal(v, layout_.literal(v, o));
  }

  Environment environment(std::span<const Assignment> as) const {
    Environment e;
    for (const auto& a : as) assign(e, a.var, a.opt);
    return e;
  }

  /// Build from names, e.g. space.environment({{"x", "1"}, {"y", "2"}}).
  Environment environment(std::initializer_list<std::pair<std::string_view, std::string_view>> as) const {
    Environment e;
    for (const auto& [var, opt] : as) {
      auto v = find_variable(var);
      if (!v) throw InvalidInput("unknown choice variable '" + std::string(var) + "'");
      auto o = find_option(*v, opt);
      if (!o) throw InvalidInput("unknown option '" + std::string(opt) + "' for '" + std::string(var) + "'");
      assign(e, *v, *o);
    }
    return e;
  }

  std::vector<Assignment> assignments(const Environment& e) const {
    std::vector<Assignment> out;
    e.literal_bits().for_each([&](std::size_t lit) { out.push_back(assignment_of_literal(lit)); });
    return out;
  }

  /// Throws InvalidInput if `e` mentions anything outside this space.
  void validate(const Environment& e) const {
    if (e.highest_variable() >= static_cast<int>(size()) ||
        e.literal_bits().highest() >= static_cast<int>(layout_.literal_count()))
      throw InvalidInput("environment references a variable unknown to the choice space");
    e.literal_bits().for_each([&](std::size_t lit) {
      if (!e.assigns(literal_owner_[lit].var))
        throw InvalidInput("environment literal without matching variable");
    });
    if (e.literal_bits().count() != e.variable_bits().count())
      throw InvalidInput("environment assigns a variable twice");
  }

  std::string render(const Environment& e) const {
    std::string out = "{";
    bool first = true;
    e.literal_bits().for_each([&](std::size_t lit) {
      const auto a = assignment_of_literal(lit);
      if (!first) out += ", ";
      first = false;
      out += names_[a.var];
      out += '=';
      out += options_[a.var][a.opt];
    });
    out += '}';
    return out;
  }

  /// Product of domain sizes, saturating at UINT64_MAX.
  std::uint64_t complete_environment_count() const {
    std::uint64_t n = 1;
    for (auto s : layout_.sizes) {
      if (n > UINT64_MAX / s) return UINT64_MAX;
      n *= s;
    }
    return n;
  }

  friend bool operator==(const ChoiceSpace& a, const ChoiceSpace& b) {
    return a.names_ == b.names_ && a.options_ == b.options_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> options_;
  std::unordered_map<std::string, VarId> index_;
  DomainLayout layout_;
  std::vector<Assignment> literal_owner_;
};

/// Subsumption with validation of both sides against `space`.
inline bool subsumes(const ChoiceSpace& space, const Environment& e, const Environment& e2) {
  space.validate(e);
  space.validate(e2);
  return subsumes(e, e2);
}

/// Drop duplicates and every environment subsumed by another one in the list,
/// leaving the most general ones in canonical order.
inline void keep_most_general(std::vector<Environment>& envs) {
  std::sort(envs.begin(), envs.end(),
            [](const Environment& a, const Environment& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  envs.erase(std::unique(envs.begin(), envs.end()), envs.end());
  std::vector<Environment> kept;
  for (const auto& e : envs) {
    const bool covered =
        std::any_of(kept.begin(), kept.end(), [&](const Environment& k) { return subsumes(k, e); });
    if (!covered) kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  envs = std::move(kept);
}

/// One single-assignment environment per (variable of c, other option).
inline std::vector<Environment> constituent_kernels(const Environment& c, const DomainLayout& layout) {
  if (c.empty()) throw InvalidInput("constituent kernels of the empty environment do not exist");
  std::vector<Environment> out;
  c.variable_bits().for_each([&](std::size_t v) {
    if (v >= layout.variable_count()) throw InvalidInput("environment references an unknown variable");
    for (std::size_t o = 0; o < layout.sizes[v]; ++o) {
      const std::size_t lit = layout.literal(static_cast<VarId>(v), static_cast<OptId>(o));
      if (c.has_literal(lit)) continue;
      Environment k;
      k.insert_literal(static_cast<VarId>(v), lit);
      out.push_back(k);
    }
  });
  return out;
}

inline std::vector<Environment> constituent_kernels(const Environment& c, const ChoiceSpace& space) {
  space.validate(c);
  return constituent_kernels(c, space.layout());
}

/// Complete cache of minimal conflicts over a fixed choice space.
class ConflictDatabase {
 public:
  ConflictDatabase() = default;
  explicit ConflictDatabase(const ChoiceSpace& space) : layout_(space.layout()) { rebuild(); }
  explicit ConflictDatabase(DomainLayout layout) : layout_(std::move(layout)) { rebuild(); }

  const DomainLayout& layout() const { return layout_; }
  const std::vector<Environment>& conflicts() const { return conflicts_; }
  std::size_t size() const { return conflicts_.size(); }
  bool empty() const { return conflicts_.empty(); }

  /// True iff some stored conflict subsumes `e`.
  bool is_subsumed(const Environment& e) const {
    if (has_empty_) return true;
    for (const auto& c : conflicts_)
      if (subsumes(c, e)) return true;
    return false;
  }

  /// Returns true when the database changed.
  bool add(const Environment& c) {
    if (is_subsumed(c)) return false;
    std::erase_if(conflicts_, [&](const Environment& old) { return subsumes(c, old); });
    conflicts_.push_back(c);
    rebuild();
    return true;
  }

  bool some_complete_consistent() const { return consistent_extension_exists(Environment{}, {}); }

  /// Is there a complete environment that extends `base` and is subsumed by
  /// neither a stored conflict nor any of `extra`?
  bool consistent_extension_exists(const Environment& base, std::span<const Environment> extra = {}) const {
    if (has_empty_) return false;
    Buckets local;
    const Buckets* extra_buckets = nullptr;
    if (!extra.empty()) {
      local.resize(layout_.variable_count());
      for (const auto& c : extra) {
        if (c.empty()) return false;
        const int hv = c.highest_variable();
        if (hv >= static_cast<int>(layout_.variable_count()))
          throw InvalidInput("conflict references an unknown variable");
        local[static_cast<std::size_t>(hv)].push_back(c);
      }
      extra_buckets = &local;
    }
    if (layout_.variable_count() == 0) return true;
    Environment partial;
    return search(0, partial, base, extra_buckets);
  }

  /// Every complete environment not subsumed by a conflict. Throws
  /// CapacityExceeded when the domain product is above `cap`.
  std::vector<Environment> consistent_complete_environments(std::uint64_t cap = 4096) const {
    std::uint64_t total = 1;
    for (auto s : layout_.sizes) {
      if (total > cap / s + 1) throw CapacityExceeded("complete environment enumeration exceeds cap");
      total *= s;
    }
    if (total > cap)
      throw CapacityExceeded("complete environment count " + std::to_string(total) + " exceeds cap " +
                             std::to_string(cap));
    std::vector<Environment> out;
    for_each_complete(layout_, [&](const Environment& e) {
      if (!is_subsumed(e)) out.push_back(e);
    });
    return out;
  }

  /// Visit every complete environment in odometer order (last variable fastest).
  template <typename F>
  static void for_each_complete(const DomainLayout& layout, F&& f) {
    const std::size_t n = layout.variable_count();
    std::vector<OptId> digits(n, 0);
    while (true) {
      Environment e;
      for (std::size_t v = 0; v < n; ++v) e.insert_literal(static_cast<VarId>(v), layout.literal(static_cast<VarId>(v), digits[v]));
      f(e);
      std::size_t v = n;
      while (v > 0) {
        --v;
        if (++digits[v] < layout.sizes[v]) break;
        digits[v] = 0;
        if (v == 0) return;
      }
      if (n == 0) return;
    }
  }

 private:
  using Buckets = std::vector<std::vector<Environment>>;

  void rebuild() {
    has_empty_ = false;
    by_highest_.assign(layout_.variable_count(), {});
    for (const auto& c : conflicts_) {
      if (c.empty()) {
        has_empty_ = true;
        continue;
      }
      const int hv = c.highest_variable();
      if (hv >= static_cast<int>(layout_.variable_count()))
        throw InvalidInput("conflict references an unknown variable");
      by_highest_[static_cast<std::size_t>(hv)].push_back(c);
    }
  }

  static bool hits(const std::vector<Environment>& bucket, const Environment& partial) {
    for (const auto& c : bucket)
      if (subsumes(c, partial)) return true;
    return false;
  }

  // Depth-first over variables in index order; a conflict is tested as soon
  // as its highest variable has been assigned.
  bool search(std::size_t v, Environment& partial, const Environment& base, const Buckets* extra) const {
    const std::size_t n = layout_.variable_count();
    const auto var = static_cast<VarId>(v);
    for (std::size_t o = 0; o < layout_.sizes[v]; ++o) {
      const std::size_t lit = layout_.literal(var, static_cast<OptId>(o));
      if (base.assigns(var) && !base.has_literal(lit)) continue;
      Environment next = partial;
      next.insert_literal(var, lit);
      if (hits(by_highest_[v], next)) continue;
      if (extra && hits((*extra)[v], next)) continue;
      if (v + 1 == n) return true;
      if (search(v + 1, next, base, extra)) return true;
    }
    return false;
  }

  DomainLayout layout_;
  std::vector<Environment> conflicts_;
  Buckets by_highest_;
  bool has_empty_ = false;
};

/// Union of assignments; BOTTOM on contradiction or when a conflict subsumes
/// the merged environment.
inline EnvResult env_union(const Environment& e, const Environment& e2, const ConflictDatabase& db) {
  auto merged = Environment::merge(e, e2);
  if (!merged || db.is_subsumed(*merged)) return kBottom;
  return merged;
}

/// Minimal consistent environments that extend `e` and are not subsumed by
/// `c`: e joined with each constituent kernel of c.
inline std::vector<Environment> avoid(const Environment& e, const Environment& c, const ConflictDatabase& db) {
  if (c.empty()) return {};
  std::vector<Environment> out;
  for (const auto& k : constituent_kernels(c, db.layout())) {
    if (auto u = env_union(e, k, db)) out.push_back(*u);
  }
  keep_most_general(out);
  return out;
}

}  // namespace lstn

template <>
struct std::hash<lstn::Environment> {
  std::size_t operator()(const lstn::Environment& e) const noexcept { return e.hash(); }
};
