#pragma once

// Random structured plans: a tree of constraints over all events, extra
// forward constraints up to the requested ratio, and a sharing knob that
// decides how many of them hold in every component. Most bounds are drawn
// around a hidden reference schedule; the wild ones are not.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lstn/baseline.hpp"
#include "lstn/errors.hpp"
#include "lstn/plan.hpp"

namespace lstn {

struct GeneratorParams {
  std::size_t choices = 2;
  std::size_t arity = 2;
  std::size_t events = 6;
  double ratio = 1.5;  // constraints per event
  double weight_lo = 1;
  double weight_hi = 20;
  double sharing = 0.5;  // fraction of constraints labeled {}
  double wild = 0.1;     // fraction of labeled constraints not fitted to the reference schedule
  std::uint64_t seed = 1;
  int retries = 50;
};

inline void validate(const GeneratorParams& p) {
  if (p.events < 2) throw InvalidInput("event count must be at least 2");
  if (!(p.ratio > 0)) throw InvalidInput("constraint ratio must be positive");
  if (p.arity < 2) throw InvalidInput("arity must be at least 2");
  if (!(p.weight_lo >= 0) || !(p.weight_hi >= p.weight_lo)) throw InvalidInput("bad weight range");
  if (!(p.sharing >= 0 && p.sharing <= 1)) throw InvalidInput("sharing must be in [0, 1]");
  if (!(p.wild >= 0 && p.wild <= 1)) throw InvalidInput("wild must be in [0, 1]");
}

namespace detail {

inline LabeledSTN generate_once(const GeneratorParams& p, std::mt19937_64& rng) {
  LabeledSTN plan;
  for (std::size_t v = 0; v < p.choices; ++v) {
    std::vector<std::string> opts;
    for (std::size_t o = 0; o < p.arity; ++o) opts.push_back(std::string(1, static_cast<char>('a' + o)));
    plan.space.add_variable("c" + std::to_string(v), opts);
  }
  for (std::size_t i = 0; i < p.events; ++i) plan.add_event("E" + std::to_string(i));

  auto integer = [&](double lo, double hi) {
    return static_cast<double>(std::uniform_int_distribution<long long>(std::llround(lo), std::llround(hi))(rng));
  };
  const double span = p.weight_hi - p.weight_lo;
  std::uniform_real_distribution<double> unit(0, 1);

  // Reference schedule; fitted constraints contain its differences.
  std::vector<double> ref(p.events, 0);
  for (std::size_t j = 1; j < p.events; ++j) ref[j] = ref[j - 1] + integer(p.weight_lo, p.weight_hi);

  // Tree first, then extra edges between nearby events.
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (std::size_t j = 1; j < p.events; ++j) {
    const auto i = static_cast<VertexId>(integer(static_cast<double>(j >= 3 ? j - 3 : 0), static_cast<double>(j - 1)));
    ends.push_back({i, static_cast<VertexId>(j)});
  }
  const auto total = std::max<std::size_t>(ends.size(), static_cast<std::size_t>(std::llround(p.ratio * p.events)));
  while (ends.size() < total) {
    const auto j = static_cast<VertexId>(integer(1, static_cast<double>(p.events - 1)));
    const auto i = static_cast<VertexId>(integer(static_cast<double>(j >= 3 ? j - 3 : 0), static_cast<double>(j - 1)));
    ends.push_back({i, j});
  }

  const auto shared = static_cast<std::size_t>(std::llround(p.sharing * static_cast<double>(total)));
  std::size_t labeled = 0;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    LabeledConstraint c;
    c.from = ends[k].first;
    c.to = ends[k].second;
    const double hops = static_cast<double>(c.to - c.from);
    const bool fitted = k < shared || p.choices == 0 || unit(rng) >= p.wild;
    if (fitted) {
      const double gap = ref[c.to] - ref[c.from];
      c.lower = std::max(0.0, gap - integer(0, span / 2));
      c.upper = gap + integer(0, span / 2);
    } else {
      c.lower = integer(p.weight_lo * hops, (p.weight_lo + span / 2) * hops);
      c.upper = c.lower + integer(0, span * hops / 2);
    }
    if (k >= shared && p.choices > 0) {
      const auto var = static_cast<VarId>((labeled / p.arity) % p.choices);
      plan.space.assign(c.env, var, static_cast<OptId>(labeled % p.arity));
      ++labeled;
    }
    plan.constraints.push_back(c);
  }
  return plan;
}

}  // namespace detail

/// Deterministic in params.seed. Redraws while the {}-labeled part alone is inconsistent.
inline LabeledSTN generate(const GeneratorParams& p) {
  validate(p);
  std::mt19937_64 rng(p.seed);
  for (int attempt = 0; attempt <= p.retries; ++attempt) {
    LabeledSTN plan = detail::generate_once(p, rng);
    auto backbone = to_labeled_distance_graph(plan).project({});
    if (detail::fw_closure(backbone)) return plan;
  }
  throw Error("generator retry budget exhausted");
}

}  // namespace lstn
