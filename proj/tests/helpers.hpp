#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lstn/environment.hpp"
#include "lstn/plan.hpp"

namespace lstn::testing {

inline ChoiceSpace binary_space(std::size_t n, const std::vector<std::string>& names = {}) {
  ChoiceSpace s;
  static const char* defaults[] = {"x", "y", "z", "w", "v", "u", "t", "s", "r", "q", "p", "o"};
  for (std::size_t i = 0; i < n; ++i)
    s.add_variable(i < names.size() ? names[i] : (i < 12 ? defaults[i] : "v" + std::to_string(i)), {"1", "2"});
  return s;
}

/// A random partial assignment; each variable is left free with probability 1/2.
inline Environment random_env(const ChoiceSpace& s, std::mt19937& rng, double free_p = 0.5) {
  Environment e;
  std::uniform_real_distribution<double> coin(0, 1);
  for (VarId v = 0; v < s.size(); ++v) {
    if (coin(rng) < free_p) continue;
    std::uniform_int_distribution<int> opt(0, static_cast<int>(s.domain_size(v)) - 1);
    s.assign(e, v, static_cast<OptId>(opt(rng)));
  }
  return e;
}

inline std::vector<Environment> all_complete(const ChoiceSpace& s) {
  std::vector<Environment> out;
  ConflictDatabase::for_each_complete(s.layout(), [&](const Environment& e) { out.push_back(e); });
  return out;
}

/// Every partial environment, including {}.
inline std::vector<Environment> all_partial(const ChoiceSpace& s) {
  std::vector<Environment> out{Environment{}};
  for (VarId v = 0; v < s.size(); ++v) {
    std::vector<Environment> next = out;
    for (const auto& e : out)
      for (OptId o = 0; o < s.domain_size(v); ++o) {
        Environment f = e;
        s.assign(f, v, o);
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

using Matrix = std::vector<std::vector<double>>;

/// Classical Bellman-Ford; nullopt when a negative cycle is reachable from s.
inline std::optional<std::vector<double>> classical_bellman_ford(const Matrix& w, std::size_t s) {
  const std::size_t n = w.size();
  std::vector<double> d(n, kInf);
  d[s] = 0;
  for (std::size_t round = 0; round + 1 < n; ++round)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (d[u] + w[u][v] < d[v]) d[v] = d[u] + w[u][v];
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (d[u] + w[u][v] < d[v]) return std::nullopt;
  return d;
}

/// Floyd-Warshall; nullopt on a negative cycle.
inline std::optional<Matrix> floyd_warshall(Matrix w) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) w[i][i] = std::min(w[i][i], 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (w[i][k] + w[k][j] < w[i][j]) w[i][j] = w[i][k] + w[k][j];
  for (std::size_t i = 0; i < n; ++i)
    if (w[i][i] < 0) return std::nullopt;
  return w;
}

/// Projection of the plan's constraints under a complete environment.
inline Matrix project_plan(const LabeledSTN& plan, const Environment& e) {
  const std::size_t n = plan.event_count();
  Matrix m(n, std::vector<double>(n, kInf));
  for (const auto& c : plan.constraints) {
    if (!subsumes(c.env, e)) continue;
    m[c.from][c.to] = std::min(m[c.from][c.to], c.upper);
    m[c.to][c.from] = std::min(m[c.to][c.from], -c.lower);
  }
  return m;
}

/// Small random labeled plan: a {}-labeled chain plus random labeled constraints.
inline LabeledSTN random_plan(std::mt19937& rng, std::size_t events, std::size_t vars, std::size_t extra,
                              int lo = -5, int hi = 20, double free_p = 0.5) {
  LabeledSTN plan;
  plan.space = binary_space(vars);
  for (std::size_t i = 0; i < events; ++i) plan.add_event("e" + std::to_string(i));
  std::uniform_int_distribution<int> wd(lo, hi);
  for (std::size_t i = 0; i + 1 < events; ++i) {
    const int a = std::uniform_int_distribution<int>(0, 5)(rng);
    plan.add_constraint({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), static_cast<double>(a),
                         static_cast<double>(a + std::uniform_int_distribution<int>(0, 15)(rng)), {}});
  }
  std::uniform_int_distribution<std::size_t> ev(0, events - 1);
  for (std::size_t k = 0; k < extra; ++k) {
    VertexId a = static_cast<VertexId>(ev(rng)), b = static_cast<VertexId>(ev(rng));
    if (a == b) continue;
    int l = wd(rng), u = l + std::uniform_int_distribution<int>(0, 12)(rng);
    double lower = rng() % 5 == 0 ? -kInf : l;
    double upper = rng() % 5 == 0 ? kInf : u;
    plan.add_constraint({a, b, lower, upper, random_env(plan.space, rng, free_p)});
  }
  return plan;
}

}  // namespace lstn::testing
