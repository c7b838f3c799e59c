#pragma once

#include <random>
#include <string>
#include <vector>

#include "flexgraph/instance.hpp"
#include "flexgraph/io.hpp"

namespace flexgraph::testing {

inline std::string data_path(const std::string& name) {
  return std::string(FLEXGRAPH_TEST_DATA) + "/" + name;
}

inline ProblemInstance fixture(const std::string& name) { return read_instance(data_path(name)); }

inline std::vector<Rational> ints(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

/// Feasible by construction: rates are the row and column sums of a random
/// nonnegative integer matrix; E is its support plus some extra edges, which
/// are often redundant.
inline ProblemInstance random_feasible(std::mt19937_64& rng, int max_side, int max_entry = 3) {
  std::uniform_int_distribution<int> side(1, max_side);
  const int m = side(rng);
  const int n = side(rng);
  std::uniform_int_distribution<int> entry(0, max_entry);
  std::bernoulli_distribution keep(0.35);
  std::bernoulli_distribution extra(0.2);
  std::vector<std::vector<int>> x(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (auto& row : x) {
    for (auto& v : row) v = keep(rng) ? entry(rng) : 0;
  }
  // Every row and column gets at least one positive entry.
  std::uniform_int_distribution<int> pick_j(0, n - 1);
  std::uniform_int_distribution<int> pick_i(0, m - 1);
  std::uniform_int_distribution<int> positive(1, std::max(1, max_entry));
  for (int i = 0; i < m; ++i) {
    bool any = false;
    for (int v : x[static_cast<std::size_t>(i)]) any = any || v > 0;
    if (!any) x[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick_j(rng))] = positive(rng);
  }
  for (int j = 0; j < n; ++j) {
    bool any = false;
    for (int i = 0; i < m; ++i) any = any || x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0;
    if (!any) x[static_cast<std::size_t>(pick_i(rng))][static_cast<std::size_t>(j)] = positive(rng);
  }
  std::vector<Rational> nu(static_cast<std::size_t>(m));
  std::vector<Rational> mu(static_cast<std::size_t>(n));
  EdgeSet edges;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int v = x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      nu[static_cast<std::size_t>(i)] += v;
      mu[static_cast<std::size_t>(j)] += v;
      if (v > 0 || extra(rng)) edges.insert(Edge{i + 1, j + 1});
    }
  }
  return ProblemInstance::create(nu, mu, edges);
}

/// Balanced positive integer rates with entries in [1, max_entry].
inline std::pair<std::vector<Rational>, std::vector<Rational>> random_rates(std::mt19937_64& rng,
                                                                            int max_side,
                                                                            int max_entry = 4) {
  std::uniform_int_distribution<int> side(1, max_side);
  std::uniform_int_distribution<int> entry(1, max_entry);
  for (;;) {
    const int m = side(rng);
    const int n = side(rng);
    std::vector<int> nu(static_cast<std::size_t>(m));
    int total = 0;
    for (auto& v : nu) total += (v = entry(rng));
    if (total < n || total > n * max_entry) continue;
    std::vector<int> mu(static_cast<std::size_t>(n), 1);
    int left = total - n;
    std::uniform_int_distribution<int> slot(0, n - 1);
    while (left > 0) {
      auto& v = mu[static_cast<std::size_t>(slot(rng))];
      if (v < max_entry) {
        ++v;
        --left;
      }
    }
    std::vector<Rational> a(nu.begin(), nu.end());
    std::vector<Rational> b(mu.begin(), mu.end());
    return {a, b};
  }
}

}  // namespace flexgraph::testing
