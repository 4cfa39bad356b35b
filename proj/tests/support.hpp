#pragma once

// Small helpers shared by the test suites.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hyperbh/hypergraph.hpp"

namespace hyperbh::testing {

// Random hypergraph: m edges, orders drawn from `orders`, nodes uniform.
inline Hypergraph random_hypergraph(std::size_t n, std::size_t m, const std::vector<int>& orders, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_order(0, orders.size() - 1);
  std::uniform_int_distribution<Node> pick_node(0, static_cast<Node>(n - 1));
  std::vector<std::vector<Node>> edges;
  while (edges.size() < m) {
    const int k = orders[pick_order(rng)];
    std::set<Node> e;
    while (static_cast<int>(e.size()) < k) e.insert(pick_node(rng));
    edges.emplace_back(e.begin(), e.end());
  }
  return Hypergraph::from_edges(n, edges);
}

// True when a and b are equal up to a relabelling of the groups.
inline bool same_up_to_permutation(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [it1, f1] = ab.emplace(a[i], b[i]);
    auto [it2, f2] = ba.emplace(b[i], a[i]);
    if (it1->second != b[i] || it2->second != a[i]) return false;
  }
  return true;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace hyperbh::testing
