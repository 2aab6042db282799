#pragma once

// Test-only oracles, independent of the library's BFS and solver paths.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pisdim/pis_graph.hpp"

namespace pisdim::testing {

// Floyd-Warshall on the adjacency predicate; -1 for unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const auto n = g.order();
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (g.adjacent(u, v)) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= kInf) x = -1;
  return d;
}

// Random connected graph: a random spanning tree plus each remaining pair
// independently with probability p.
inline Graph random_connected_graph(std::mt19937_64& rng, std::size_t n, double p) {
  Graph g(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    g.add_edge(perm[i], perm[pick(rng)]);
  }
  std::bernoulli_distribution coin(p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v) && coin(rng)) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// All nondecreasing count lists with entries in [lo, hi], product <= max_product.
inline std::vector<std::vector<int>> count_multisets(int lo, int hi, std::uint64_t max_product,
                                                     std::size_t max_arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from, std::uint64_t prod) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_arity) return;
    for (int c = from; c <= hi; ++c) {
      if (prod * static_cast<std::uint64_t>(c) > max_product) break;
      cur.push_back(c);
      self(self, c, prod * static_cast<std::uint64_t>(c));
      cur.pop_back();
    }
  };
  rec(rec, lo, 1);
  return out;
}

}  // namespace pisdim::testing
