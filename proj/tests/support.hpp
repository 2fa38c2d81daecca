#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "wbds/cycles.hpp"
#include "wbds/digraph.hpp"
#include "wbds/rational.hpp"

namespace wbds::test {

inline WeightedDigraph fig1() {
  return WeightedDigraph::from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}});
}

inline WeightedDigraph fig2a() {
  return WeightedDigraph::from_edges(
      5, {{0, 1}, {1, 2}, {1, 3}, {2, 0}, {3, 0}, {3, 2}, {3, 4}, {4, 2}});
}

inline WeightedDigraph fig2b() {
  return WeightedDigraph::from_edges(
      5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 0}, {3, 4}, {4, 0}, {4, 3}});
}

inline WeightedDigraph fig6() {
  return WeightedDigraph::from_edges(5, {{0, 2}, {0, 4}, {1, 0}, {2, 1}, {2, 3}, {3, 4}, {4, 2}});
}

inline WeightedDigraph fig9() {
  return WeightedDigraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 3}, {3, 0}, {3, 2}});
}

inline WeightedDigraph triangle() {
  return WeightedDigraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
}

inline RationalMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> q;
  for (const auto& r : rows) {
    q.emplace_back();
    for (long x : r) q.back().emplace_back(x);
  }
  return RationalMatrix::from_rows(q);
}

inline RationalMatrix rational_matrix(const std::vector<std::vector<const char*>>& rows) {
  std::vector<std::vector<Rational>> q;
  for (const auto& r : rows) {
    q.emplace_back();
    for (const char* x : r) q.back().push_back(parse_rational(x));
  }
  return RationalMatrix::from_rows(q);
}

// Weight-balanced matrix on fig2b (row sums 2).
inline RationalMatrix two_regular_matrix() {
  return int_matrix({{0, 2, 0, 0, 0},
                     {0, 0, 2, 0, 0},
                     {0, 0, 0, 1, 1},
                     {1, 0, 0, 0, 1},
                     {1, 0, 0, 1, 0}});
}

// Transitive closure by Floyd-Warshall.
inline std::vector<std::vector<bool>> reachability(const WeightedDigraph& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (Vertex v = 0; v < n; ++v) r[v][v] = true;
  for (const auto& e : g.edges()) r[e.from][e.to] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

inline Connectivity brute_connectivity(const WeightedDigraph& g) {
  const auto r = reachability(g);
  bool strong = true;
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j) strong = strong && r[i][j];
  if (strong) return Connectivity::strongly_connected;
  for (const auto& e : g.edges()) {
    if (!r[e.to][e.from]) return Connectivity::neither;
  }
  return Connectivity::strongly_semiconnected;
}

// Every permutation sigma with (i, sigma(i)) an edge for all i; fixed points
// need self-loops. These are exactly the spanning cycle unions.
inline std::vector<std::vector<Vertex>> support_permutations(const WeightedDigraph& g) {
  std::vector<Vertex> sigma(g.order());
  std::iota(sigma.begin(), sigma.end(), Vertex{0});
  std::vector<std::vector<Vertex>> out;
  do {
    bool ok = true;
    for (Vertex i = 0; i < g.order() && ok; ++i) ok = g.has_edge(i, sigma[i]);
    if (ok) out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// Smallest number of support permutations covering every edge, by plain
// subset enumeration in increasing size.
inline std::optional<std::size_t> brute_ds(const WeightedDigraph& g) {
  const auto perms = support_permutations(g);
  const std::size_t m = perms.size();
  if (m == 0) return std::nullopt;
  auto covers = [&](const std::vector<std::size_t>& pick) {
    for (const auto& e : g.edges()) {
      bool hit = false;
      for (std::size_t p : pick) hit = hit || perms[p][e.from] == e.to;
      if (!hit) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= std::min(m, g.edge_count()); ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (;;) {
      if (covers(pick)) return k;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

// Partial permutations over the edge set: every element of C(G).
inline std::vector<std::set<Edge>> brute_cycle_unions(const WeightedDigraph& g) {
  std::vector<std::set<Edge>> out;
  const std::size_t n = g.order();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) subset.push_back(v);
    std::vector<Vertex> image = subset;
    do {
      bool ok = true;
      std::set<Edge> edges;
      for (std::size_t k = 0; k < subset.size() && ok; ++k) {
        ok = g.has_edge(subset[k], image[k]);
        edges.insert({subset[k], image[k]});
      }
      if (ok) out.push_back(std::move(edges));
    } while (std::next_permutation(image.begin(), image.end()));
  }
  return out;
}

inline std::size_t brute_principal(const WeightedDigraph& g) {
  const auto unions = brute_cycle_unions(g);
  const std::size_t m = unions.size();
  auto covers = [&](const std::vector<std::size_t>& pick) {
    for (const auto& e : g.edges()) {
      bool hit = false;
      for (std::size_t p : pick) hit = hit || unions[p].count(e) > 0;
      if (!hit) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (;;) {
      if (covers(pick)) return k;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return 0;
}

inline bool brute_hamiltonian(const WeightedDigraph& g) {
  const std::size_t n = g.order();
  if (n == 0) return false;
  if (n == 1) return g.has_edge(0, 0);
  std::vector<Vertex> rest(n - 1);
  std::iota(rest.begin(), rest.end(), Vertex{1});
  do {
    Vertex prev = 0;
    bool ok = true;
    for (Vertex v : rest) {
      ok = ok && g.has_edge(prev, v);
      prev = v;
    }
    if (ok && g.has_edge(prev, 0)) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

// Whether some integer assignment in [1, c] makes every row and column sum
// equal to c. Exhaustive over all assignments; tiny graphs only.
inline bool brute_c_regular_exists(const WeightedDigraph& g, long c) {
  const auto& edges = g.edges();
  std::vector<long> out(g.order(), 0), in(g.order(), 0);
  auto rec = [&](auto& self, std::size_t k) -> bool {
    if (k == edges.size()) {
      for (Vertex v = 0; v < g.order(); ++v)
        if (out[v] != c || in[v] != c) return false;
      return true;
    }
    for (long x = 1; x <= c; ++x) {
      out[edges[k].from] += x;
      in[edges[k].to] += x;
      const bool feasible = out[edges[k].from] <= c && in[edges[k].to] <= c;
      if (feasible && self(self, k + 1)) return true;
      out[edges[k].from] -= x;
      in[edges[k].to] -= x;
      if (!feasible) break;
    }
    return false;
  };
  return rec(rec, 0);
}

// All labeled digraphs on n vertices (no self-loops) from an edge bitmask.
inline WeightedDigraph from_mask(std::size_t n, std::uint64_t mask) {
  WeightedDigraph g(n);
  std::size_t bit = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) {
      if (i == j) continue;
      if (mask >> bit & 1) g.add_edge(i, j);
      ++bit;
    }
  return g;
}

}  // namespace wbds::test
