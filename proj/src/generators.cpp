#include "wbds/generators.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace wbds {

long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

WeightedDigraph random_strongly_connected(std::size_t n, double p, Rng& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  WeightedDigraph g(n);
  if (n < 2) return g;
  for (std::size_t k = 0; k < n; ++k) g.add_edge(order[k], order[(k + 1) % n]);
  std::bernoulli_distribution extra(p);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (i != j && !g.has_edge(i, j) && extra(rng)) g.add_edge(i, j);
    }
  }
  return g;
}

WeightedDigraph with_random_weights(const WeightedDigraph& g, long max_weight, Rng& rng) {
  WeightedDigraph out = g;
  for (const auto& e : g.edges()) out.set_weight(e.from, e.to, Rational(uniform_int(rng, 1, max_weight)));
  return out;
}

}  // namespace wbds
