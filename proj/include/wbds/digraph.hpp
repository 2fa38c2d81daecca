#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wbds/rational.hpp"

namespace wbds {

using Vertex = std::size_t;

struct Edge {
  Vertex from = 0;
  Vertex to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Weighted digraph on vertices 0..n-1 with one exact nonnegative weight per
/// ordered pair. Edges carry positive weight in every returned assignment;
/// zero-weight edges may exist only as transient protocol states.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  explicit WeightedDigraph(std::size_t n, bool allow_self_loops = false);

  /// Builds a digraph from an edge list with unit weights.
  static WeightedDigraph from_edges(std::size_t n, const std::vector<Edge>& edges,
                                    bool allow_self_loops = false);
  /// Support of the matrix becomes the edge set, entries become weights.
  /// Diagonal entries enable self-loops.
  static WeightedDigraph from_matrix(const RationalMatrix& a);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool allows_self_loops() const noexcept { return allow_self_loops_; }
  void enable_self_loops() noexcept { allow_self_loops_ = true; }

  /// Throws Error(duplicate_edge / invalid_graph / bad_weight).
  void add_edge(Vertex from, Vertex to, const Rational& weight = 1);
  /// The edge must already exist; negative weights are rejected.
  void set_weight(Vertex from, Vertex to, const Rational& weight);

  bool has_edge(Vertex from, Vertex to) const;
  const Rational& weight(Vertex from, Vertex to) const;

  /// Sorted lexicographically by (from, to).
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted ascending.
  const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_[v]; }
  const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_[v]; }

  Rational weighted_out_degree(Vertex v) const;
  Rational weighted_in_degree(Vertex v) const;
  Rational imbalance(Vertex v) const;

  RationalMatrix adjacency() const;

  /// Same edges, every weight set to 1.
  WeightedDigraph with_unit_weights() const;

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.weights_ == b.weights_;
  }

 private:
  void check_vertex(Vertex v) const;

  std::size_t n_ = 0;
  bool allow_self_loops_ = false;
  std::vector<Rational> weights_;  // dense n*n, zero where absent
  std::vector<char> present_;      // dense n*n
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

struct DegreeProfile {
  std::vector<Rational> out_weighted;
  std::vector<Rational> in_weighted;
  std::vector<Rational> imbalance;  // in - out
  std::vector<std::size_t> out_degree;
  std::vector<std::size_t> in_degree;
};

DegreeProfile degree_profile(const WeightedDigraph& g);

/// Adds every reversed edge with weight 1; existing edges keep their weight.
WeightedDigraph mirror(const WeightedDigraph& g);

/// Weights add on shared edges. The result has max(n1, n2) vertices.
WeightedDigraph weighted_union(const WeightedDigraph& a, const WeightedDigraph& b);

/// Subdigraph induced by `vertices`, re-indexed in the given order.
WeightedDigraph induced_subgraph(const WeightedDigraph& g,
                                 const std::vector<Vertex>& vertices);

enum class Connectivity { strongly_connected, strongly_semiconnected, neither };

const char* to_string(Connectivity c) noexcept;

struct ConnectivityReport {
  Connectivity kind = Connectivity::neither;
  /// Each component sorted ascending; components ordered by smallest vertex.
  std::vector<std::vector<Vertex>> components;
  /// component_of[v] indexes into components.
  std::vector<std::size_t> component_of;
};

ConnectivityReport classify_connectivity(const WeightedDigraph& g);

bool has_isolated_vertex(const WeightedDigraph& g);

}  // namespace wbds
