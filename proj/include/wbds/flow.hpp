#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wbds/digraph.hpp"

namespace wbds {

struct FlowArc {
  std::size_t from = 0;
  std::size_t to = 0;
  long capacity = 0;
  long flow = 0;
};

/// Bipartite max-flow network whose saturating flows are exactly the
/// C-regular assignments of a digraph. Node layout: source 0, u_i = 1 + i,
/// w_i = 1 + n + i, sink 2n + 1. Arc (u_i, w_j) carries a_ij - 1 (the unit
/// lower bound shifted out), so its capacity is C - 1; (s, u_i) has
/// capacity C - d_out(v_i) and (w_i, t) has capacity C - d_in(v_i).
struct FlowNetwork {
  std::size_t order = 0;  // vertices of the underlying digraph
  long c = 0;
  std::vector<FlowArc> arcs;
  /// For each arc: the digraph edge it models, or nullopt for s/t arcs.
  std::vector<std::optional<Edge>> edge_of_arc;

  std::size_t node_count() const noexcept { return 2 * order + 2; }
  std::size_t source() const noexcept { return 0; }
  std::size_t sink() const noexcept { return 2 * order + 1; }
  std::size_t u(Vertex v) const noexcept { return 1 + v; }
  std::size_t w(Vertex v) const noexcept { return 1 + order + v; }
  /// Sum of source-arc capacities.
  long required_flow() const;
};

/// Throws Error(c_too_small_for_degrees) unless c >= every out- and in-degree.
/// With diagonal_slack, each vertex also gets an arc (u_v, w_v) of capacity C
/// that pads its row and column on the diagonal.
FlowNetwork build_flow_network(const WeightedDigraph& g, long c, bool diagonal_slack = false);

struct FlowFeasibility {
  bool feasible = false;
  long max_flow = 0;
  long required = 0;
  /// C-regular integer assignment (a_ij = flow + 1) when feasible.
  std::optional<WeightedDigraph> assignment;
};

/// Solves the network centrally with Edmonds-Karp.
FlowFeasibility flow_feasibility_oracle(const WeightedDigraph& g, long c);

struct PaddedFeasibility {
  bool feasible = false;
  /// Weight-balanced integer assignment, all weights >= 1, weighted degrees <= C.
  std::optional<WeightedDigraph> assignment;
  /// C minus each vertex's weighted out-degree.
  std::vector<long> padding;
};

/// Whether g has a weight-balanced integer assignment with every weight >= 1
/// and every weighted degree <= c. Solved on the slack network.
PaddedFeasibility padded_flow_oracle(const WeightedDigraph& g, long c);

}  // namespace wbds
