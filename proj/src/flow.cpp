#include "wbds/flow.hpp"

#include <algorithm>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

#include "wbds/error.hpp"

namespace wbds {

long FlowNetwork::required_flow() const {
  long total = 0;
  for (const auto& arc : arcs) {
    if (arc.from == source()) total += arc.capacity;
  }
  return total;
}

FlowNetwork build_flow_network(const WeightedDigraph& g, long c, bool diagonal_slack) {
  const auto profile = degree_profile(g);
  const std::size_t n = g.order();
  for (Vertex v = 0; v < n; ++v) {
    if (static_cast<long>(profile.out_degree[v]) > c ||
        static_cast<long>(profile.in_degree[v]) > c) {
      throw Error(ErrorCode::c_too_small_for_degrees,
                  "C=" + std::to_string(c) + " is below the degree of vertex " +
                      std::to_string(v));
    }
  }
  FlowNetwork net;
  net.order = n;
  net.c = c;
  for (Vertex v = 0; v < n; ++v) {
    net.arcs.push_back({net.source(), net.u(v), c - static_cast<long>(profile.out_degree[v]), 0});
    net.edge_of_arc.push_back(std::nullopt);
  }
  for (const auto& e : g.edges()) {
    net.arcs.push_back({net.u(e.from), net.w(e.to), c - 1, 0});
    net.edge_of_arc.push_back(e);
  }
  for (Vertex v = 0; v < n; ++v) {
    net.arcs.push_back({net.w(v), net.sink(), c - static_cast<long>(profile.in_degree[v]), 0});
    net.edge_of_arc.push_back(std::nullopt);
  }
  if (diagonal_slack) {
    for (Vertex v = 0; v < n; ++v) {
      net.arcs.push_back({net.u(v), net.w(v), c, 0});
      net.edge_of_arc.push_back(std::nullopt);
    }
  }
  return net;
}

namespace {

// Edmonds-Karp on the network; fills in arc flows and returns the flow value.
long solve(FlowNetwork& net) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, long,
                      boost::property<boost::edge_residual_capacity_t, long,
                                      boost::property<boost::edge_reverse_t,
                                                      Traits::edge_descriptor>>>>;
  Graph bg(net.node_count());
  auto capacity = boost::get(boost::edge_capacity, bg);
  auto residual = boost::get(boost::edge_residual_capacity, bg);
  auto reverse = boost::get(boost::edge_reverse, bg);

  std::vector<Traits::edge_descriptor> forward;
  forward.reserve(net.arcs.size());
  for (const auto& arc : net.arcs) {
    auto fwd = boost::add_edge(arc.from, arc.to, bg).first;
    auto back = boost::add_edge(arc.to, arc.from, bg).first;
    capacity[fwd] = arc.capacity;
    capacity[back] = 0;
    reverse[fwd] = back;
    reverse[back] = fwd;
    forward.push_back(fwd);
  }
  const long value = boost::edmonds_karp_max_flow(bg, net.source(), net.sink());
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    net.arcs[k].flow = capacity[forward[k]] - residual[forward[k]];
  }
  return value;
}

WeightedDigraph assignment_from(const WeightedDigraph& g, const FlowNetwork& net) {
  WeightedDigraph a = g.with_unit_weights();
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    if (const auto& e = net.edge_of_arc[k]) {
      a.set_weight(e->from, e->to, Rational(net.arcs[k].flow + 1));
    }
  }
  return a;
}

}  // namespace

FlowFeasibility flow_feasibility_oracle(const WeightedDigraph& g, long c) {
  FlowNetwork net = build_flow_network(g, c);
  FlowFeasibility result;
  result.required = net.required_flow();
  result.max_flow = solve(net);
  // Source and sink capacities both total n*C - |E|, so saturating the
  // source arcs saturates the sink arcs too.
  result.feasible = result.max_flow == result.required;
  if (result.feasible) result.assignment = assignment_from(g, net);
  return result;
}

PaddedFeasibility padded_flow_oracle(const WeightedDigraph& g, long c) {
  FlowNetwork net = build_flow_network(g, c, true);
  PaddedFeasibility result;
  result.feasible = solve(net) == net.required_flow();
  if (!result.feasible) return result;
  result.assignment = assignment_from(g, net);
  result.padding.assign(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    const Rational slack = Rational(c) - result.assignment->weighted_out_degree(v);
    result.padding[v] = slack.get_num().get_si();
  }
  return result;
}

}  // namespace wbds
