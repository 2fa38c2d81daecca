#include "wbds/digraph.hpp"

#include <algorithm>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include "wbds/error.hpp"

namespace wbds {

namespace {

void insert_sorted(std::vector<Vertex>& list, Vertex v) {
  list.insert(std::upper_bound(list.begin(), list.end(), v), v);
}

std::string edge_name(Vertex from, Vertex to) {
  return "(" + std::to_string(from) + "," + std::to_string(to) + ")";
}

}  // namespace

WeightedDigraph::WeightedDigraph(std::size_t n, bool allow_self_loops)
    : n_(n),
      allow_self_loops_(allow_self_loops),
      weights_(n * n),
      present_(n * n, 0),
      out_(n),
      in_(n) {}

WeightedDigraph WeightedDigraph::from_edges(std::size_t n,
                                            const std::vector<Edge>& edges,
                                            bool allow_self_loops) {
  WeightedDigraph g(n, allow_self_loops);
  for (const auto& e : edges) g.add_edge(e.from, e.to);
  return g;
}

WeightedDigraph WeightedDigraph::from_matrix(const RationalMatrix& a) {
  WeightedDigraph g(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      if (i == j) g.enable_self_loops();
      g.add_edge(i, j, a(i, j));
    }
  }
  return g;
}

void WeightedDigraph::check_vertex(Vertex v) const {
  if (v >= n_) {
    throw Error(ErrorCode::invalid_graph,
                "vertex " + std::to_string(v) + " out of range for n=" +
                    std::to_string(n_));
  }
}

void WeightedDigraph::add_edge(Vertex from, Vertex to, const Rational& weight) {
  check_vertex(from);
  check_vertex(to);
  if (from == to && !allow_self_loops_) {
    throw Error(ErrorCode::invalid_graph,
                "self-loop " + edge_name(from, to) + " while self-loops are disabled");
  }
  if (sgn(weight) < 0) {
    throw Error(ErrorCode::bad_weight, "negative weight on " + edge_name(from, to));
  }
  const std::size_t k = from * n_ + to;
  if (present_[k]) {
    throw Error(ErrorCode::duplicate_edge, "duplicate edge " + edge_name(from, to));
  }
  present_[k] = 1;
  weights_[k] = weight;
  const Edge e{from, to};
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
  insert_sorted(out_[from], to);
  insert_sorted(in_[to], from);
}

void WeightedDigraph::set_weight(Vertex from, Vertex to, const Rational& weight) {
  if (!has_edge(from, to)) {
    throw Error(ErrorCode::invalid_graph, "no edge " + edge_name(from, to));
  }
  if (sgn(weight) < 0) {
    throw Error(ErrorCode::bad_weight, "negative weight on " + edge_name(from, to));
  }
  weights_[from * n_ + to] = weight;
}

bool WeightedDigraph::has_edge(Vertex from, Vertex to) const {
  return from < n_ && to < n_ && present_[from * n_ + to];
}

const Rational& WeightedDigraph::weight(Vertex from, Vertex to) const {
  if (!has_edge(from, to)) {
    throw Error(ErrorCode::invalid_graph, "no edge " + edge_name(from, to));
  }
  return weights_[from * n_ + to];
}

Rational WeightedDigraph::weighted_out_degree(Vertex v) const {
  Rational s = 0;
  for (Vertex j : out_[v]) s += weights_[v * n_ + j];
  return s;
}

Rational WeightedDigraph::weighted_in_degree(Vertex v) const {
  Rational s = 0;
  for (Vertex i : in_[v]) s += weights_[i * n_ + v];
  return s;
}

Rational WeightedDigraph::imbalance(Vertex v) const {
  return weighted_in_degree(v) - weighted_out_degree(v);
}

RationalMatrix WeightedDigraph::adjacency() const {
  RationalMatrix a(n_);
  for (const auto& e : edges_) a(e.from, e.to) = weights_[e.from * n_ + e.to];
  return a;
}

WeightedDigraph WeightedDigraph::with_unit_weights() const {
  WeightedDigraph g = *this;
  for (const auto& e : edges_) g.weights_[e.from * n_ + e.to] = 1;
  return g;
}

DegreeProfile degree_profile(const WeightedDigraph& g) {
  const std::size_t n = g.order();
  DegreeProfile p;
  p.out_weighted.assign(n, 0);
  p.in_weighted.assign(n, 0);
  p.imbalance.resize(n);
  p.out_degree.assign(n, 0);
  p.in_degree.assign(n, 0);
  for (const auto& e : g.edges()) {
    const Rational& w = g.weight(e.from, e.to);
    p.out_weighted[e.from] += w;
    p.in_weighted[e.to] += w;
    ++p.out_degree[e.from];
    ++p.in_degree[e.to];
  }
  for (std::size_t v = 0; v < n; ++v) p.imbalance[v] = p.in_weighted[v] - p.out_weighted[v];
  return p;
}

WeightedDigraph mirror(const WeightedDigraph& g) {
  WeightedDigraph m = g;
  for (const auto& e : g.edges()) {
    if (!m.has_edge(e.to, e.from)) m.add_edge(e.to, e.from, 1);
  }
  return m;
}

WeightedDigraph weighted_union(const WeightedDigraph& a, const WeightedDigraph& b) {
  WeightedDigraph u(std::max(a.order(), b.order()),
                    a.allows_self_loops() || b.allows_self_loops());
  for (const auto* g : {&a, &b}) {
    for (const auto& e : g->edges()) {
      const Rational& w = g->weight(e.from, e.to);
      if (u.has_edge(e.from, e.to)) {
        u.set_weight(e.from, e.to, u.weight(e.from, e.to) + w);
      } else {
        u.add_edge(e.from, e.to, w);
      }
    }
  }
  return u;
}

WeightedDigraph induced_subgraph(const WeightedDigraph& g,
                                 const std::vector<Vertex>& vertices) {
  std::vector<std::size_t> index(g.order(), g.order());
  for (std::size_t k = 0; k < vertices.size(); ++k) index[vertices[k]] = k;
  WeightedDigraph sub(vertices.size(), g.allows_self_loops());
  for (const auto& e : g.edges()) {
    if (index[e.from] == g.order() || index[e.to] == g.order()) continue;
    sub.add_edge(index[e.from], index[e.to], g.weight(e.from, e.to));
  }
  return sub;
}

const char* to_string(Connectivity c) noexcept {
  switch (c) {
    case Connectivity::strongly_connected: return "strongly_connected";
    case Connectivity::strongly_semiconnected: return "strongly_semiconnected";
    case Connectivity::neither: return "neither";
  }
  return "neither";
}

ConnectivityReport classify_connectivity(const WeightedDigraph& g) {
  using BoostGraph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  const std::size_t n = g.order();
  BoostGraph bg(n);
  for (const auto& e : g.edges()) boost::add_edge(e.from, e.to, bg);

  std::vector<int> raw(n, 0);
  const int count = n == 0 ? 0 : boost::strong_components(bg, raw.data());

  // Renumber components by their smallest vertex.
  ConnectivityReport report;
  report.component_of.assign(n, 0);
  std::vector<int> renumber(static_cast<std::size_t>(count), -1);
  for (Vertex v = 0; v < n; ++v) {
    auto& slot = renumber[static_cast<std::size_t>(raw[v])];
    if (slot < 0) {
      slot = static_cast<int>(report.components.size());
      report.components.emplace_back();
    }
    report.component_of[v] = static_cast<std::size_t>(slot);
    report.components[static_cast<std::size_t>(slot)].push_back(v);
  }

  if (report.components.size() <= 1) {
    report.kind = Connectivity::strongly_connected;
    return report;
  }
  const bool crossing = std::any_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return report.component_of[e.from] != report.component_of[e.to];
  });
  report.kind = crossing ? Connectivity::neither : Connectivity::strongly_semiconnected;
  return report;
}

bool has_isolated_vertex(const WeightedDigraph& g) {
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.out_neighbors(v).empty() && g.in_neighbors(v).empty()) return true;
  }
  return false;
}

}  // namespace wbds
