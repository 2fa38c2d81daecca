#include "wbds/characterization.hpp"

#include <algorithm>
#include <map>

#include "wbds/error.hpp"
#include "wbds/flow.hpp"

namespace wbds {

BalanceVerdict is_weight_balanced(const WeightedDigraph& g) {
  const auto profile = degree_profile(g);
  BalanceVerdict verdict;
  verdict.is_weight_balanced = std::all_of(profile.imbalance.begin(), profile.imbalance.end(),
                                           [](const Rational& w) { return sgn(w) == 0; });
  if (!verdict.is_weight_balanced) verdict.witness_imbalances = profile.imbalance;
  return verdict;
}

BalanceabilityVerdict is_weight_balanceable(const WeightedDigraph& g) {
  const auto report = classify_connectivity(g);
  BalanceabilityVerdict verdict;
  if (report.kind != Connectivity::neither) {
    verdict.balanceable = true;
    return verdict;
  }
  verdict.reason = BalanceabilityReason::edge_outside_cycle;
  for (const auto& e : g.edges()) {
    if (report.component_of[e.from] != report.component_of[e.to]) {
      verdict.witness = e;
      break;
    }
  }
  return verdict;
}

RationalMatrix normalize_rows(const RationalMatrix& a) {
  RationalMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational total = a.row_sum(i);
    if (sgn(total) <= 0) {
      throw Error(ErrorCode::zero_row, "row " + std::to_string(i) + " sums to zero");
    }
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = a(i, j) / total;
  }
  return out;
}

CRegularityVerdict is_c_regular(const WeightedDigraph& g) {
  const auto profile = degree_profile(g);
  CRegularityVerdict verdict;
  std::map<Rational, std::size_t> frequency;
  for (const auto& d : profile.out_weighted) ++frequency[d];
  std::size_t best = 0;
  for (const auto& [value, count] : frequency) {
    if (count > best) {
      best = count;
      verdict.c = value;
    }
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (profile.out_weighted[v] != verdict.c || profile.in_weighted[v] != verdict.c) {
      verdict.violating_vertices.push_back(v);
    }
  }
  verdict.is_c_regular =
      g.order() > 0 && sgn(verdict.c) > 0 && verdict.violating_vertices.empty();
  return verdict;
}

bool is_doubly_stochastic(const RationalMatrix& a) {
  if (a.size() == 0) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (sgn(a(i, j)) < 0) return false;
    }
    if (a.row_sum(i) != 1 || a.col_sum(i) != 1) return false;
  }
  return true;
}

const char* to_string(DsMethod m) noexcept {
  return m == DsMethod::cycle_cover ? "cycle_cover" : "flow";
}

namespace {

std::string describe(const std::vector<Vertex>& component) {
  std::string s = "{";
  for (std::size_t k = 0; k < component.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(component[k]);
  }
  return s + "}";
}

}  // namespace

DsVerdict is_doubly_stochasticable(const WeightedDigraph& g, DsMethod method,
                                   std::size_t max_component) {
  DsVerdict verdict;
  const auto report = classify_connectivity(g);
  if (report.kind == Connectivity::neither) {
    verdict.reason = "not strongly semiconnected";
    return verdict;
  }
  if (g.order() == 0 || has_isolated_vertex(g)) {
    verdict.reason = "has an isolated vertex";
    return verdict;
  }
  if (method == DsMethod::cycle_cover) {
    for (const auto& component : report.components) {
      if (component.size() > max_component) {
        throw Error(ErrorCode::method_size_exceeded,
                    "cycle_cover: component of size " + std::to_string(component.size()) +
                        " exceeds " + std::to_string(max_component));
      }
    }
  }

  WeightedDigraph certificate = g.with_unit_weights();
  for (const auto& component : report.components) {
    const WeightedDigraph sub = induced_subgraph(g, component).with_unit_weights();
    WeightedDigraph scaled(sub.order(), sub.allows_self_loops());
    if (method == DsMethod::cycle_cover) {
      // Doubly stochasticable iff every edge lies in some cycle cover; the
      // average of a covering family of cycle covers is the certificate.
      const auto covers = enumerate_disjoint_cycle_unions(sub, true, max_component);
      std::vector<const DisjointCycleUnion*> family;
      WeightedDigraph covered(sub.order(), sub.allows_self_loops());
      for (const auto& e : sub.edges()) {
        if (covered.has_edge(e.from, e.to)) continue;
        const auto it = std::find_if(covers.begin(), covers.end(), [&](const DisjointCycleUnion& u) {
          const auto edges = u.edges();
          return std::binary_search(edges.begin(), edges.end(), e);
        });
        if (it == covers.end()) {
          verdict.reason = "component " + describe(component) + ": edge " +
                           std::to_string(component[e.from]) + "->" +
                           std::to_string(component[e.to]) + " lies in no cycle cover";
          return verdict;
        }
        family.push_back(&*it);
        for (const auto& f : it->edges()) {
          if (!covered.has_edge(f.from, f.to)) covered.add_edge(f.from, f.to);
        }
      }
      const Rational share = make_rational(1, static_cast<long>(family.size()));
      for (const auto* member : family) {
        WeightedDigraph part(sub.order(), sub.allows_self_loops());
        for (const auto& e : member->edges()) part.add_edge(e.from, e.to, share);
        scaled = weighted_union(scaled, part);
      }
    } else {
      const long c = static_cast<long>(sub.edge_count()) - static_cast<long>(sub.order()) + 1;
      const auto flow = flow_feasibility_oracle(sub, c);
      if (!flow.feasible) {
        verdict.reason = "component " + describe(component) + " is not " + std::to_string(c) +
                         "-regularizable";
        return verdict;
      }
      scaled = *flow.assignment;
      const Rational inverse = make_rational(1, c);
      for (const auto& e : sub.edges()) {
        scaled.set_weight(e.from, e.to, scaled.weight(e.from, e.to) * inverse);
      }
    }
    for (const auto& e : scaled.edges()) {
      certificate.set_weight(component[e.from], component[e.to], scaled.weight(e.from, e.to));
    }
  }
  verdict.doubly_stochasticable = true;
  verdict.reason = "every strongly connected component admits a doubly stochastic assignment";
  verdict.certificate = std::move(certificate);
  return verdict;
}

WeightedDigraph c_regular_assignment_from_cycles(const WeightedDigraph& g, long c,
                                                 std::size_t max_n) {
  const auto cert = ds_cycle_set(g, max_n);
  if (!cert) {
    throw Error(ErrorCode::not_doubly_stochasticable,
                "c_regular_assignment_from_cycles: digraph is not doubly stochasticable");
  }
  const long members = static_cast<long>(cert->cardinality());
  if (c < members) {
    throw Error(ErrorCode::c_too_small, "C=" + std::to_string(c) + " is below ds(G)=" +
                                            std::to_string(members));
  }
  const long base = c / members;
  const long extra = c % members;
  WeightedDigraph out(g.order(), g.allows_self_loops());
  for (long k = 0; k < members; ++k) {
    const Rational lambda(base + (k < extra ? 1 : 0));
    WeightedDigraph part(g.order(), g.allows_self_loops());
    for (const auto& e : cert->members[static_cast<std::size_t>(k)].edges()) {
      part.add_edge(e.from, e.to, lambda);
    }
    out = weighted_union(out, part);
  }
  return out;
}

}  // namespace wbds
