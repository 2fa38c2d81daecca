#include "wbds/cycles.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "wbds/error.hpp"
#include "wbds/flow.hpp"

namespace wbds {

namespace {

void require_order(const WeightedDigraph& g, std::size_t max_n, const char* what) {
  if (g.order() > max_n) {
    throw Error(ErrorCode::graph_too_large,
                std::string(what) + ": n=" + std::to_string(g.order()) +
                    " exceeds the cap of " + std::to_string(max_n));
  }
}

}  // namespace

std::vector<Edge> Cycle::edges() const {
  std::vector<Edge> out;
  out.reserve(vertices.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    out.push_back({vertices[k], vertices[(k + 1) % vertices.size()]});
  }
  return out;
}

bool Cycle::contains(Vertex v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

Cycle make_cycle(std::vector<Vertex> vertices) {
  if (!vertices.empty()) {
    std::rotate(vertices.begin(), std::min_element(vertices.begin(), vertices.end()),
                vertices.end());
  }
  return Cycle{std::move(vertices)};
}

std::vector<Edge> DisjointCycleUnion::edges() const {
  std::vector<Edge> out;
  for (const auto& c : cycles) {
    const auto ce = c.edges();
    out.insert(out.end(), ce.begin(), ce.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> DisjointCycleUnion::vertices() const {
  std::vector<Vertex> out;
  for (const auto& c : cycles) out.insert(out.end(), c.vertices.begin(), c.vertices.end());
  std::sort(out.begin(), out.end());
  return out;
}

DisjointCycleUnion make_union(std::vector<Cycle> cycles, std::size_t n) {
  std::sort(cycles.begin(), cycles.end());
  DisjointCycleUnion u{std::move(cycles), false};
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& c : u.cycles) {
    for (Vertex v : c.vertices) {
      if (v >= n || seen[v]) {
        throw Error(ErrorCode::invalid_graph, "cycles are not vertex-disjoint");
      }
      seen[v] = 1;
      ++covered;
    }
  }
  u.spanning = covered == n && n > 0;
  return u;
}

std::vector<Cycle> enumerate_cycles(const WeightedDigraph& g, std::size_t max_n) {
  require_order(g, max_n, "enumerate_cycles");
  const std::size_t n = g.order();
  std::vector<Cycle> cycles;
  std::vector<Vertex> path;
  std::vector<char> on_path(n, 0);

  // Paths from `start` through larger vertices only; each cycle is found once,
  // from its smallest vertex.
  auto extend = [&](auto&& self, Vertex start, Vertex v) -> void {
    for (Vertex w : g.out_neighbors(v)) {
      if (w == start) {
        cycles.push_back(Cycle{path});
      } else if (w > start && !on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = 1;
    extend(extend, s, s);
    on_path[s] = 0;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

std::vector<DisjointCycleUnion> enumerate_disjoint_cycle_unions(const WeightedDigraph& g,
                                                                bool spanning_only,
                                                                std::size_t max_n) {
  require_order(g, max_n, "enumerate_disjoint_cycle_unions");
  const std::size_t n = g.order();
  const auto cycles = enumerate_cycles(g, max_n);
  std::vector<std::vector<std::size_t>> starting_at(n);
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    starting_at[cycles[k].vertices.front()].push_back(k);
  }

  std::vector<DisjointCycleUnion> result;
  std::vector<char> used(n, 0);
  std::vector<Cycle> chosen;

  // Decide vertices in increasing order: a free vertex is either left
  // uncovered or covered by a cycle whose smallest vertex it is.
  auto visit = [&](auto&& self, Vertex v) -> void {
    if (v == n) {
      if (!chosen.empty()) result.push_back(make_union(chosen, n));
      return;
    }
    if (used[v]) {
      self(self, v + 1);
      return;
    }
    if (!spanning_only) self(self, v + 1);
    for (std::size_t k : starting_at[v]) {
      const Cycle& c = cycles[k];
      if (std::any_of(c.vertices.begin(), c.vertices.end(),
                      [&](Vertex w) { return used[w] != 0; })) {
        continue;
      }
      for (Vertex w : c.vertices) used[w] = 1;
      chosen.push_back(c);
      self(self, v + 1);
      chosen.pop_back();
      for (Vertex w : c.vertices) used[w] = 0;
    }
  };
  visit(visit, 0);
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

std::size_t max_degree(const WeightedDigraph& g) {
  const auto profile = degree_profile(g);
  std::size_t best = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    best = std::max({best, profile.out_degree[v], profile.in_degree[v]});
  }
  return best;
}

// Smallest k in [lo, hi] with feasible(k), given feasible(hi). Feasibility is
// monotone: adding one member to a cover keeps it a cover.
template <typename Feasible>
long smallest_feasible(long lo, long hi, Feasible&& feasible) {
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

// Splits an integer matrix with every row and column sum k into its Birkhoff
// terms. At the minimum k each term has coefficient 1/k, so there are exactly
// k of them; each becomes a cycle union of g once padding fixed points are
// dropped.
CycleSetCertificate split_regular(CycleSetKind kind, const RationalMatrix& a, long k,
                                  const WeightedDigraph& g) {
  const Rational scale = make_rational(1, k);
  CycleSetCertificate cert;
  cert.kind = kind;
  for (const auto& term : birkhoff_decompose(scale * a)) {
    if (term.coefficient != scale) {
      throw std::logic_error("cycle set: decomposition is not minimal");
    }
    std::vector<Cycle> cycles;
    for (auto& c : permutation_to_union(term.permutation).cycles) {
      if (c.vertices.size() == 1 && !g.has_edge(c.vertices[0], c.vertices[0])) continue;
      cycles.push_back(std::move(c));
    }
    if (cycles.empty()) throw std::logic_error("cycle set: empty member");
    cert.members.push_back(make_union(std::move(cycles), g.order()));
  }
  std::sort(cert.members.begin(), cert.members.end());
  return cert;
}

}  // namespace

// p(G) is the least k admitting a weight-balanced integer assignment with all
// weights >= 1 and weighted degrees <= k: padding the diagonal up to k gives a
// k-regular matrix, and its Birkhoff terms are the cover.
CycleSetCertificate principal_cycle_set(const WeightedDigraph& g, std::size_t max_n) {
  require_order(g, max_n, "principal_cycle_set");
  if (classify_connectivity(g).kind == Connectivity::neither) {
    throw Error(ErrorCode::not_semiconnected, "principal_cycle_set: digraph is not "
                                              "strongly semiconnected");
  }
  if (g.edge_count() == 0) return CycleSetCertificate{CycleSetKind::principal, {}};
  const long hi = static_cast<long>(g.edge_count());
  const long k = smallest_feasible(static_cast<long>(max_degree(g)), hi,
                                   [&](long c) { return padded_flow_oracle(g, c).feasible; });
  const auto solution = padded_flow_oracle(g, k);
  RationalMatrix a = solution.assignment->adjacency();
  for (Vertex v = 0; v < g.order(); ++v) a(v, v) += solution.padding[v];
  return split_regular(CycleSetKind::principal, a, k, g);
}

// ds(G) is the least C for which a C-regular integer assignment exists; its
// Birkhoff terms are C distinct spanning unions.
std::optional<CycleSetCertificate> ds_cycle_set(const WeightedDigraph& g, std::size_t max_n) {
  require_order(g, max_n, "ds_cycle_set");
  if (classify_connectivity(g).kind != Connectivity::strongly_connected) {
    throw Error(ErrorCode::not_strongly_connected,
                "ds_cycle_set: digraph is not strongly connected");
  }
  const long lo = std::max<long>(1, static_cast<long>(max_degree(g)));
  const long hi = std::max(lo, static_cast<long>(g.edge_count()) - static_cast<long>(g.order()) + 1);
  if (!flow_feasibility_oracle(g, hi).feasible) return std::nullopt;
  const long c = smallest_feasible(lo, hi, [&](long k) { return flow_feasibility_oracle(g, k).feasible; });
  return split_regular(CycleSetKind::ds, flow_feasibility_oracle(g, c).assignment->adjacency(), c, g);
}

bool generates(const CycleSetCertificate& cert, const WeightedDigraph& g) {
  std::vector<char> covered(g.order() * g.order(), 0);
  for (const auto& m : cert.members) {
    for (const auto& e : m.edges()) {
      if (!g.has_edge(e.from, e.to)) return false;
      covered[e.from * g.order() + e.to] = 1;
    }
  }
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return covered[e.from * g.order() + e.to] != 0;
  });
}

RationalMatrix extended_adjacency(const DisjointCycleUnion& u, std::size_t n) {
  RationalMatrix m(n);
  for (const auto& e : u.edges()) {
    if (e.from >= n || e.to >= n) {
      throw Error(ErrorCode::invalid_graph, "cycle vertex outside 0..n-1");
    }
    m(e.from, e.to) = 1;
  }
  return m;
}

bool is_permutation_matrix(const RationalMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> col_ones(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t row_ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = m(i, j);
      if (x == 1) {
        ++row_ones;
        ++col_ones[j];
      } else if (sgn(x) != 0) {
        return false;
      }
    }
    if (row_ones != 1) return false;
  }
  return std::all_of(col_ones.begin(), col_ones.end(), [](std::size_t c) { return c == 1; });
}

DisjointCycleUnion permutation_to_union(const RationalMatrix& p) {
  if (!is_permutation_matrix(p)) {
    throw Error(ErrorCode::invalid_graph, "not a permutation matrix");
  }
  const std::size_t n = p.size();
  std::vector<Vertex> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p(i, j) == 1) next[i] = j;
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<Cycle> cycles;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> walk;
    for (Vertex v = s; !seen[v]; v = next[v]) {
      seen[v] = 1;
      walk.push_back(v);
    }
    cycles.push_back(make_cycle(std::move(walk)));
  }
  return make_union(std::move(cycles), n);
}

namespace {

bool is_ds(const RationalMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (sgn(a(i, j)) < 0) return false;
    }
    if (a.row_sum(i) != 1 || a.col_sum(i) != 1) return false;
  }
  return a.size() > 0;
}

// Kuhn's augmenting paths on the positive support, columns tried in
// ascending order.
std::optional<std::vector<std::size_t>> support_matching(const RationalMatrix& a) {
  const std::size_t n = a.size();
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_of_col(n, kFree);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t row) -> bool {
    for (std::size_t col = 0; col < n; ++col) {
      if (sgn(a(row, col)) <= 0 || visited[col]) continue;
      visited[col] = 1;
      if (row_of_col[col] == kFree || self(self, row_of_col[col])) {
        row_of_col[col] = row;
        return true;
      }
    }
    return false;
  };
  for (std::size_t row = 0; row < n; ++row) {
    visited.assign(n, 0);
    if (!augment(augment, row)) return std::nullopt;
  }
  std::vector<std::size_t> col_of_row(n);
  for (std::size_t col = 0; col < n; ++col) col_of_row[row_of_col[col]] = col;
  return col_of_row;
}

}  // namespace

std::vector<BirkhoffTerm> birkhoff_decompose(const RationalMatrix& a) {
  if (!is_ds(a)) {
    throw Error(ErrorCode::not_doubly_stochastic, "birkhoff_decompose: input is not "
                                                  "doubly stochastic");
  }
  std::vector<BirkhoffTerm> terms;
  RationalMatrix residual = a;
  while (!residual.is_zero()) {
    const auto match = support_matching(residual);
    if (!match) {
      throw Error(ErrorCode::not_doubly_stochastic,
                  "birkhoff_decompose: residual support has no perfect matching");
    }
    RationalMatrix perm(a.size());
    Rational lambda = residual(0, (*match)[0]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      perm(i, (*match)[i]) = 1;
      if (residual(i, (*match)[i]) < lambda) lambda = residual(i, (*match)[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) residual(i, (*match)[i]) -= lambda;
    terms.push_back({lambda, std::move(perm)});
  }
  return terms;
}

bool has_spanning_cycle(const WeightedDigraph& g, std::size_t max_n) {
  require_order(g, max_n, "has_spanning_cycle");
  const std::size_t n = g.order();
  if (n == 0) return false;
  if (n == 1) return g.has_edge(0, 0);
  std::vector<char> visited(n, 0);
  visited[0] = 1;
  auto extend = [&](auto&& self, Vertex v, std::size_t depth) -> bool {
    for (Vertex w : g.out_neighbors(v)) {
      if (w == 0 && depth == n) return true;
      if (visited[w]) continue;
      visited[w] = 1;
      if (self(self, w, depth + 1)) return true;
      visited[w] = 0;
    }
    return false;
  };
  return extend(extend, 0, 1);
}

WeightedDigraph balance_via_cycle_union(const WeightedDigraph& g, std::size_t max_n) {
  const auto cert = principal_cycle_set(g, max_n);
  WeightedDigraph out(g.order(), g.allows_self_loops());
  for (const auto& member : cert.members) {
    WeightedDigraph part(g.order(), g.allows_self_loops());
    for (const auto& e : member.edges()) part.add_edge(e.from, e.to, 1);
    out = weighted_union(out, part);
  }
  return out;
}

std::string to_string(const Cycle& c) {
  std::ostringstream out;
  for (Vertex v : c.vertices) out << v << "->";
  if (!c.vertices.empty()) out << c.vertices.front();
  return out.str();
}

std::string to_string(const DisjointCycleUnion& u) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < u.cycles.size(); ++k) {
    if (k) out << ", ";
    out << to_string(u.cycles[k]);
  }
  out << '}';
  return out.str();
}

}  // namespace wbds
