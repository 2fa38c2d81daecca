#pragma once

#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wbds/digraph.hpp"
#include "wbds/rational.hpp"

namespace wbds {

/// Elementary cycle, rotated so the smallest vertex comes first. A single
/// vertex denotes a self-loop.
struct Cycle {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.size(); }
  std::vector<Edge> edges() const;
  bool contains(Vertex v) const;

  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

/// Rotates a closed walk without repeats into canonical form.
Cycle make_cycle(std::vector<Vertex> vertices);

/// Pairwise vertex-disjoint cycles, ordered by first vertex.
struct DisjointCycleUnion {
  std::vector<Cycle> cycles;
  bool spanning = false;

  std::vector<Edge> edges() const;
  std::vector<Vertex> vertices() const;

  friend auto operator<=>(const DisjointCycleUnion& a, const DisjointCycleUnion& b) {
    return a.cycles <=> b.cycles;
  }
  friend bool operator==(const DisjointCycleUnion& a, const DisjointCycleUnion& b) {
    return a.cycles == b.cycles;
  }
};

DisjointCycleUnion make_union(std::vector<Cycle> cycles, std::size_t n);

enum class CycleSetKind { principal, ds };

struct CycleSetCertificate {
  CycleSetKind kind = CycleSetKind::principal;
  std::vector<DisjointCycleUnion> members;

  std::size_t cardinality() const noexcept { return members.size(); }
};

inline constexpr std::size_t kMaxEnumerationOrder = 12;
inline constexpr std::size_t kMaxCoverOrder = 10;

/// All elementary cycles (self-loops included), canonical and sorted.
/// Throws Error(graph_too_large) if n > max_n.
std::vector<Cycle> enumerate_cycles(const WeightedDigraph& g,
                                    std::size_t max_n = kMaxEnumerationOrder);

/// Every nonempty set of pairwise disjoint cycles of g, sorted. With
/// spanning_only, only those covering all vertices (cycle covers).
std::vector<DisjointCycleUnion> enumerate_disjoint_cycle_unions(
    const WeightedDigraph& g, bool spanning_only,
    std::size_t max_n = kMaxEnumerationOrder);

/// Minimum-cardinality subset of C(G) whose union is G. Requires g strongly
/// semiconnected.
CycleSetCertificate principal_cycle_set(const WeightedDigraph& g,
                                        std::size_t max_n = kMaxCoverOrder);

/// Minimum-cardinality set of spanning elements of C(G) generating G, or
/// nullopt if no such cover exists. Requires g strongly connected.
std::optional<CycleSetCertificate> ds_cycle_set(const WeightedDigraph& g,
                                                std::size_t max_n = kMaxCoverOrder);

/// True iff every edge of g appears in some member.
bool generates(const CycleSetCertificate& cert, const WeightedDigraph& g);

/// n x n 0/1 matrix with a one per cycle edge.
RationalMatrix extended_adjacency(const DisjointCycleUnion& u, std::size_t n);

bool is_permutation_matrix(const RationalMatrix& m);

/// Cycle structure of a permutation matrix; fixed points become self-loops.
DisjointCycleUnion permutation_to_union(const RationalMatrix& p);

struct BirkhoffTerm {
  Rational coefficient;
  RationalMatrix permutation;
};

/// Greedy Birkhoff-von Neumann decomposition: repeatedly extracts a
/// permutation inside the positive support and subtracts its minimum entry.
/// Throws Error(not_doubly_stochastic).
std::vector<BirkhoffTerm> birkhoff_decompose(const RationalMatrix& a);

/// Whether some single cycle visits every vertex.
bool has_spanning_cycle(const WeightedDigraph& g,
                        std::size_t max_n = kMaxEnumerationOrder);

/// Weight of each edge = number of principal-cycle-set members containing it.
WeightedDigraph balance_via_cycle_union(const WeightedDigraph& g,
                                        std::size_t max_n = kMaxCoverOrder);

std::string to_string(const Cycle& c);
std::string to_string(const DisjointCycleUnion& u);

}  // namespace wbds
