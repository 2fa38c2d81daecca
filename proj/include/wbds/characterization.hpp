#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wbds/cycles.hpp"
#include "wbds/digraph.hpp"
#include "wbds/rational.hpp"

namespace wbds {

struct BalanceVerdict {
  bool is_weight_balanced = false;
  std::vector<Rational> witness_imbalances;  // empty when balanced
};

BalanceVerdict is_weight_balanced(const WeightedDigraph& g);

enum class BalanceabilityReason { strongly_semiconnected, edge_outside_cycle };

struct BalanceabilityVerdict {
  bool balanceable = false;
  BalanceabilityReason reason = BalanceabilityReason::strongly_semiconnected;
  std::optional<Edge> witness;  // an edge lying on no cycle
};

BalanceabilityVerdict is_weight_balanceable(const WeightedDigraph& g);

/// Row-stochastic normalization: each entry divided by its row sum.
/// Throws Error(zero_row).
RationalMatrix normalize_rows(const RationalMatrix& a);

struct CRegularityVerdict {
  bool is_c_regular = false;
  /// The common weighted out-degree when regular; otherwise the most frequent
  /// one (smallest on ties).
  Rational c;
  std::vector<Vertex> violating_vertices;
};

CRegularityVerdict is_c_regular(const WeightedDigraph& g);

bool is_doubly_stochastic(const RationalMatrix& a);

enum class DsMethod { cycle_cover, flow };

const char* to_string(DsMethod m) noexcept;

struct DsVerdict {
  bool doubly_stochasticable = false;
  std::string reason;
  /// Doubly stochastic assignment with support exactly E, on success.
  std::optional<WeightedDigraph> certificate;
};

/// Splits into strongly connected components and decides each one, either
/// with a DS-cycle set or with the max-flow feasibility oracle at
/// C = |E| - |V| + 1. Throws Error(method_size_exceeded) if cycle_cover meets
/// a component with more than `max_component` vertices.
DsVerdict is_doubly_stochasticable(const WeightedDigraph& g, DsMethod method,
                                   std::size_t max_component = kMaxCoverOrder);

/// Weighted union of a DS-cycle set with positive integer multipliers
/// summing to c, spread as evenly as possible (remainder to the first
/// members). The result is c-regular.
WeightedDigraph c_regular_assignment_from_cycles(const WeightedDigraph& g, long c,
                                                 std::size_t max_n = kMaxCoverOrder);

}  // namespace wbds
