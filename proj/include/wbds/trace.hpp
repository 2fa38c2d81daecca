#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wbds/digraph.hpp"
#include "wbds/rational.hpp"

namespace wbds {

struct EdgeUpdate {
  Edge edge;
  Rational old_weight;
  Rational new_weight;
};

/// One snapshot of a protocol run. Round 0 is the initial state.
struct RoundRecord {
  std::size_t round = 0;
  WeightedDigraph weights;  // empty when snapshots are disabled
  Rational lyapunov;
  std::vector<Rational> imbalance;
  std::vector<EdgeUpdate> updates;
  /// Agent events in execution order, e.g. "2 forward 0 (+1)".
  std::vector<std::string> actions;

  // Load/height protocol only.
  std::vector<Rational> source_load;
  std::vector<Rational> target_load;
  std::vector<long> source_height;
  std::vector<long> target_height;
};

struct RoundTrace {
  std::string algorithm;
  std::string policy;
  std::string verdict;
  bool converged = false;
  WeightedDigraph final_weights;
  std::vector<RoundRecord> records;

  /// Number of executed rounds (records after the initial one).
  std::size_t rounds() const noexcept { return records.empty() ? 0 : records.size() - 1; }
};

/// Sum of |imbalance| over all vertices.
Rational lyapunov(const WeightedDigraph& g);

}  // namespace wbds
