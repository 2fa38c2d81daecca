#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbds/digraph.hpp"
#include "wbds/trace.hpp"

namespace wbds {

/// Explicit per-round choices: (round, vertex) -> target. Rounds start at 1.
/// Vertices without an entry fall back to the default tie rule.
class ChoiceSchedule {
 public:
  void set(std::size_t round, Vertex vertex, Vertex target);
  std::optional<Vertex> get(std::size_t round, Vertex vertex) const;
  bool empty() const noexcept { return choices_.empty(); }
  const std::map<std::pair<std::size_t, Vertex>, Vertex>& entries() const noexcept {
    return choices_;
  }

 private:
  std::map<std::pair<std::size_t, Vertex>, Vertex> choices_;
};

/// Per-vertex round-robin position over the ascending out-neighbor list
/// (self-loops excluded). Advanced only when a vertex faces a tie.
class FairDecisionMemory {
 public:
  FairDecisionMemory() = default;
  explicit FairDecisionMemory(std::size_t n) : rotation_(n, 0) {}

  std::size_t rotation(Vertex v) const { return rotation_[v]; }

  /// First tied candidate at or after the rotation position (cyclically).
  /// `tied` must be a subset of `neighbors`.
  Vertex pick(Vertex v, const std::vector<Vertex>& neighbors,
              const std::vector<Vertex>& tied) const;
  /// Records that v chose `target` among several tied candidates.
  void record(Vertex v, const std::vector<Vertex>& neighbors, Vertex target);

 private:
  std::vector<std::size_t> rotation_;
};

struct StepOutcome {
  WeightedDigraph weights;
  std::vector<EdgeUpdate> updates;
};

/// Positive out-edge targets of v with minimum weight, self-loop excluded.
std::vector<Vertex> minimum_weight_targets(const WeightedDigraph& g, Vertex v);

/// Out-neighbors of v with minimum imbalance, self-loop excluded.
std::vector<Vertex> minimum_imbalance_targets(const WeightedDigraph& g, Vertex v);

/// One synchronous WBDA round: each vertex with positive imbalance adds it to
/// one minimum-weight out-edge. Choices for `round` come from `schedule`
/// when present, else the smallest target. Throws Error(invalid_choice).
StepOutcome wbda_step(const WeightedDigraph& g, const ChoiceSchedule& schedule = {},
                      std::size_t round = 1);

/// One synchronous WBMDA round: each vertex with positive imbalance adds it
/// to the edge toward a minimum-imbalance out-neighbor; ties follow `memory`.
StepOutcome wbmda_step(const WeightedDigraph& g, FairDecisionMemory& memory,
                       const ChoiceSchedule& schedule = {}, std::size_t round = 1);

struct BalanceOptions {
  /// Replayed choices; an empty schedule means the lowest-index rule.
  ChoiceSchedule schedule;
  /// 0 selects n^5.
  std::size_t max_rounds = 0;
  /// Keep a full weight snapshot in every record.
  bool snapshots = true;
};

/// Runs until weight-balanced or max_rounds. Throws
/// Error(not_strongly_connected). A run that hits the limit has
/// converged == false and verdict "max_rounds_exceeded".
RoundTrace run_wbda(const WeightedDigraph& g, const BalanceOptions& options = {});
RoundTrace run_wbmda(const WeightedDigraph& g, const BalanceOptions& options = {});

std::size_t default_max_rounds(std::size_t n);

struct BenchmarkRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_rounds = 0;
  std::size_t max_rounds = 0;
  std::size_t bound = 0;  // n^4
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;
  /// Least-squares slope of log(max rounds) against log(n); rows with zero
  /// rounds are skipped.
  double fitted_exponent = 0;
};

/// WBMDA round counts (lowest-index rule, unit weights) on random strongly
/// connected digraphs.
BenchmarkReport benchmark_rounds(const std::vector<std::size_t>& sizes, std::size_t trials,
                                 std::uint64_t seed, double edge_probability = 0.3);

}  // namespace wbds
