#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wbds/balance.hpp"
#include "wbds/digraph.hpp"
#include "wbds/trace.hpp"

namespace wbds {

struct DsifyResult {
  RoundTrace balancing;           // the WBDA run
  WeightedDigraph augmented;      // balanced weights plus self-loops
  Rational c_max;
  WeightedDigraph doubly_stochastic;  // augmented / c_max
};

/// Balances with WBDA, pads every vertex to the largest weighted out-degree
/// with a self-loop, and divides by it. Throws Error(not_strongly_connected).
DsifyResult dsify_with_self_loops(const WeightedDigraph& g, const BalanceOptions& options = {});

/// Per-agent memory of the load/height protocol. Loads are derived from the
/// current weights: L_s = C - d_out^w, L_t = d_in^w - C.
struct CRegularAgentState {
  long c = 0;
  WeightedDigraph weights;
  std::vector<long> source_height;
  std::vector<long> target_height;

  Rational source_load(Vertex v) const;
  Rational target_load(Vertex v) const;
  /// Largest source height among in-neighbors of v.
  long max_in_source_height(Vertex v) const;
  bool all_loads_zero() const;
};

/// Unit weights, H_s = 2, H_t = 1. Throws Error(c_too_small_for_degrees)
/// unless c is at least every unweighted in- and out-degree.
CRegularAgentState cregular_init(const WeightedDigraph& g, long c);

enum class CRegularRules {
  /// Preflow-push with partial backward pushes and source relabelling; the
  /// verdict always matches the max-flow oracle.
  extended,
  /// Source heights fixed at 2, whole-load backward pushes, target height
  /// raised to the in-neighbor maximum plus one, and an immediate negative
  /// verdict when a source load has no admissible out-edge.
  fixed_source,
};

const char* to_string(CRegularRules r) noexcept;

enum class CRegularActionKind { push_forward, push_backward, raise_target, raise_source, declare };

const char* to_string(CRegularActionKind k) noexcept;

struct CRegularAction {
  CRegularActionKind kind = CRegularActionKind::push_forward;
  Vertex vertex = 0;
  std::optional<Vertex> neighbor;
};

/// Replayed actions, indexed by step (starting at 1). A step listed here runs
/// exactly these actions; other steps use the default schedule.
struct CRegularSchedule {
  std::map<std::size_t, std::vector<CRegularAction>> steps;
};

struct CRegularOptions {
  CRegularRules rules = CRegularRules::extended;
  /// Use a_ki > L_t + 1 instead of a_ki >= L_t + 1 for whole-load backward
  /// pushes.
  bool strict_backward_guard = false;
  /// 0 selects 16 |V|^2 |E|.
  std::size_t max_steps = 0;
  CRegularSchedule schedule;
};

enum class CRegularOutcome { c_regular, not_c_regular, max_steps_exceeded };

const char* to_string(CRegularOutcome o) noexcept;

struct CRegularStepResult {
  std::vector<std::string> actions;
  std::vector<EdgeUpdate> updates;
  std::optional<Vertex> declared_by;
  /// Fixed-source rules only: the declaring vertex still had spare capacity towards
  /// an out-neighbor that the fixed source height made unreachable.
  bool height_blocked = false;
  bool changed = false;
};

/// Executes one step: forward phase over vertices in ascending order, then
/// backward phase. Throws Error(invalid_choice) for an inadmissible replayed
/// action.
CRegularStepResult cregular_step(CRegularAgentState& state, const CRegularOptions& options,
                                 const std::vector<CRegularAction>* replay = nullptr);

struct CRegularResult {
  CRegularOutcome outcome = CRegularOutcome::max_steps_exceeded;
  std::optional<WeightedDigraph> assignment;
  std::optional<Vertex> declared_by;
  bool height_blocked = false;
  /// Records in the trace: the initial state plus one per executed step.
  std::size_t iterations = 0;
  CRegularAgentState final_state;
  RoundTrace trace;
};

std::size_t default_max_steps(const WeightedDigraph& g);

/// |E| - |V| + 1, the largest DS-character a strongly connected digraph can
/// have; at least 1.
long default_c(const WeightedDigraph& g);

CRegularResult run_cregular(const WeightedDigraph& g, long c, const CRegularOptions& options = {});

}  // namespace wbds
