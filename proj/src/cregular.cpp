#include "wbds/cregular.hpp"

#include <algorithm>
#include <limits>

#include "wbds/error.hpp"

namespace wbds {

DsifyResult dsify_with_self_loops(const WeightedDigraph& g, const BalanceOptions& options) {
  DsifyResult result;
  result.balancing = run_wbda(g, options);
  if (!result.balancing.converged) {
    throw Error(ErrorCode::invalid_graph, "dsify: balancing stage did not converge");
  }
  const WeightedDigraph& balanced = result.balancing.final_weights;
  result.c_max = 0;
  for (Vertex v = 0; v < balanced.order(); ++v) {
    result.c_max = std::max(result.c_max, balanced.weighted_out_degree(v));
  }
  // An edgeless single vertex becomes the 1x1 identity.
  if (sgn(result.c_max) == 0) result.c_max = 1;
  result.augmented = balanced;
  result.augmented.enable_self_loops();
  for (Vertex v = 0; v < balanced.order(); ++v) {
    const Rational deficit = result.c_max - balanced.weighted_out_degree(v);
    if (sgn(deficit) <= 0) continue;
    if (result.augmented.has_edge(v, v)) {
      result.augmented.set_weight(v, v, result.augmented.weight(v, v) + deficit);
    } else {
      result.augmented.add_edge(v, v, deficit);
    }
  }
  result.doubly_stochastic = result.augmented;
  for (const auto& e : result.augmented.edges()) {
    result.doubly_stochastic.set_weight(e.from, e.to,
                                        result.augmented.weight(e.from, e.to) / result.c_max);
  }
  return result;
}

Rational CRegularAgentState::source_load(Vertex v) const {
  return Rational(c) - weights.weighted_out_degree(v);
}

Rational CRegularAgentState::target_load(Vertex v) const {
  return weights.weighted_in_degree(v) - Rational(c);
}

long CRegularAgentState::max_in_source_height(Vertex v) const {
  long best = 0;
  for (Vertex k : weights.in_neighbors(v)) best = std::max(best, source_height[k]);
  return best;
}

bool CRegularAgentState::all_loads_zero() const {
  for (Vertex v = 0; v < weights.order(); ++v) {
    if (sgn(source_load(v)) != 0 || sgn(target_load(v)) != 0) return false;
  }
  return true;
}

CRegularAgentState cregular_init(const WeightedDigraph& g, long c) {
  if (c < 1) throw Error(ErrorCode::c_too_small, "C must be positive, got " + std::to_string(c));
  const auto profile = degree_profile(g);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (static_cast<long>(profile.out_degree[v]) > c ||
        static_cast<long>(profile.in_degree[v]) > c) {
      throw Error(ErrorCode::c_too_small_for_degrees,
                  "C=" + std::to_string(c) + " is below the degree of vertex " +
                      std::to_string(v));
    }
  }
  CRegularAgentState state;
  state.c = c;
  state.weights = g.with_unit_weights();
  state.source_height.assign(g.order(), 2);
  state.target_height.assign(g.order(), 1);
  return state;
}

const char* to_string(CRegularRules r) noexcept {
  return r == CRegularRules::extended ? "extended" : "fixed-source";
}

const char* to_string(CRegularActionKind k) noexcept {
  switch (k) {
    case CRegularActionKind::push_forward: return "forward";
    case CRegularActionKind::push_backward: return "backward";
    case CRegularActionKind::raise_target: return "raise-target";
    case CRegularActionKind::raise_source: return "raise-source";
    case CRegularActionKind::declare: return "declare";
  }
  return "unknown";
}

const char* to_string(CRegularOutcome o) noexcept {
  switch (o) {
    case CRegularOutcome::c_regular: return "c_regular";
    case CRegularOutcome::not_c_regular: return "not_c_regular";
    case CRegularOutcome::max_steps_exceeded: return "max_steps_exceeded";
  }
  return "unknown";
}

namespace {

class StepRunner {
 public:
  StepRunner(CRegularAgentState& state, const CRegularOptions& options,
             CRegularStepResult& result)
      : s_(state), opt_(options), r_(result), n_(state.weights.order()) {}

  bool extended() const { return opt_.rules == CRegularRules::extended; }

  bool forward_admissible(Vertex v, Vertex j) const {
    return sgn(s_.source_load(v)) > 0 && s_.weights.has_edge(v, j) &&
           s_.weights.weight(v, j) < s_.c && s_.source_height[v] > s_.target_height[j];
  }

  bool backward_admissible(Vertex v, Vertex k) const {
    const Rational load = s_.target_load(v);
    if (sgn(load) <= 0 || !s_.weights.has_edge(k, v)) return false;
    if (s_.target_height[v] <= s_.source_height[k]) return false;
    const Rational& a = s_.weights.weight(k, v);
    if (extended()) return a > 1;
    return opt_.strict_backward_guard ? a > load + 1 : a >= load + 1;
  }

  std::optional<Vertex> first_forward(Vertex v) const {
    for (Vertex j : s_.weights.out_neighbors(v)) {
      if (forward_admissible(v, j)) return j;
    }
    return std::nullopt;
  }

  std::optional<Vertex> first_backward(Vertex v) const {
    for (Vertex k : s_.weights.in_neighbors(v)) {
      if (backward_admissible(v, k)) return k;
    }
    return std::nullopt;
  }

  void push_forward(Vertex v, Vertex j) {
    const Rational spare = Rational(s_.c) - s_.weights.weight(v, j);
    const Rational amount = std::min(s_.source_load(v), spare);
    change(v, j, amount);
    log(std::to_string(v) + " forward " + std::to_string(j) + " (+" + to_string(amount) + ")");
  }

  void push_backward(Vertex v, Vertex k) {
    Rational amount = s_.target_load(v);
    if (extended()) amount = std::min(amount, Rational(s_.weights.weight(k, v) - 1));
    change(k, v, -amount);
    log(std::to_string(v) + " backward " + std::to_string(k) + " (-" + to_string(amount) + ")");
  }

  void raise_target(Vertex v) {
    long height = s_.max_in_source_height(v) + 1;
    if (extended()) {
      height = std::numeric_limits<long>::max();
      for (Vertex k : s_.weights.in_neighbors(v)) {
        if (s_.weights.weight(k, v) > 1) height = std::min(height, s_.source_height[k] + 1);
      }
    }
    set_height(s_.target_height[v], height, "H_t", v);
  }

  // Returns false when the vertex must declare instead.
  bool raise_source(Vertex v) {
    long height = std::numeric_limits<long>::max();
    for (Vertex j : s_.weights.out_neighbors(v)) {
      if (s_.weights.weight(v, j) < s_.c) height = std::min(height, s_.target_height[j] + 1);
    }
    if (height >= static_cast<long>(2 * n_ + 2)) return false;
    set_height(s_.source_height[v], height, "H_s", v);
    return true;
  }

  void declare(Vertex v) {
    r_.declared_by = v;
    r_.changed = true;
    for (Vertex j : s_.weights.out_neighbors(v)) {
      if (s_.weights.weight(v, j) < s_.c && s_.source_height[v] <= s_.target_height[j]) {
        r_.height_blocked = !extended();
      }
    }
    log(std::to_string(v) + " declare not C-regular");
  }

  void discharge_source(Vertex v) {
    while (sgn(s_.source_load(v)) > 0) {
      const auto j = first_forward(v);
      if (!j) break;
      push_forward(v, *j);
    }
    if (sgn(s_.source_load(v)) <= 0) return;
    if (!extended() || !raise_source(v)) declare(v);
  }

  void discharge_target(Vertex v) {
    while (sgn(s_.target_load(v)) > 0) {
      const auto k = first_backward(v);
      if (!k) break;
      push_backward(v, *k);
      if (!extended()) break;
    }
    if (sgn(s_.target_load(v)) > 0 && !first_backward(v)) raise_target(v);
  }

  void run_default() {
    for (Vertex v = 0; v < n_ && !r_.declared_by; ++v) {
      if (sgn(s_.source_load(v)) > 0) discharge_source(v);
    }
    if (r_.declared_by) return;
    for (Vertex v = 0; v < n_; ++v) {
      if (sgn(s_.target_load(v)) > 0) discharge_target(v);
    }
  }

  void run_replay(const std::vector<CRegularAction>& actions) {
    for (const auto& action : actions) {
      if (r_.declared_by) break;
      apply(action);
    }
  }

 private:
  [[noreturn]] void reject(const CRegularAction& a, const std::string& why) const {
    std::string text = std::to_string(a.vertex) + " " + to_string(a.kind);
    if (a.neighbor) text += " " + std::to_string(*a.neighbor);
    throw Error(ErrorCode::invalid_choice, "action '" + text + "' rejected: " + why);
  }

  void apply(const CRegularAction& a) {
    const Vertex v = a.vertex;
    if (v >= n_ || (a.neighbor && *a.neighbor >= n_)) reject(a, "vertex out of range");
    switch (a.kind) {
      case CRegularActionKind::push_forward:
        if (!a.neighbor || !forward_admissible(v, *a.neighbor)) reject(a, "not admissible");
        push_forward(v, *a.neighbor);
        break;
      case CRegularActionKind::push_backward:
        if (!a.neighbor || !backward_admissible(v, *a.neighbor)) reject(a, "not admissible");
        push_backward(v, *a.neighbor);
        break;
      case CRegularActionKind::raise_target:
        if (sgn(s_.target_load(v)) <= 0 || first_backward(v)) reject(a, "not applicable");
        raise_target(v);
        break;
      case CRegularActionKind::raise_source:
        if (!extended() || sgn(s_.source_load(v)) <= 0 || first_forward(v)) {
          reject(a, "not applicable");
        }
        if (!raise_source(v)) declare(v);
        break;
      case CRegularActionKind::declare:
        if (sgn(s_.source_load(v)) <= 0 || first_forward(v)) reject(a, "not applicable");
        declare(v);
        break;
    }
  }

  void change(Vertex from, Vertex to, const Rational& delta) {
    const Rational old_weight = s_.weights.weight(from, to);
    const Rational new_weight = old_weight + delta;
    s_.weights.set_weight(from, to, new_weight);
    r_.updates.push_back({{from, to}, old_weight, new_weight});
    r_.changed = true;
  }

  void set_height(long& slot, long height, const char* name, Vertex v) {
    if (height != slot) r_.changed = true;
    log(std::to_string(v) + " raise " + name + " " + std::to_string(slot) + " -> " +
        std::to_string(height));
    slot = height;
  }

  void log(std::string text) { r_.actions.push_back(std::move(text)); }

  CRegularAgentState& s_;
  const CRegularOptions& opt_;
  CRegularStepResult& r_;
  std::size_t n_;
};

RoundRecord snapshot(std::size_t step, const CRegularAgentState& s, CRegularStepResult* r) {
  RoundRecord record;
  record.round = step;
  record.weights = s.weights;
  record.imbalance = degree_profile(s.weights).imbalance;
  for (const auto& w : record.imbalance) record.lyapunov += abs(w);
  for (Vertex v = 0; v < s.weights.order(); ++v) {
    record.source_load.push_back(s.source_load(v));
    record.target_load.push_back(s.target_load(v));
  }
  record.source_height = s.source_height;
  record.target_height = s.target_height;
  if (r) {
    record.updates = std::move(r->updates);
    record.actions = std::move(r->actions);
  }
  return record;
}

}  // namespace

CRegularStepResult cregular_step(CRegularAgentState& state, const CRegularOptions& options,
                                 const std::vector<CRegularAction>* replay) {
  CRegularStepResult result;
  StepRunner runner(state, options, result);
  if (replay) {
    runner.run_replay(*replay);
  } else {
    runner.run_default();
  }
  return result;
}

long default_c(const WeightedDigraph& g) {
  return std::max(1L, static_cast<long>(g.edge_count()) - static_cast<long>(g.order()) + 1);
}

std::size_t default_max_steps(const WeightedDigraph& g) {
  const std::size_t n = std::max<std::size_t>(g.order(), 1);
  return 16 * n * n * std::max<std::size_t>(g.edge_count(), 1);
}

CRegularResult run_cregular(const WeightedDigraph& g, long c, const CRegularOptions& options) {
  CRegularResult result;
  CRegularAgentState state = cregular_init(g, c);
  const std::size_t max_steps = options.max_steps ? options.max_steps : default_max_steps(g);
  RoundTrace& trace = result.trace;
  trace.algorithm = "cregular";
  trace.policy = std::string(options.schedule.steps.empty() ? "lowest_index" : "replay") + "/" +
                 to_string(options.rules);
  trace.records.push_back(snapshot(0, state, nullptr));

  std::size_t step = 0;
  bool stalled = false;
  for (;;) {
    if (state.all_loads_zero()) {
      result.outcome = CRegularOutcome::c_regular;
      break;
    }
    if (step >= max_steps || stalled) {
      result.outcome = CRegularOutcome::max_steps_exceeded;
      break;
    }
    ++step;
    const auto it = options.schedule.steps.find(step);
    CRegularStepResult r =
        cregular_step(state, options, it == options.schedule.steps.end() ? nullptr : &it->second);
    const auto declared = r.declared_by;
    result.height_blocked = result.height_blocked || r.height_blocked;
    stalled = !r.changed;
    trace.records.push_back(snapshot(step, state, &r));
    if (declared) {
      result.outcome = CRegularOutcome::not_c_regular;
      result.declared_by = declared;
      break;
    }
  }
  trace.converged = result.outcome == CRegularOutcome::c_regular;
  trace.verdict = to_string(result.outcome);
  if (stalled && result.outcome == CRegularOutcome::max_steps_exceeded) trace.verdict = "stalled";
  trace.final_weights = state.weights;
  if (trace.converged) result.assignment = state.weights;
  result.iterations = trace.records.size();
  result.final_state = std::move(state);
  return result;
}

}  // namespace wbds
