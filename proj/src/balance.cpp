#include "wbds/balance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wbds/error.hpp"
#include "wbds/generators.hpp"

namespace wbds {

Rational lyapunov(const WeightedDigraph& g) {
  Rational total = 0;
  for (Vertex v = 0; v < g.order(); ++v) total += abs(g.imbalance(v));
  return total;
}

void ChoiceSchedule::set(std::size_t round, Vertex vertex, Vertex target) {
  choices_[{round, vertex}] = target;
}

std::optional<Vertex> ChoiceSchedule::get(std::size_t round, Vertex vertex) const {
  const auto it = choices_.find({round, vertex});
  if (it == choices_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<Vertex> proper_out_neighbors(const WeightedDigraph& g, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex j : g.out_neighbors(v)) {
    if (j != v) out.push_back(j);
  }
  return out;
}

bool contains(const std::vector<Vertex>& xs, Vertex x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::size_t position(const std::vector<Vertex>& xs, Vertex x) {
  return static_cast<std::size_t>(std::find(xs.begin(), xs.end(), x) - xs.begin());
}

Vertex checked_choice(const ChoiceSchedule& schedule, std::size_t round, Vertex v,
                      const std::vector<Vertex>& legal, const char* set_name) {
  const auto choice = schedule.get(round, v);
  if (!choice) return legal.front();
  if (!contains(legal, *choice)) {
    throw Error(ErrorCode::invalid_choice,
                "round " + std::to_string(round) + ": vertex " + std::to_string(v) +
                    " cannot choose " + std::to_string(*choice) + " outside " + set_name);
  }
  return *choice;
}

void apply_push(StepOutcome& out, Vertex from, Vertex to, const Rational& amount) {
  const Rational old_weight = out.weights.weight(from, to);
  const Rational new_weight = old_weight + amount;
  out.weights.set_weight(from, to, new_weight);
  out.updates.push_back({{from, to}, old_weight, new_weight});
}

void require_targets(const std::vector<Vertex>& targets, Vertex v) {
  if (targets.empty()) {
    throw Error(ErrorCode::invalid_graph,
                "vertex " + std::to_string(v) + " has positive imbalance but no out-edge");
  }
}

}  // namespace

Vertex FairDecisionMemory::pick(Vertex v, const std::vector<Vertex>& neighbors,
                                const std::vector<Vertex>& tied) const {
  const std::size_t m = neighbors.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vertex candidate = neighbors[(rotation_[v] + k) % m];
    if (contains(tied, candidate)) return candidate;
  }
  return tied.front();
}

void FairDecisionMemory::record(Vertex v, const std::vector<Vertex>& neighbors,
                                Vertex target) {
  rotation_[v] = (position(neighbors, target) + 1) % neighbors.size();
}

std::vector<Vertex> minimum_weight_targets(const WeightedDigraph& g, Vertex v) {
  std::vector<Vertex> best;
  Rational minimum;
  for (Vertex j : g.out_neighbors(v)) {
    const Rational& w = g.weight(v, j);
    if (j == v || sgn(w) <= 0) continue;
    if (best.empty() || w < minimum) {
      best.assign(1, j);
      minimum = w;
    } else if (w == minimum) {
      best.push_back(j);
    }
  }
  return best;
}

std::vector<Vertex> minimum_imbalance_targets(const WeightedDigraph& g, Vertex v) {
  std::vector<Vertex> best;
  Rational minimum;
  for (Vertex j : proper_out_neighbors(g, v)) {
    const Rational w = g.imbalance(j);
    if (best.empty() || w < minimum) {
      best.assign(1, j);
      minimum = w;
    } else if (w == minimum) {
      best.push_back(j);
    }
  }
  return best;
}

StepOutcome wbda_step(const WeightedDigraph& g, const ChoiceSchedule& schedule,
                      std::size_t round) {
  StepOutcome out{g, {}};
  for (Vertex v = 0; v < g.order(); ++v) {
    const Rational omega = g.imbalance(v);
    if (sgn(omega) <= 0) continue;
    const auto targets = minimum_weight_targets(g, v);
    require_targets(targets, v);
    apply_push(out, v, checked_choice(schedule, round, v, targets, "J*"), omega);
  }
  return out;
}

StepOutcome wbmda_step(const WeightedDigraph& g, FairDecisionMemory& memory,
                       const ChoiceSchedule& schedule, std::size_t round) {
  StepOutcome out{g, {}};
  for (Vertex v = 0; v < g.order(); ++v) {
    const Rational omega = g.imbalance(v);
    if (sgn(omega) <= 0) continue;
    const auto neighbors = proper_out_neighbors(g, v);
    const auto tied = minimum_imbalance_targets(g, v);
    require_targets(tied, v);
    Vertex target = tied.front();
    if (schedule.get(round, v)) {
      target = checked_choice(schedule, round, v, tied, "Omega_min");
    } else if (tied.size() > 1) {
      target = memory.pick(v, neighbors, tied);
    }
    if (tied.size() > 1) memory.record(v, neighbors, target);
    apply_push(out, v, target, omega);
  }
  return out;
}

std::size_t default_max_rounds(std::size_t n) {
  std::size_t bound = 1;
  for (int k = 0; k < 5; ++k) bound *= std::max<std::size_t>(n, 1);
  return bound;
}

namespace {

RoundRecord make_record(std::size_t round, const WeightedDigraph& g, bool snapshot,
                        std::vector<EdgeUpdate> updates) {
  RoundRecord record;
  record.round = round;
  if (snapshot) record.weights = g;
  record.imbalance = degree_profile(g).imbalance;
  for (const auto& w : record.imbalance) record.lyapunov += abs(w);
  for (const auto& u : updates) {
    record.actions.push_back(std::to_string(u.edge.from) + " -> " + std::to_string(u.edge.to) +
                             " +" + to_string(Rational(u.new_weight - u.old_weight)));
  }
  record.updates = std::move(updates);
  return record;
}

// Properties every legal round must keep; a violation is an engine bug.
void check_round(const RoundRecord& previous, const RoundRecord& current) {
  Rational total = 0;
  for (const auto& w : current.imbalance) total += w;
  if (sgn(total) != 0) throw std::logic_error("imbalances no longer sum to zero");
  if (current.lyapunov > previous.lyapunov) throw std::logic_error("Lyapunov value increased");
}

template <typename Step>
RoundTrace run_protocol(const WeightedDigraph& g, const BalanceOptions& options,
                        const char* algorithm, Step step) {
  if (classify_connectivity(g).kind != Connectivity::strongly_connected) {
    throw Error(ErrorCode::not_strongly_connected,
                std::string(algorithm) + " requires a strongly connected digraph");
  }
  for (const auto& e : g.edges()) {
    if (sgn(g.weight(e.from, e.to)) <= 0) {
      throw Error(ErrorCode::bad_weight, "initial weights must be positive");
    }
  }
  const std::size_t max_rounds =
      options.max_rounds ? options.max_rounds : default_max_rounds(g.order());
  RoundTrace trace;
  trace.algorithm = algorithm;
  trace.policy = options.schedule.empty() ? "lowest_index" : "replay";
  trace.records.push_back(make_record(0, g, options.snapshots, {}));

  WeightedDigraph current = g;
  std::size_t round = 0;
  while (sgn(trace.records.back().lyapunov) != 0 && round < max_rounds) {
    ++round;
    StepOutcome next = step(current, round);
    current = std::move(next.weights);
    trace.records.push_back(make_record(round, current, options.snapshots, std::move(next.updates)));
    check_round(trace.records[trace.records.size() - 2], trace.records.back());
  }
  trace.converged = sgn(trace.records.back().lyapunov) == 0;
  trace.verdict = trace.converged ? "weight_balanced" : "max_rounds_exceeded";
  trace.final_weights = std::move(current);
  return trace;
}

}  // namespace

RoundTrace run_wbda(const WeightedDigraph& g, const BalanceOptions& options) {
  return run_protocol(g, options, "wbda", [&](const WeightedDigraph& a, std::size_t round) {
    return wbda_step(a, options.schedule, round);
  });
}

RoundTrace run_wbmda(const WeightedDigraph& g, const BalanceOptions& options) {
  FairDecisionMemory memory(g.order());
  return run_protocol(g, options, "wbmda", [&](const WeightedDigraph& a, std::size_t round) {
    return wbmda_step(a, memory, options.schedule, round);
  });
}

BenchmarkReport benchmark_rounds(const std::vector<std::size_t>& sizes, std::size_t trials,
                                 std::uint64_t seed, double edge_probability) {
  BenchmarkReport report;
  Rng rng(seed);
  BalanceOptions options;
  options.snapshots = false;
  std::vector<double> xs, ys;
  for (std::size_t n : sizes) {
    BenchmarkRow row;
    row.n = n;
    row.trials = trials;
    row.bound = n * n * n * n;
    double total = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto g = random_strongly_connected(n, edge_probability, rng);
      const std::size_t rounds = run_wbmda(g, options).rounds();
      total += static_cast<double>(rounds);
      row.max_rounds = std::max(row.max_rounds, rounds);
    }
    row.mean_rounds = trials ? total / static_cast<double>(trials) : 0.0;
    if (row.max_rounds > 0 && n > 1) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(static_cast<double>(row.max_rounds)));
    }
    report.rows.push_back(row);
  }
  if (xs.size() >= 2) {
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double denom = k * sxx - sx * sx;
    if (denom != 0) report.fitted_exponent = (k * sxy - sx * sy) / denom;
  }
  return report;
}

}  // namespace wbds
