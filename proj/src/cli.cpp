#include "wbds/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wbds/balance.hpp"
#include "wbds/characterization.hpp"
#include "wbds/cregular.hpp"
#include "wbds/cycles.hpp"
#include "wbds/error.hpp"
#include "wbds/flow.hpp"
#include "wbds/generators.hpp"
#include "wbds/io.hpp"

namespace wbds {
namespace {

struct CommonOptions {
  std::string input;
  std::string format;
  std::string output;
  std::string trace;
  std::string trace_format;
  std::uint64_t seed = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  CommonOptions common;
  std::ostream& out;

  GraphFormat input_format() const {
    if (!common.format.empty()) return parse_graph_format(common.format);
    return graph_format_for_path(common.input);
  }

  WeightedDigraph load(GraphMetadata* metadata = nullptr) const {
    if (common.input.empty()) throw UsageError("--input is required");
    return parse_graph(read_file(common.input), input_format(), metadata);
  }

  void write_graph(const WeightedDigraph& g) const {
    if (common.output.empty()) return;
    const GraphFormat f = common.format.empty() ? graph_format_for_path(common.output)
                                                : parse_graph_format(common.format);
    write_file(common.output, serialize_graph(g, f));
  }

  void write_trace(const RoundTrace& trace) const {
    if (common.trace.empty()) return;
    TraceFormat f = TraceFormat::json;
    if (common.trace_format == "csv" ||
        (common.trace_format.empty() && common.trace.size() >= 4 &&
         common.trace.substr(common.trace.size() - 4) == ".csv")) {
      f = TraceFormat::csv;
    } else if (!common.trace_format.empty() && common.trace_format != "json") {
      throw UsageError("unknown trace format '" + common.trace_format + "'");
    }
    write_file(common.trace, serialize_trace(trace, f));
  }
};

const char* yes_no(bool b) { return b ? "true" : "false"; }

void print_weights(std::ostream& out, const WeightedDigraph& g) {
  for (const auto& e : g.edges()) {
    out << "  " << e.from << " -> " << e.to << " : " << to_string(g.weight(e.from, e.to)) << '\n';
  }
}

void print_matrix(std::ostream& out, const RationalMatrix& m) {
  std::istringstream rows(to_string(m));
  std::string row;
  while (std::getline(rows, row)) out << "  " << row << '\n';
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const auto dash = part.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const std::size_t lo = std::stoul(part.substr(0, dash));
        const std::size_t hi = std::stoul(part.substr(dash + 1));
        for (std::size_t n = lo; n <= hi; ++n) sizes.push_back(n);
      } else {
        sizes.push_back(std::stoul(part));
      }
    } catch (const std::exception&) {
      throw UsageError("bad size list '" + text + "'");
    }
  }
  if (sizes.empty()) throw UsageError("empty size list");
  return sizes;
}

DsMethod parse_method(const std::string& m) {
  if (m == "flow") return DsMethod::flow;
  if (m == "cycle_cover" || m == "cycle-cover") return DsMethod::cycle_cover;
  throw UsageError("unknown method '" + m + "'");
}

// ---- commands ----

int cmd_check(const Context& ctx, const std::string& method_name) {
  const WeightedDigraph g = ctx.load();
  const DsMethod method = parse_method(method_name);
  auto& out = ctx.out;
  const auto report = classify_connectivity(g);
  const auto balanced = is_weight_balanced(g);
  const auto balanceable = is_weight_balanceable(g);
  out << "vertices=" << g.order() << " edges=" << g.edge_count() << '\n';
  out << "connectivity=" << to_string(report.kind) << '\n';
  out << "strongly_connected=" << yes_no(report.kind == Connectivity::strongly_connected) << '\n';
  out << "components=" << report.components.size() << '\n';
  out << "weight_balanced=" << yes_no(balanced.is_weight_balanced) << '\n';
  out << "weight_balanceable=" << yes_no(balanceable.balanceable) << '\n';
  if (balanceable.witness) {
    out << "edge_outside_cycle=" << balanceable.witness->from << "->" << balanceable.witness->to
        << '\n';
  }
  const auto c_regular = is_c_regular(g);
  out << "c_regular=" << yes_no(c_regular.is_c_regular);
  if (c_regular.is_c_regular) out << " C=" << to_string(c_regular.c);
  out << '\n';
  const auto ds = is_doubly_stochasticable(g, method);
  out << "doubly_stochasticable=" << yes_no(ds.doubly_stochasticable) << " (method=" << to_string(method)
      << ")\n";
  out << "reason=" << ds.reason << '\n';
  if (ds.certificate) {
    out << "certificate:\n";
    print_matrix(out, ds.certificate->adjacency());
    ctx.write_graph(*ds.certificate);
  }
  return balanceable.balanceable && ds.doubly_stochasticable ? kExitOk : kExitNegative;
}

BalanceOptions balance_options(const std::string& policy, std::size_t max_rounds) {
  BalanceOptions options;
  options.max_rounds = max_rounds;
  if (policy == "lowest-index" || policy == "lowest_index") return options;
  if (policy.rfind("replay=", 0) == 0) {
    options.schedule = parse_choice_schedule(read_file(policy.substr(7)));
    return options;
  }
  throw UsageError("unknown policy '" + policy + "'");
}

int cmd_balance(const Context& ctx, const std::string& algo, const std::string& policy,
                std::size_t max_rounds) {
  const WeightedDigraph g = ctx.load();
  const BalanceOptions options = balance_options(policy, max_rounds);
  RoundTrace trace;
  if (algo == "wbda") {
    trace = run_wbda(g, options);
  } else if (algo == "wbmda") {
    trace = run_wbmda(g, options);
  } else {
    throw UsageError("unknown algorithm '" + algo + "'");
  }
  auto& out = ctx.out;
  out << "algorithm=" << trace.algorithm << " policy=" << trace.policy << '\n';
  out << "verdict=" << trace.verdict << '\n';
  out << "rounds=" << trace.rounds() << '\n';
  out << "V_wb=";
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    out << (k ? "," : "") << to_string(trace.records[k].lyapunov);
  }
  out << '\n';
  for (const auto& r : trace.records) {
    if (r.actions.empty()) continue;
    out << "round " << r.round << ":";
    for (const auto& a : r.actions) out << " [" << a << "]";
    out << '\n';
  }
  out << "final weights:\n";
  print_weights(out, trace.final_weights);
  ctx.write_graph(trace.final_weights);
  ctx.write_trace(trace);
  return trace.converged ? kExitOk : kExitNegative;
}

struct DsifyArgs {
  bool self_loops = false;
  bool cregular = false;
  std::string c = "auto";
  std::string rules = "extended";
  std::string schedule;
  std::string policy = "lowest-index";
  bool strict_guard = false;
  std::size_t max_steps = 0;
};

int cmd_dsify(const Context& ctx, const DsifyArgs& a) {
  if (a.self_loops == a.cregular) throw UsageError("choose exactly one of --self-loops, --cregular");
  const WeightedDigraph g = ctx.load();
  auto& out = ctx.out;
  if (a.self_loops) {
    const auto result = dsify_with_self_loops(g, balance_options(a.policy, 0));
    out << "method=self-loops\n";
    out << "balancing_rounds=" << result.balancing.rounds() << '\n';
    out << "C_max=" << to_string(result.c_max) << '\n';
    out << "augmented:\n";
    print_matrix(out, result.augmented.adjacency());
    out << "doubly_stochastic:\n";
    print_matrix(out, result.doubly_stochastic.adjacency());
    out << "is_doubly_stochastic=" << yes_no(is_doubly_stochastic(result.doubly_stochastic.adjacency()))
        << '\n';
    ctx.write_graph(result.doubly_stochastic);
    ctx.write_trace(result.balancing);
    return kExitOk;
  }
  long c = 0;
  if (a.c == "auto") {
    c = default_c(g);
  } else {
    try {
      c = std::stol(a.c);
    } catch (const std::exception&) {
      throw UsageError("--c expects an integer or 'auto'");
    }
  }
  CRegularOptions options;
  if (a.rules == "fixed-source") {
    options.rules = CRegularRules::fixed_source;
  } else if (a.rules != "extended") {
    throw UsageError("unknown rules '" + a.rules + "'");
  }
  options.strict_backward_guard = a.strict_guard;
  options.max_steps = a.max_steps;
  if (!a.schedule.empty()) options.schedule = parse_cregular_schedule(read_file(a.schedule));
  const auto result = run_cregular(g, c, options);
  out << "method=cregular rules=" << to_string(options.rules) << '\n';
  out << "C=" << c << '\n';
  out << "verdict=" << result.trace.verdict << '\n';
  out << "steps=" << result.trace.rounds() << " iterations=" << result.iterations << '\n';
  if (result.declared_by) out << "declared_by=" << *result.declared_by << '\n';
  if (result.height_blocked) out << "height_blocked=true\n";
  for (const auto& r : result.trace.records) {
    if (r.actions.empty()) continue;
    out << "step " << r.round << ":";
    for (const auto& act : r.actions) out << " [" << act << "]";
    out << '\n';
  }
  if (result.assignment) {
    out << "assignment:\n";
    print_matrix(out, result.assignment->adjacency());
    ctx.write_graph(*result.assignment);
  }
  ctx.write_trace(result.trace);
  return result.outcome == CRegularOutcome::c_regular ? kExitOk : kExitNegative;
}

int cmd_cycles(const Context& ctx, bool principal, bool ds_set) {
  const WeightedDigraph g = ctx.load();
  auto& out = ctx.out;
  if (principal) {
    const auto cert = principal_cycle_set(g);
    out << "p(G)=" << cert.cardinality() << '\n';
    for (const auto& m : cert.members) out << "  " << to_string(m) << '\n';
    ctx.write_graph(balance_via_cycle_union(g));
    return kExitOk;
  }
  if (ds_set) {
    const auto cert = ds_cycle_set(g);
    if (!cert) {
      out << "ds(G)=none (not doubly stochasticable)\n";
      return kExitNegative;
    }
    out << "ds(G)=" << cert->cardinality() << '\n';
    for (const auto& m : cert->members) out << "  " << to_string(m) << '\n';
    return kExitOk;
  }
  const auto cycles = enumerate_cycles(g);
  out << "cycles=" << cycles.size() << '\n';
  for (const auto& c : cycles) out << "  " << to_string(c) << '\n';
  out << "spanning_cycle=" << yes_no(has_spanning_cycle(g)) << '\n';
  return kExitOk;
}

struct CrossCheck {
  bool cycle_cover = false;
  bool flow = false;
  std::string cregular;
};

CrossCheck cross_check(const WeightedDigraph& g) {
  CrossCheck r;
  r.cycle_cover = is_doubly_stochasticable(g, DsMethod::cycle_cover).doubly_stochasticable;
  r.flow = is_doubly_stochasticable(g, DsMethod::flow).doubly_stochasticable;
  const long c = default_c(g);
  r.cregular = to_string(run_cregular(g, c).outcome);
  return r;
}

bool agrees(const CrossCheck& r) {
  return r.cycle_cover == r.flow && (r.cregular == "c_regular") == r.flow;
}

int cmd_oracle(const Context& ctx, bool requested, const std::string& sizes_text,
               std::size_t samples) {
  if (!requested) throw UsageError("oracle: pass --cross-check");
  auto& out = ctx.out;
  if (!ctx.common.input.empty()) {
    const WeightedDigraph g = ctx.load();
    if (classify_connectivity(g).kind != Connectivity::strongly_connected) {
      throw Error(ErrorCode::not_strongly_connected, "oracle: input must be strongly connected");
    }
    const auto r = cross_check(g);
    out << "cycle_cover=" << yes_no(r.cycle_cover) << " flow=" << yes_no(r.flow)
        << " cregular=" << r.cregular << '\n';
    out << "agree=" << yes_no(agrees(r)) << '\n';
    return agrees(r) ? kExitOk : kExitNegative;
  }
  Rng rng(ctx.common.seed);
  std::size_t disagreements = 0, positives = 0, total = 0;
  for (std::size_t n : parse_sizes(sizes_text)) {
    for (std::size_t k = 0; k < samples; ++k) {
      const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
      const auto g = random_strongly_connected(n, p, rng);
      const auto r = cross_check(g);
      ++total;
      if (r.flow) ++positives;
      if (!agrees(r)) {
        ++disagreements;
        out << "disagreement on:\n" << serialize_graph(g, GraphFormat::edge_list);
      }
    }
  }
  out << "samples=" << total << " doubly_stochasticable=" << positives
      << " disagreements=" << disagreements << '\n';
  return disagreements == 0 ? kExitOk : kExitNegative;
}

int cmd_bench(const Context& ctx, const std::string& sizes_text, std::size_t trials, double p) {
  const auto report = benchmark_rounds(parse_sizes(sizes_text), trials, ctx.common.seed, p);
  auto& out = ctx.out;
  out << "n,trials,mean_rounds,max_rounds,n^4\n";
  bool within = true;
  for (const auto& row : report.rows) {
    std::ostringstream mean;
    mean << std::fixed << std::setprecision(3) << row.mean_rounds;
    out << row.n << ',' << row.trials << ',' << mean.str() << ',' << row.max_rounds << ','
        << row.bound << '\n';
    within = within && row.max_rounds <= row.bound;
  }
  std::ostringstream exponent;
  exponent << std::fixed << std::setprecision(3) << report.fitted_exponent;
  out << "fitted_exponent=" << exponent.str() << '\n';
  out << "within_n^4=" << yes_no(within) << '\n';
  return within ? kExitOk : kExitNegative;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--input,-i", common.input, "Input graph file");
  cmd->add_option("--format,-f", common.format, "Graph format: json, dot, edge_list");
  cmd->add_option("--output,-o", common.output, "Write the resulting graph here");
  cmd->add_option("--trace", common.trace, "Write the round trace here");
  cmd->add_option("--trace-format", common.trace_format, "json or csv");
  cmd->add_option("--seed", common.seed, "Random seed");
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weight-balanced and doubly stochastic digraph toolkit", "wbds"};
  app.require_subcommand(1);
  CommonOptions common;

  auto* check = app.add_subcommand("check", "Connectivity, balanceability and DS verdicts");
  std::string method = "flow";
  check->add_option("--method", method, "flow or cycle_cover");

  auto* balance = app.add_subcommand("balance", "Run WBDA or WBMDA");
  std::string algo = "wbda", policy = "lowest-index";
  std::size_t max_rounds = 0;
  balance->add_option("--algo", algo, "wbda or wbmda");
  balance->add_option("--policy", policy, "lowest-index or replay=FILE");
  balance->add_option("--max-rounds", max_rounds, "Round limit (default n^5)");

  auto* dsify = app.add_subcommand("dsify", "Compute a doubly stochastic assignment");
  DsifyArgs ds;
  dsify->add_flag("--self-loops", ds.self_loops, "Balance, then pad with self-loops");
  dsify->add_flag("--cregular", ds.cregular, "Run the load/height protocol");
  dsify->add_option("--c", ds.c, "Target row sum, or auto for |E|-|V|+1");
  dsify->add_option("--rules", ds.rules, "extended or fixed-source");
  dsify->add_option("--schedule", ds.schedule, "Replay file for the load/height protocol");
  dsify->add_option("--policy", ds.policy, "Balancing policy for --self-loops");
  dsify->add_flag("--strict-guard", ds.strict_guard, "Strict backward-push guard");
  dsify->add_option("--max-steps", ds.max_steps, "Step limit (default 16 |V|^2 |E|)");

  auto* cycles = app.add_subcommand("cycles", "Cycles, principal and DS-cycle sets");
  bool principal = false, ds_set = false;
  auto* principal_flag = cycles->add_flag("--principal", principal, "Principal cycle set");
  cycles->add_flag("--ds-set", ds_set, "DS-cycle set")->excludes(principal_flag);

  auto* oracle = app.add_subcommand("oracle", "Cross-check the DS deciders");
  bool cross = false;
  std::string oracle_sizes = "3-6";
  std::size_t samples = 50;
  oracle->add_flag("--cross-check", cross, "Compare cycle cover, flow and protocol verdicts");
  oracle->add_option("--sizes", oracle_sizes, "Sizes for random samples, e.g. 3-6 or 4,5");
  oracle->add_option("--samples", samples, "Random samples per size");

  auto* bench = app.add_subcommand("bench", "WBMDA round-count benchmark");
  std::string bench_sizes = "4-10";
  std::size_t trials = 20;
  double edge_p = 0.3;
  bench->add_option("--sizes", bench_sizes, "e.g. 4-14 or 4,6,8");
  bench->add_option("--trials", trials, "Trials per size");
  bench->add_option("--edge-probability", edge_p, "Extra-edge probability");

  for (auto* cmd : {check, balance, dsify, cycles, oracle, bench}) add_common(cmd, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Context ctx{common, out};
  try {
    if (*check) return cmd_check(ctx, method);
    if (*balance) return cmd_balance(ctx, algo, policy, max_rounds);
    if (*dsify) return cmd_dsify(ctx, ds);
    if (*cycles) return cmd_cycles(ctx, principal, ds_set);
    if (*oracle) return cmd_oracle(ctx, cross, oracle_sizes, samples);
    if (*bench) return cmd_bench(ctx, bench_sizes, trials, edge_p);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::parse_error:
      case ErrorCode::duplicate_edge:
      case ErrorCode::bad_weight:
        return kExitUsage;
      default:
        return kExitNegative;
    }
  }
  return kExitUsage;
}

}  // namespace wbds
