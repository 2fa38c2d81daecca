// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "support.hpp"
#include "wbds/balance.hpp"
#include "wbds/characterization.hpp"
#include "wbds/cli.hpp"
#include "wbds/cregular.hpp"
#include "wbds/error.hpp"
#include "wbds/flow.hpp"
#include "wbds/generators.hpp"
#include "wbds/io.hpp"

using namespace wbds;
using namespace wbds::test;

namespace {

std::string data(const std::string& name) { return std::string(WBDS_DATA_DIR) + "/" + name; }

WeightedDigraph load(const std::string& name) {
  return parse_graph(read_file(data(name)), GraphFormat::json);
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

std::size_t max_degree(const WeightedDigraph& g) {
  const auto p = degree_profile(g);
  return std::max(*std::max_element(p.out_degree.begin(), p.out_degree.end()),
                  *std::max_element(p.in_degree.begin(), p.in_degree.end()));
}

bool same_updates(const RoundRecord& r, const std::vector<std::array<long, 3>>& expected) {
  if (r.updates.size() != expected.size()) return false;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const auto& u = r.updates[k];
    if (static_cast<long>(u.edge.from) != expected[k][0] ||
        static_cast<long>(u.edge.to) != expected[k][1] || u.new_weight != expected[k][2]) {
      return false;
    }
  }
  return true;
}

void fig4_replay(Outcome& o) {
  BalanceOptions options;
  options.schedule = parse_choice_schedule(read_file(data("fig4.choices")));
  const auto trace = run_wbda(load("fig2a.json"), options);
  std::vector<Rational> v;
  for (const auto& r : trace.records) v.push_back(r.lyapunov);
  o.require(trace.converged, "converged");
  o.require(trace.rounds() == 6, "6 rounds");
  o.require(v == std::vector<Rational>{6, 4, 4, 4, 4, 4, 0}, "Lyapunov trace 6,4,4,4,4,4,0");
  o.detail << "rounds=" << trace.rounds();
}

void fig7_replay(Outcome& o) {
  const auto g = load("fig6.json");
  BalanceOptions seven;
  seven.schedule = parse_choice_schedule(read_file(data("fig7.choices")));
  const auto a = run_wbmda(g, seven);
  o.require(a.converged && a.rounds() == 3, "3 rounds on the first replay");
  if (a.rounds() == 3) {
    o.require(same_updates(a.records[1], {{4, 2, 2}}), "round 1 update 4->2 := 2");
    o.require(same_updates(a.records[2], {{2, 1, 2}}), "round 2 update 2->1 := 2");
    o.require(same_updates(a.records[3], {{1, 0, 2}}), "round 3 update 1->0 := 2");
  }
  BalanceOptions eight;
  eight.schedule = parse_choice_schedule(read_file(data("fig8.choices")));
  const auto b = run_wbmda(g, eight);
  o.require(b.converged, "alternative replay converges");
  const auto& w = b.final_weights;
  o.require(w.weight(1, 0) == 2 && w.weight(4, 2) == 3 && w.weight(2, 3) == 2 &&
                w.weight(2, 1) == 2 && w.weight(3, 4) == 2 && w.weight(0, 2) == 1 &&
                w.weight(0, 4) == 1,
            "alternative replay final weights");
  o.detail << "rounds=" << a.rounds() << " alternative_rounds=" << b.rounds();
}

void fig10_replay(Outcome& o) {
  CRegularOptions options;
  options.rules = CRegularRules::fixed_source;
  options.schedule = parse_cregular_schedule(read_file(data("fig10.schedule")));
  const auto result = run_cregular(load("fig9.json"), 3, options);
  o.require(result.outcome == CRegularOutcome::c_regular, "c_regular verdict");
  o.require(result.iterations == 5, "5 iterations");
  if (result.assignment) {
    const auto& a = *result.assignment;
    for (Vertex v = 0; v < a.order(); ++v) {
      o.require(a.weighted_out_degree(v) == 3 && a.weighted_in_degree(v) == 3, "row/column sums 3");
    }
  }
  o.detail << "iterations=" << result.iterations;
}

void self_loop_pipeline(Outcome& o) {
  BalanceOptions options;
  options.schedule = parse_choice_schedule(read_file(data("fig4.choices")));
  const auto result = dsify_with_self_loops(load("fig2a.json"), options);
  const auto expected = rational_matrix({{"0", "1", "0", "0", "0"},
                                         {"0", "0", "1/2", "1/2", "0"},
                                         {"5/6", "0", "1/6", "0", "0"},
                                         {"1/6", "0", "1/6", "1/2", "1/6"},
                                         {"0", "0", "1/6", "0", "5/6"}});
  o.require(result.doubly_stochastic.adjacency() == expected, "matrix matches entry for entry");
  o.detail << "C_max=" << to_string(result.c_max);
}

void verdicts(Outcome& o) {
  const auto fig1 = load("fig1.json"), fig2a = load("fig2a.json"), fig2b = load("fig2b.json");
  for (DsMethod m : {DsMethod::flow, DsMethod::cycle_cover}) {
    o.require(is_weight_balanceable(fig1).balanceable, "fig1 balanceable");
    o.require(!is_doubly_stochasticable(fig1, m).doubly_stochasticable, "fig1 not DS-able");
    o.require(is_weight_balanceable(fig2a).balanceable, "fig2a balanceable");
    o.require(!is_doubly_stochasticable(fig2a, m).doubly_stochasticable, "fig2a not DS-able");
    o.require(is_weight_balanceable(fig2b).balanceable, "fig2b balanceable");
    const auto v = is_doubly_stochasticable(fig2b, m);
    o.require(v.doubly_stochasticable && v.certificate &&
                  is_doubly_stochastic(v.certificate->adjacency()),
              "fig2b DS-able with a valid certificate");
  }
  const auto cert = is_doubly_stochasticable(fig2b, DsMethod::cycle_cover).certificate;
  o.require(cert && cert->adjacency() == make_rational(1, 2) * two_regular_matrix(),
            "fig2b certificate is half the 2-regular matrix");
  const auto ds = ds_cycle_set(load("fig9.json"));
  o.require(ds && ds->cardinality() == 2, "ds(fig9) = 2");
}

void convergence(Outcome& o) {
  Rng rng(2024);
  std::size_t graphs = 0, worst = 0;
  for (; graphs < 500; ++graphs) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 3, 12));
    const auto g = with_random_weights(
        random_strongly_connected(n, std::uniform_real_distribution<double>(0.05, 0.5)(rng), rng), 10,
        rng);
    for (bool modified : {false, true}) {
      const auto trace = modified ? run_wbmda(g) : run_wbda(g);
      o.require(trace.converged, "converged within n^5");
      o.require(is_weight_balanced(trace.final_weights).is_weight_balanced, "weight-balanced");
      worst = std::max(worst, trace.rounds());
      for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const auto& r = trace.records[k];
        Rational total = 0;
        for (const auto& w : r.imbalance) total += w;
        o.require(sgn(total) == 0, "imbalances sum to zero");
        if (k > 0) o.require(r.lyapunov <= trace.records[k - 1].lyapunov, "V_wb non-increasing");
        for (const auto& e : r.weights.edges()) {
          o.require(sgn(r.weights.weight(e.from, e.to)) > 0, "weights positive");
        }
      }
    }
  }
  o.detail << "graphs=" << graphs << " runs=" << 2 * graphs << " max_rounds=" << worst;
}

// Bitmask digraph on n <= 5 vertices: bit i*n+j is edge i->j.
using Mask = std::uint32_t;

bool strongly_connected_mask(Mask mask, std::size_t n) {
  std::array<Mask, 5> out{}, in{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> (i * n + j) & 1u) {
        out[i] |= 1u << j;
        in[j] |= 1u << i;
      }
  auto reach = [n](const std::array<Mask, 5>& adj) {
    Mask seen = 1, frontier = 1;
    while (frontier) {
      Mask next = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (frontier >> v & 1u) next |= adj[v];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  };
  const Mask all = (1u << n) - 1;
  return reach(out) == all && reach(in) == all;
}

// True when no vertex relabelling yields a smaller mask.
bool canonical_mask(Mask mask, std::size_t n, const std::vector<std::vector<std::size_t>>& perms) {
  for (const auto& p : perms) {
    Mask image = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> (i * n + j) & 1u) image |= 1u << (p[i] * n + p[j]);
    if (image < mask) return false;
  }
  return true;
}

WeightedDigraph digraph_from_mask(Mask mask, std::size_t n) {
  WeightedDigraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (mask >> (i * n + j) & 1u)) g.add_edge(i, j);
  return g;
}

struct Tally {
  std::size_t graphs = 0, positives = 0, disagreements = 0;
};

void compare_deciders(const WeightedDigraph& g, Tally& t, Outcome& o) {
  const bool cc = is_doubly_stochasticable(g, DsMethod::cycle_cover).doubly_stochasticable;
  const bool fl = is_doubly_stochasticable(g, DsMethod::flow).doubly_stochasticable;
  const long c = default_c(g);
  const auto protocol = run_cregular(g, c);
  const bool cr = protocol.outcome == CRegularOutcome::c_regular;
  ++t.graphs;
  t.positives += fl;
  if (cc != fl || cr != fl || protocol.outcome == CRegularOutcome::max_steps_exceeded) {
    ++t.disagreements;
    o.require(false, "deciders disagree on\n" + serialize_graph(g, GraphFormat::edge_list));
  }
}

void oracle_equivalence(Outcome& o) {
  Tally exhaustive, sampled;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    Mask diagonal = 0;
    for (std::size_t i = 0; i < n; ++i) diagonal |= 1u << (i * n + i);
    const Mask limit = n * n == 32 ? ~Mask{0} : (Mask{1} << (n * n));
    for (Mask mask = 0; mask < limit; ++mask) {
      if (mask & diagonal) continue;
      if (!strongly_connected_mask(mask, n) || !canonical_mask(mask, n, perms)) continue;
      compare_deciders(digraph_from_mask(mask, n), exhaustive, o);
    }
  }
  Rng rng(77);
  for (std::size_t n : {6, 7}) {
    for (int k = 0; k < 300; ++k) {
      const double prob = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
      compare_deciders(random_strongly_connected(n, prob, rng), sampled, o);
    }
  }
  o.require(exhaustive.disagreements + sampled.disagreements == 0, "zero disagreements");
  o.detail << "exhaustive_classes=" << exhaustive.graphs << " (ds-able " << exhaustive.positives
           << ") random=" << sampled.graphs << " (ds-able " << sampled.positives
           << ") disagreements=" << exhaustive.disagreements + sampled.disagreements;
}

void normalization(Outcome& o) {
  Rng rng(88);
  std::size_t equal = 0, unequal = 0, total = 0;
  while (total < 1000) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
    const auto g = random_strongly_connected(n, std::uniform_real_distribution<double>(0, 0.6)(rng), rng);
    WeightedDigraph a(n);
    const auto ds = ds_cycle_set(g);
    if (ds && total % 2 == 0) {
      // Equal row sums: a C-regular assignment built from the DS-cycle set.
      a = c_regular_assignment_from_cycles(g, static_cast<long>(ds->cardinality()) + uniform_int(rng, 0, 4));
    } else {
      // Random cycle multiples on top of unit weights, then balanced by WBDA.
      a = g.with_unit_weights();
      for (const auto& c : enumerate_cycles(g)) {
        const long k = uniform_int(rng, 0, 3);
        if (k == 0) continue;
        WeightedDigraph part(n);
        for (const auto& e : c.edges()) part.add_edge(e.from, e.to, Rational(k));
        a = weighted_union(a, part);
      }
      a = run_wbda(a).final_weights;
    }
    if (!is_weight_balanced(a).is_weight_balanced) {
      o.require(false, "generator produced an unbalanced matrix");
      continue;
    }
    bool rows_equal = true;
    for (Vertex v = 1; v < n; ++v) rows_equal = rows_equal && a.weighted_out_degree(v) == a.weighted_out_degree(0);
    ++total;
    (rows_equal ? equal : unequal) += 1;
    o.require(is_doubly_stochastic(normalize_rows(a.adjacency())) == rows_equal,
              "phi(A) doubly stochastic iff row sums equal");
  }
  o.require(equal > 0 && unequal > 0, "both sides of the equivalence exercised");
  o.detail << "matrices=" << total << " equal_rows=" << equal << " unequal_rows=" << unequal;
}

void character_bounds(Outcome& o) {
  std::vector<WeightedDigraph> graphs{load("fig2b.json"), load("fig9.json"), triangle()};
  Rng rng(99);
  for (int k = 0; k < 3000; ++k) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 8));
    graphs.push_back(random_strongly_connected(n, std::uniform_real_distribution<double>(0, 0.8)(rng), rng));
  }
  std::size_t checked = 0, violations = 0;
  for (const auto& g : graphs) {
    const auto ds = ds_cycle_set(g);
    if (!ds) continue;
    ++checked;
    const std::size_t d = ds->cardinality();
    const auto p = principal_cycle_set(g);
    bool members_ok = generates(*ds, g) && generates(p, g);
    for (const auto& m : ds->members) members_ok = members_ok && m.spanning;
    const bool ok = members_ok && max_degree(g) <= d && d <= g.edge_count() - g.order() + 1 &&
                    d >= p.cardinality();
    violations += !ok;
  }
  o.require(violations == 0, "zero bound violations");
  o.require(checked >= 500, "at least 500 DS-able graphs checked");
  o.detail << "ds_able_graphs=" << checked << " violations=" << violations;
}

void birkhoff(Outcome& o) {
  Rng rng(111);
  std::size_t max_terms = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    RationalMatrix a(n);
    Rational remaining = 1;
    const int k = static_cast<int>(uniform_int(rng, 1, 8));
    for (int s = 0; s < k; ++s) {
      std::vector<std::size_t> sigma(n);
      std::iota(sigma.begin(), sigma.end(), std::size_t{0});
      std::shuffle(sigma.begin(), sigma.end(), rng);
      Rational lambda = remaining;
      if (s + 1 < k) lambda = remaining * make_rational(uniform_int(rng, 1, 6), 7);
      remaining -= lambda;
      for (std::size_t i = 0; i < n; ++i) a(i, sigma[i]) += lambda;
    }
    const auto terms = birkhoff_decompose(a);
    RationalMatrix sum(n);
    for (const auto& term : terms) sum += term.coefficient * term.permutation;
    o.require(sum == a, "exact recombination");
    o.require(terms.size() <= (n - 1) * (n - 1) + 1, "term count bound");
    max_terms = std::max(max_terms, terms.size());
  }
  o.detail << "matrices=200 max_terms=" << max_terms;
}

void complexity(Outcome& o) {
  std::vector<std::size_t> sizes;
  for (std::size_t n = 4; n <= 14; ++n) sizes.push_back(n);
  const auto report = benchmark_rounds(sizes, 50, 2024);
  std::size_t worst_ratio_n = 0;
  double worst_ratio = 0;
  for (const auto& row : report.rows) {
    o.require(row.max_rounds <= row.bound, "max rounds within n^4 at n=" + std::to_string(row.n));
    const double ratio = static_cast<double>(row.max_rounds) / static_cast<double>(row.bound);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_ratio_n = row.n;
    }
  }
  o.detail << std::fixed << std::setprecision(3) << "fitted_exponent=" << report.fitted_exponent
           << " worst max/n^4=" << worst_ratio << " at n=" << worst_ratio_n;
}

void determinism(Outcome& o) {
  const std::string tmp = std::filesystem::temp_directory_path().string() + "/wbds_acceptance_";
  const std::vector<std::vector<std::string>> commands{
      {"check", "-i", data("fig2b.json"), "--seed", "5"},
      {"balance", "-i", data("fig2a.json"), "--algo", "wbmda", "--seed", "5", "--trace",
       tmp + "trace.json"},
      {"dsify", "--cregular", "--c", "auto", "-i", data("fig9.json"), "--seed", "5"},
      {"dsify", "--self-loops", "-i", data("fig2a.json"), "--seed", "5", "-o", tmp + "ds.json"},
      {"cycles", "--principal", "-i", data("fig2b.json"), "--seed", "5"},
      {"oracle", "--cross-check", "--sizes", "3-6", "--samples", "15", "--seed", "5"},
      {"bench", "--sizes", "4-8", "--trials", "5", "--seed", "5"},
  };
  for (const auto& args : commands) {
    std::string outputs[2];
    for (auto& text : outputs) {
      std::ostringstream out, err;
      const int code = cli_main(args, out, err);
      text = std::to_string(code) + '\n' + out.str() + err.str();
      for (const char* f : {"trace.json", "ds.json"}) {
        try {
          text += read_file(tmp + f);
        } catch (const Error&) {
        }
      }
    }
    o.require(outputs[0] == outputs[1], "byte-identical output for '" + args[0] + "'");
  }
  o.detail << "commands=" << commands.size();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "WBDA six-round replay on fig2a", 1, fig4_replay},
      {2, "WBMDA replays on fig6", 1, fig7_replay},
      {3, "load/height replay on fig9 with C=3", 1, fig10_replay},
      {4, "self-loop doubly stochastic pipeline on fig2a", 1, self_loop_pipeline},
      {5, "characterization verdicts", 1e9, verdicts},
      {6, "convergence property suite", 60, convergence},
      {7, "DS decider equivalence", 600, oracle_equivalence},
      {8, "row normalization equivalence", 30, normalization},
      {9, "DS-character bounds", 1e9, character_bounds},
      {10, "Birkhoff recombination", 1e9, birkhoff},
      {11, "WBMDA round-count benchmark", 1e9, complexity},
      {12, "CLI determinism", 1e9, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) o.require(false, "time limit exceeded");
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.title
              << "  [" << std::fixed << std::setprecision(2) << seconds << " s]  "
              << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
