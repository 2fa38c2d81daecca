#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "wbds/cli.hpp"
#include "wbds/io.hpp"

using namespace wbds;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(WBDS_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wbds_cli_" + name)).string();
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(run({"check", "-i", data("fig2b.json")}).code == kExitOk);
  const auto fig1 = run({"check", "-i", data("fig1.json")});
  CHECK(fig1.code == kExitNegative);
  CHECK(fig1.out.find("doubly_stochasticable=false") != std::string::npos);
  CHECK(run({"check", "-i", data("fig2a.json"), "--method", "cycle_cover"}).code == kExitNegative);
  CHECK(run({"check", "-i", data("fig2b.json"), "--method", "bogus"}).code == kExitUsage);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"check"}).code == kExitUsage);
  CHECK(run({"balance", "-i", data("fig2a.json"), "--max-rounds", "x"}).code == kExitUsage);
  const std::string bad = temp_path("dup.txt");
  write_file(bad, "0 1\n0 1\n");
  const auto r = run({"check", "-i", bad});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("balance") {
  const auto r = run({"balance", "-i", data("fig2a.json"), "--algo", "wbda", "--policy",
                      "replay=" + data("fig4.choices")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("rounds=6") != std::string::npos);
  CHECK(r.out.find("V_wb=6,4,4,4,4,4,0") != std::string::npos);
  const auto w = run({"balance", "-i", data("fig6.json"), "--algo", "wbmda", "--policy",
                      "replay=" + data("fig7.choices")});
  CHECK(w.code == kExitOk);
  CHECK(w.out.find("rounds=3") != std::string::npos);
  CHECK(run({"balance", "-i", data("fig2a.json"), "--max-rounds", "2"}).code == kExitNegative);
  CHECK(run({"balance", "-i", data("fig1.json"), "--algo", "nope"}).code == kExitUsage);
}

TEST_CASE("balance writes graph and trace files") {
  const std::string out = temp_path("balanced.json");
  const std::string trace = temp_path("trace.csv");
  REQUIRE(run({"balance", "-i", data("fig2a.json"), "-o", out, "--trace", trace}).code == kExitOk);
  const auto g = parse_graph(read_file(out), GraphFormat::json);
  CHECK(g.weight(0, 1) == 6);
  CHECK(read_file(trace).rfind("round,V_wb,modified_edges\n", 0) == 0);
}

TEST_CASE("dsify") {
  const auto loops = run({"dsify", "--self-loops", "-i", data("fig2a.json")});
  CHECK(loops.code == kExitOk);
  CHECK(loops.out.find("C_max=6") != std::string::npos);
  CHECK(loops.out.find("is_doubly_stochastic=true") != std::string::npos);
  const auto replay = run({"dsify", "--cregular", "--c", "3", "--rules", "fixed-source",
                           "--schedule", data("fig10.schedule"), "-i", data("fig9.json")});
  CHECK(replay.code == kExitOk);
  CHECK(replay.out.find("iterations=5") != std::string::npos);
  CHECK(run({"dsify", "--cregular", "--c", "4", "-i", data("fig2a.json")}).code == kExitNegative);
  CHECK(run({"dsify", "-i", data("fig2a.json")}).code == kExitUsage);
  CHECK(run({"dsify", "--cregular", "--c", "three", "-i", data("fig9.json")}).code == kExitUsage);
}

TEST_CASE("cycles and oracle") {
  const auto principal = run({"cycles", "--principal", "-i", data("fig2b.json")});
  CHECK(principal.code == kExitOk);
  CHECK(principal.out.find("p(G)=2") != std::string::npos);
  CHECK(run({"cycles", "--ds-set", "-i", data("fig2a.json")}).code == kExitNegative);
  CHECK(run({"cycles", "--ds-set", "--principal", "-i", data("fig2a.json")}).code == kExitUsage);
  CHECK(run({"oracle", "--cross-check", "-i", data("fig9.json")}).code == kExitOk);
  const auto sampled = run({"oracle", "--cross-check", "--sizes", "3-4", "--samples", "10"});
  CHECK(sampled.code == kExitOk);
  CHECK(sampled.out.find("disagreements=0") != std::string::npos);
}

TEST_CASE("runs are byte-for-byte deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"bench", "--sizes", "4-6", "--trials", "3", "--seed", "9"},
      {"oracle", "--cross-check", "--sizes", "4", "--samples", "5", "--seed", "3"},
      {"balance", "-i", data("fig6.json"), "--algo", "wbmda"},
  };
  for (const auto& c : commands) {
    const auto a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
