// Drives the installed binary end to end: determinism, format, exit codes,
// and agreement with the library the binary links against.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "looptrees/bijections.hpp"
#include "looptrees/exactasym.hpp"
#include "looptrees/laws.hpp"
#include "looptrees/planetree.hpp"

using namespace looptrees;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(LOOPTREES_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Non-comment CSV data lines, header row dropped.
std::vector<std::string> csv_rows(const std::string& out) {
  std::vector<std::string> rows;
  std::stringstream ss(out);
  std::string line;
  bool header_seen = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '{') continue;
    if (line[0] == ' ' || line[0] == '}' || line[0] == '"') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::vector<double> split_csv(const std::string& row) {
  std::vector<double> out;
  std::stringstream ss(row);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::strtod(tok.c_str(), nullptr));
  return out;
}

}  // namespace

TEST_CASE("sample is a pure function of argv and seed") {
  const std::string args = "--seed 7 sample --law nu --a 0.5 --n 300 --count 5";
  auto r1 = run_cli(args);
  auto r2 = run_cli(args);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out == r2.out);

  std::stringstream ss(r1.out);
  std::string line;
  int trees = 0;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    PlaneTree t = PlaneTree::parse_line(line);
    CHECK(t.size() == 300);
    ++trees;
  }
  CHECK(trees == 5);

  auto r3 = run_cli("--seed 8 sample --law nu --a 0.5 --n 300 --count 5");
  CHECK(r3.out != r1.out);

  // global flags are accepted after the subcommand as well
  auto r4 = run_cli("sample --law nu --a 0.5 --n 300 --count 5 --seed 7");
  CHECK(r4.out == r1.out);
}

TEST_CASE("exact perimeter rows match the library") {
  auto r = run_cli("exact perimeter --model uipt --nmax 24");
  REQUIRE(r.exit_code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 24);
  for (std::size_t n : {1, 12, 24}) {
    auto vals = split_csv(rows[n - 1]);
    REQUIRE(vals.size() == 3);
    CHECK(vals[0] == static_cast<double>(n));
    CHECK(vals[1] == doctest::Approx(perimeter_pmf_uipt(n)).epsilon(1e-15));
  }
}

TEST_CASE("laws dump matches the law evaluator") {
  auto r = run_cli("laws dump --model typeI --a 0.3 --kmax 8");
  REQUIRE(r.exit_code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 9);
  for (long long k = 0; k <= 8; ++k) {
    auto vals = split_csv(rows[k]);
    CHECK(vals[1] == doctest::Approx(nu(0.3, k)).epsilon(1e-15));
  }

  auto rbar = run_cli("laws dump --model typeII --a 0.5 --kmax 4");
  REQUIRE(rbar.exit_code == 0);
  auto bar_rows = csv_rows(rbar.out);
  CHECK(split_csv(bar_rows[1])[1] == 0.0);
}

TEST_CASE("loop edge blocks match the bijection module") {
  std::ofstream f("cli_trees_in.txt");
  PlaneTree t = PlaneTree::from_preorder_degrees({2, 1, 0, 0});
  f << t.to_line() << "\n";
  f.close();

  auto r = run_cli("bij loop --in cli_trees_in.txt --bar");
  REQUIRE(r.exit_code == 0);
  LoopGraph g = loop_bar_of(t);
  std::stringstream ss(r.out);
  std::string line;
  std::size_t idx = 0;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::uint32_t u, v;
    REQUIRE(std::sscanf(line.c_str(), "%u %u", &u, &v) == 2);
    REQUIRE(idx < g.edges.size());
    CHECK(g.edges[idx] == std::make_pair(u, v));
    ++idx;
  }
  CHECK(idx == g.edges.size());
}

TEST_CASE("usage errors exit with code 2, computation never reached") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("bij loop").exit_code == 2);  // missing required --in
  CHECK(run_cli("report no-such-report").exit_code == 2);
  CHECK(run_cli("laws dump --a 1.7").exit_code == 2);
  CHECK(run_cli("--format xml laws constants").exit_code == 2);
}

TEST_CASE("missing input file is a computation error, exit 1") {
  CHECK(run_cli("bij loop --in /nonexistent/trees.txt").exit_code == 1);
}

TEST_CASE("--out writes files instead of stdout") {
  std::string dir = "cli_out_dir";
  std::remove((dir + "/laws_dump.csv").c_str());
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  auto r = run_cli("--out " + dir + " laws dump --model typeI --a 0.5 --kmax 3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(dir + "/laws_dump.csv");
  REQUIRE(f.good());
  std::string first;
  std::getline(f, first);
  CHECK(first.rfind("# looptree laws dump", 0) == 0);
}

TEST_CASE("report emits json with config and targets") {
  auto r = run_cli("report thm13");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"report\": \"thm13\"") != std::string::npos);
  CHECK(r.out.find("\"config\"") != std::string::npos);
  CHECK(r.out.find("c_alpha_down_target") != std::string::npos);
}
