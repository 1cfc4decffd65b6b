#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sigmarot/map_file.hpp"
#include "support/fixtures.hpp"
#include "support/proc.hpp"

#include <fstream>
#include <string>

using testproc::run_cmd;

namespace {

const std::string kBin = SIGMAROT_BIN;
const std::string kExample = std::string(SIGMAROT_DATA) + "/sigma_example.map";

std::string machine_block(const std::string& out) {
  auto b = out.find("[machine]\n");
  auto e = out.find("[/machine]\n");
  if (b == std::string::npos || e == std::string::npos) return {};
  return out.substr(b, e + 11 - b);
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("analyze report") {
  auto r = run_cmd(kBin + " analyze " + kExample + " --max-den 2");
  CHECK(r.status == 0);
  CHECK(machine_block(r.out) ==
        "[machine]\n"
        "attach = 0/1\n"
        "reach = 0/1 exact\n"
        "XF = [0/1, 1/1]\n"
        "N = 2\n"
        "X1 = [0/1, 1/2] p = 0\n"
        "X2 = [3/4, 1/1] p = 1\n"
        "markov = yes\n"
        "vertices = 3\n"
        "edges = 9\n"
        "I0 = [0/1, 0/1]\n"
        "I1 = [0/1, 1/1]\n"
        "I2 = empty\n"
        "Rot = [0/1, 1/1]\n"
        "components = 1\n"
        "exact = yes\n"
        "realized 0/1 = L 0/1 period 1 disp 0\n"
        "realized 1/2 = B 0 1/5 period 2 disp 1\n"
        "realized 1/1 = B 0 1/1 period 1 disp 1\n"
        "[/machine]\n");

  // Deterministic output.
  auto again = run_cmd(kBin + " analyze " + kExample + " --max-den 2");
  CHECK(again.out == r.out);

  auto js = run_cmd(kBin + " analyze " + kExample + " --json");
  CHECK(js.status == 0);
  CHECK(js.out.find("\"exact\": true") != std::string::npos);
  CHECK(js.out.find("\"markov\": true") != std::string::npos);
  CHECK(js.out.find("[machine]") == std::string::npos);
}

TEST_CASE("orbit bounds") {
  auto top = run_cmd(kBin + " rho " + kExample + " 'B 0 1'");
  CHECK(top.status == 0);
  CHECK(top.out == "rho = [1/1, 1/1] exact\n");

  auto half = run_cmd(kBin + " rho " + kExample + " 'B 0 1/5'");
  CHECK(half.status == 0);
  CHECK(half.out == "rho = [1/2, 1/2] exact\n");

  auto line = run_cmd(kBin + " rho " + kExample + " 'L 1/3'");
  CHECK(line.status == 0);
  CHECK(line.out == "rho = [0/1, 0/1] exact\n");

  auto bad = run_cmd(kBin + " rho " + kExample + " 'Z 1' 2>/dev/null");
  CHECK(bad.status == 1);
  CHECK(bad.out.empty());
}

TEST_CASE("periodic point lookup") {
  auto one = run_cmd(kBin + " periodic " + kExample + " 1/1");
  CHECK(one.status == 0);
  CHECK(one.out ==
        "x = B 0 1/1\n"
        "period = 1\n"
        "disp = 1\n"
        "verified = yes\n");

  auto half = run_cmd(kBin + " periodic " + kExample + " 1/2");
  CHECK(half.status == 0);
  CHECK(half.out.find("x = B 0 1/5\n") != std::string::npos);
  CHECK(half.out.find("verified = yes\n") != std::string::npos);

  auto zero = run_cmd(kBin + " periodic " + kExample + " 0");
  CHECK(zero.status == 0);
  CHECK(zero.out.find("x = L 0/1\n") != std::string::npos);

  auto out = run_cmd(kBin + " periodic " + kExample + " 2");
  CHECK(out.status == 1);
  CHECK(out.out.rfind("not found: ", 0) == 0);
}

TEST_CASE("graph export") {
  auto g = run_cmd(kBin + " graph " + kExample);
  CHECK(g.status == 0);
  CHECK(g.out ==
        "digraph G {\n"
        "  v0 [label=\"[0/1, 1/4]\"];\n"
        "  v1 [label=\"[1/4, 1/2]\"];\n"
        "  v2 [label=\"[3/4, 1/1]\"];\n"
        "  v0 -> v0 [label=\"0\"];\n"
        "  v0 -> v1 [label=\"0\"];\n"
        "  v0 -> v2 [label=\"0\"];\n"
        "  v1 -> v0 [label=\"0\"];\n"
        "  v1 -> v1 [label=\"0\"];\n"
        "  v1 -> v2 [label=\"0\"];\n"
        "  v2 -> v0 [label=\"1\"];\n"
        "  v2 -> v1 [label=\"1\"];\n"
        "  v2 -> v2 [label=\"1\"];\n"
        "}\n");

  // Writing to a file leaves stdout empty.
  auto f = run_cmd(kBin + " graph " + kExample + " --dot cli_graph_out.dot");
  CHECK(f.status == 0);
  CHECK(f.out.empty());
  std::ifstream in("cli_graph_out.dot");
  std::string file((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(file == g.out);

  // A map whose symbolic model is not exact still renders, but signals it.
  std::ofstream("cli_not_markov.map") << sigmarot::write_map(fixtures::make_not_markov());
  auto nm = run_cmd(kBin + " graph cli_not_markov.map 2>cli_not_markov.err");
  CHECK(nm.status == 2);
  CHECK(nm.out.rfind("digraph G {\n", 0) == 0);
  std::ifstream errin("cli_not_markov.err");
  std::string err((std::istreambuf_iterator<char>(errin)),
                  std::istreambuf_iterator<char>());
  CHECK(err.find("not exact: B 0 1/4 -> B 0 7/8 lands strictly inside a vertex") !=
        std::string::npos);
}

TEST_CASE("sample sweep") {
  auto s = run_cmd(kBin + " sweep " + kExample + " --samples 16 --iters 200");
  CHECK(s.status == 0);
  CHECK(s.out.rfind("point,lower,upper\n", 0) == 0);
  CHECK(count_lines(s.out) == 17);
  CHECK(s.out.find("L 0/1,0/1,0/1\n") != std::string::npos);

  auto f = run_cmd(kBin + " sweep " + kExample +
                   " --samples 8 --iters 100 --csv cli_sweep_out.csv");
  CHECK(f.status == 0);
  std::ifstream in("cli_sweep_out.csv");
  std::string file((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(file.rfind("point,lower,upper\n", 0) == 0);
  CHECK(count_lines(file) == 9);
}

TEST_CASE("cycle-mean oracle") {
  auto o = run_cmd(kBin + " oracle " + kExample + " --max-cycle-len 2");
  CHECK(o.status == 0);
  CHECK(o.out == "0/1\n1/2\n1/1\nPASS\n");

  auto d = run_cmd(kBin + " oracle " + kExample);
  CHECK(d.status == 0);
  CHECK(d.out == "0/1\n1/3\n1/2\n2/3\n1/1\nPASS\n");
}

TEST_CASE("errors") {
  auto miss = run_cmd(kBin + " analyze no_such_file.map 2>/dev/null");
  CHECK(miss.status == 1);
  auto nosub = run_cmd(kBin + " 2>/dev/null");
  CHECK(nosub.status != 0);
}
