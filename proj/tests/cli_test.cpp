// End-to-end checks of the coxlab binary: exit codes, the format surfaces,
// and the stability of the table renderer. The binary path and the golden
// directory come from compile definitions set by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#ifndef COXLAB_BIN
#error "COXLAB_BIN must point at the coxlab executable"
#endif
#ifndef COXLAB_GOLDEN_DIR
#error "COXLAB_GOLDEN_DIR must point at tests/golden"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "cannot open " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int counter() {
  static int n = 0;
  return ++n;
}

// Runs the tool through the shell, capturing both streams.
RunResult run(const std::string& args, const std::string& env = "") {
  const std::string tag = std::to_string(counter());
  const std::string out_path = "/tmp/coxlab_cli_test_" + tag + ".out";
  const std::string err_path = "/tmp/coxlab_cli_test_" + tag + ".err";
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(COXLAB_BIN) + " " + args + " > " + out_path + " 2> " + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string write_temp(const std::string& content) {
  const std::string path = "/tmp/coxlab_cli_diagram_" + std::to_string(counter()) + ".cox";
  std::ofstream out(path);
  out << content;
  return path;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with 2 and a diagnostic") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("certify").exit_code == 2);
  CHECK(run("signature --bogus-flag").exit_code == 2);

  RunResult none = run("signature");
  CHECK(none.exit_code == 2);
  CHECK(none.err.find("--file or --catalog") != std::string::npos);

  std::string path = write_temp("rank 1\n");
  RunResult both = run("signature -f " + path + " --catalog spherical:A --param n=2");
  CHECK(both.exit_code == 2);

  CHECK(run("signature --catalog spherical").exit_code == 2);
  CHECK(run("signature --catalog no_such_table:X1").exit_code == 2);
  CHECK(run("signature --catalog spherical:H3 --param p=x").exit_code == 2);
  CHECK(run("tables no_such_table").exit_code == 2);
  CHECK(run("signature --catalog spherical:H3 --format dot").exit_code == 2);
  CHECK(run("sweep --catalog examples_dim4:E6").exit_code == 2);

  RunResult bad = run("signature -f " + write_temp("rank 2\nedge 1 2 1\n"));
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("I/O failures exit with 3") {
  RunResult missing = run("signature -f /tmp/coxlab_cli_no_such_file.cox");
  CHECK(missing.exit_code == 3);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  CHECK(run("signature --catalog spherical:H3 --out /tmp/no_such_dir_xyz/out.txt").exit_code == 3);
}

TEST_CASE("help requests succeed") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("signature --help").exit_code == 0);
}

TEST_CASE("classify reports the affine triangle") {
  std::string path = write_temp("rank 3\nedge 1 2 3\nedge 1 3 3\nedge 2 3 3\n");
  RunResult r = run("classify -f " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("kind: Affine") != std::string::npos);
  CHECK(r.out.find("name: Ã_2") != std::string::npos);

  RunResult j = run("classify -f " + path + " --format json");
  CHECK(j.exit_code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["components"][0]["kind"] == "Affine");
  CHECK(parsed["components"][0]["name"] == "Ã_2");

  // Components are reported separately with 1-based node sets.
  std::string two = write_temp("rank 5\nedge 1 2 5\nedge 2 3 3\nedge 4 5 4\n");
  RunResult t = run("classify -f " + two);
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("component {1, 2, 3}: Spherical H_3") != std::string::npos);
  CHECK(t.out.find("component {4, 5}: Spherical I_2(4)") != std::string::npos);
}

TEST_CASE("signature prints the exact determinant and inertia") {
  RunResult r = run("signature --catalog examples_dim8:X2 --format csv");
  CHECK(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "det_exact,det_float,sig_p,sig_q,sig_r");
  CHECK(ls[1].find("0.201626,8,2,0") != std::string::npos);

  // The precision flag and the environment override change the float field.
  RunResult p = run("signature --catalog examples_dim8:X2 --format csv --precision 9");
  CHECK(p.out.find("0.201626105") != std::string::npos);
  RunResult e = run("signature --catalog examples_dim8:X2 --format csv", "COXLAB_PRECISION=9");
  CHECK(e.out.find("0.201626105") != std::string::npos);
}

TEST_CASE("certify ghc produces a passing JSON certificate for the flagship example") {
  RunResult r = run("certify ghc --catalog examples_dim4:E1 --param p=11 --format json");
  CHECK(r.exit_code == 0);
  auto cert = nlohmann::json::parse(r.out);
  CHECK(cert["kind"] == "ghc");
  bool saw_signature = false;
  for (const auto& check : cert["checks"]) {
    CHECK(check["pass"] == true);
    if (check["name"] == "signature") {
      saw_signature = true;
      CHECK(check["evidence"].get<std::string>().find("(4,2,0)") != std::string::npos);
    }
  }
  CHECK(saw_signature);
  CHECK(cert.contains("conclusion"));
}

TEST_CASE("a failing certificate exits with 1 but still reports") {
  std::string path = write_temp("rank 3\nedge 1 2 3\nedge 1 3 3\nedge 2 3 3\n");
  RunResult r = run("certify ghc -f " + path + " --format json");
  CHECK(r.exit_code == 1);
  auto cert = nlohmann::json::parse(r.out);
  CHECK(cert["passed"] == false);
}

TEST_CASE("certify qf passes on a quasi-Fuchsian catalog entry") {
  RunResult r = run(
      "certify qf --catalog barbot2_Quasi_Fuchsian_dim4:T1 --param p=7 --param q=13");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result: certified") != std::string::npos);
}

TEST_CASE("certify disconnected passes on a region point") {
  RunResult r = run(
      "certify disconnected --catalog barbot2_dim4:F1 --param p=9 --param q=20 --format csv");
  CHECK(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() >= 2);
  CHECK(ls[0] == "check,pass,evidence");
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i].find(",1,") != std::string::npos);
}

TEST_CASE("lambda reports the quadratic and the factorization identity") {
  RunResult r = run("lambda --catalog barbot2_dim4:F1 --param p=9 --param q=20 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["factorization"]["holds"] == true);
  CHECK(j["roots"].is_array());
  double l1 = std::stod(j["roots"][0]["float"].get<std::string>());
  double l2 = std::stod(j["roots"][1]["float"].get<std::string>());
  CHECK(l1 > 0.0);
  CHECK(l2 > l1);
}

TEST_CASE("sweep emits one CSV row per parameter value") {
  RunResult r = run("sweep --catalog examples_dim4:E6 --from 10 --to 13 --format csv");
  CHECK(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "p,det_exact,det_float,sig_p,sig_q,sig_r,verdict");
  CHECK(ls[1].find("10,0,0.000000,4,1,1,degenerate") == 0);
  CHECK(ls[2].find("0.834557,4,2,0,ghc") != std::string::npos);
}

TEST_CASE("region marks the five low points") {
  RunResult r = run("region --pmax 13 --format csv");
  CHECK(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(!ls.empty());
  CHECK(ls[0] == "p,q,det_exact,det_float,sig_p,sig_q,sig_r,verdict");
  int rl = 0, boundary = 0;
  for (const auto& line : ls) {
    if (line.find(",R_L") != std::string::npos) ++rl;
    if (line.find(",boundary") != std::string::npos) ++boundary;
  }
  CHECK(rl == 5);
  CHECK(boundary == 1);  // (10,10)
  CHECK(run("region --pmax 9 --qmax 10 --format csv").out.find("9,10") != std::string::npos);
}

TEST_CASE("orbit evidence is deterministic JSON") {
  const std::string args =
      "orbit --catalog examples_dim4:E1 --param p=11 --length 4 "
      "--light-samples 50 --tiling-samples 20 --seed 7 --format json";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["ball_sizes"].size() == 5);
  CHECK(j["violations"]["lemma_light"] == 0);
  CHECK(j["violations"]["tiling"] == 0);
  CHECK(j["seed"] == 7);

  RunResult csv = run(
      "orbit --catalog examples_dim4:E1 --param p=11 --length 4 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(lines_of(csv.out)[0] == "x0,x1,x2,x3,x4,x5");
}

TEST_CASE("catalog lists tables, items, and details") {
  RunResult all = run("catalog");
  CHECK(all.exit_code == 0);
  CHECK(all.out.find("examples_dim4") != std::string::npos);
  CHECK(all.out.find("lanner") != std::string::npos);

  RunResult one = run("catalog --catalog examples_dim8 --format csv");
  CHECK(one.exit_code == 0);
  auto ls = lines_of(one.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[1] == "examples_dim8,X1,X1");

  RunResult item = run("catalog --catalog examples_dim4:E1");
  CHECK(item.exit_code == 0);
  CHECK(item.out.find("param p 11") != std::string::npos);

  RunResult dot = run("catalog --catalog spherical:F4 --format dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.out.find("graph coxeter {") == 0);
  CHECK(dot.out.find("label=\"4\"") != std::string::npos);
}

TEST_CASE("nerve formats: text, csv, dot") {
  RunResult txt = run("nerve --catalog examples_dim4:E1 --param p=11");
  CHECK(txt.exit_code == 0);
  CHECK(txt.out.find("join sphere: S^3") != std::string::npos);

  RunResult csv = run("nerve --catalog examples_dim4:E1 --param p=11 --format csv");
  auto ls = lines_of(csv.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "dim,count");
  CHECK(ls[4] == "3,9");

  RunResult dot = run("nerve --catalog spherical:H3 --format dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.out.find("graph") == 0);
}

TEST_CASE("moussong reports witnesses") {
  std::string path = write_temp("rank 3\nedge 1 2 3\nedge 1 3 3\nedge 2 3 3\n");
  RunResult r = run("moussong -f " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("hyperbolic: no") != std::string::npos);
  CHECK(r.out.find("affine subset: {1, 2, 3}") != std::string::npos);

  RunResult h = run("moussong --catalog examples_dim4:E1 --param p=11 --format json");
  auto j = nlohmann::json::parse(h.out);
  CHECK(j["hyperbolic"] == true);
}

TEST_CASE("tables all matches the checked-in golden file") {
  RunResult r = run("tables all");
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(std::string(COXLAB_GOLDEN_DIR) + "/tables_all.txt"));
  RunResult again = run("tables all");
  CHECK(r.out == again.out);

  const std::string out_path = "/tmp/coxlab_cli_tables_" + std::to_string(counter()) + ".txt";
  RunResult to_file = run("tables examples_dim8 --out " + out_path);
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(out_path).find("0.201626") != std::string::npos);
  std::remove(out_path.c_str());
}
