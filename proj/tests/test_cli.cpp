#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opm/json_io.hpp"
#include "opm/families.hpp"
#include "opm/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <cmath>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace opm;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(OPM4_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("gen emits exact matrices") {
  const auto r = run_cli("gen grover");
  CHECK(r.code == 0);
  CHECK(matrix_from_json(Json::parse(r.out)) == grover());

  const auto r2 = run_cli("gen X1 --x 2/5 --z 4/5");
  CHECK(r2.code == 0);
  const Mat want = family_element({FamilyLetter::X, 1},
                                  {Scalar::exact(2, 5), Scalar::exact(4, 5)});
  CHECK(matrix_from_json(Json::parse(r2.out)) == want);

  // Decimal inputs snap to the same exact member.
  const auto r3 = run_cli("gen X1 --x 0.4 --z 0.8");
  CHECK(r3.code == 0);
  CHECK(matrix_from_json(Json::parse(r3.out)) == want);
}

TEST_CASE("gen rejects off-conic points with exit 2") {
  const auto r = run_cli("gen X1 --x 1/2 --z 0");
  CHECK(r.code == 2);
  const auto r2 = run_cli("gen nosuch");
  CHECK(r2.code == 2);
}

TEST_CASE("classify exit codes and tags") {
  const auto path = temp_file("opm4_cli_grover.json");
  REQUIRE(run_cli("gen grover --out " + path.string()).code == 0);
  const auto ok = run_cli("classify --in " + path.string());
  CHECK(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j.at("tag") == "permutative");
  CHECK(j.at("witness").at("family") == "X1");
  CHECK(j.at("witness").at("prefix") == "(34)");

  const auto ones = temp_file("opm4_cli_ones.json");
  write_file(ones, "[[1,1,1,1],[1,1,1,1],[1,1,1,1],[1,1,1,1]]");
  CHECK(run_cli("classify --in " + ones.string()).code == 3);

  const auto bad = temp_file("opm4_cli_bad.json");
  write_file(bad, "this is not json");
  CHECK(run_cli("classify --in " + bad.string()).code == 2);
  std::filesystem::remove(path);
  std::filesystem::remove(ones);
  std::filesystem::remove(bad);
}

TEST_CASE("check report round-trips emitted flags") {
  const auto path = temp_file("opm4_cli_x3.json");
  REQUIRE(run_cli("gen X3 --x 1 --z 0 --out " + path.string()).code == 0);
  const auto r = run_cli("check --in " + path.string());
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("orthogonal") == true);
  CHECK(j.at("permutative") == true);
  CHECK(j.at("backend") == "exact");
  CHECK(j.at("strongly_quadrangular") == true);
  std::filesystem::remove(path);
}

TEST_CASE("decompose reports the printed coefficients") {
  const auto path = temp_file("opm4_cli_closing.json");
  write_file(path, matrix_to_json(closing_example()).dump());
  const auto r = run_cli("decompose --in " + path.string());
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("in_span") == true);
  CHECK(j.at("subspaces") == Json::array({1, 2, 5}));
  const PermLinComb comb = comb_from_json(j.at("combination"));
  CHECK(comb.size() == 7);
  CHECK(comb.coeff(parse_cycles("(24)"))->rat() == Rat(9, 11));
  CHECK(j.at("six_split").size() == 4);
  std::filesystem::remove(path);
}

TEST_CASE("four-permutation expression appears for permutative members") {
  const auto path = temp_file("opm4_cli_g2.json");
  REQUIRE(run_cli("gen grover --out " + path.string()).code == 0);
  const auto r = run_cli("decompose --in " + path.string());
  const Json j = Json::parse(r.out);
  REQUIRE(j.contains("four_permutations"));
  CHECK(j.at("four_permutations").at("prefix") == "(34)");
  const PermLinComb four = comb_from_json(j.at("four_permutations").at("terms"));
  CHECK(four.coeff(parse_cycles("(34)"))->rat() == Rat(-1, 2));
  std::filesystem::remove(path);
}

TEST_CASE("trig sweep emits nine rows at quarter-turn steps") {
  const auto r = run_cli(
      "sweep X1theta --from -3.14159265358979312 --to 3.14159265358979312 "
      "--step 0.78539816339744828");
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 10);  // header + 9 rows
}

TEST_CASE("rational sweep and bad ranges") {
  const auto r = run_cli("sweep X1 --r 1,2,3");
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 4);
  CHECK(r.out.find("2/5") != std::string::npos);  // r=3 row entries
  CHECK(run_cli("sweep X1 --r \"\"").code == 2);
  CHECK(run_cli("sweep X1theta --from 1 --to 0 --step 0.5").code == 2);
  CHECK(run_cli("sweep X1theta --from 0 --to 1 --step 0").code == 2);
}

TEST_CASE("verify is deterministic and exits zero on success") {
  const auto p1 = temp_file("opm4_cli_r1.json");
  const auto p2 = temp_file("opm4_cli_r2.json");
  const auto a = run_cli("verify --seed 11 --samples 20 --json " + p1.string());
  CHECK(a.code == 0);
  const auto b = run_cli("verify --seed 11 --samples 20 --json " + p2.string());
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  std::ifstream f1(p1), f2(p2);
  const std::string s1((std::istreambuf_iterator<char>(f1)), {});
  const std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  CHECK_FALSE(s1.empty());
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("partition lists six classes") {
  const auto r = run_cli("partition");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  REQUIRE(j.size() == 6);
  CHECK(j[0] == Json::array({"id", "(12)(34)", "(13)(24)", "(14)(23)"}));
}

TEST_CASE("no-snap keeps decimal input on the approx backend") {
  const auto snapped = run_cli("gen X1 --x 0.4 --z 0.8");
  CHECK(matrix_from_json(Json::parse(snapped.out)).is_exact());
  const auto raw = run_cli("--no-snap gen X1 --x 0.4 --z 0.8");
  CHECK(raw.code == 0);
  CHECK_FALSE(matrix_from_json(Json::parse(raw.out), false).is_exact());
}

TEST_CASE("classify rejects non-4x4 input with a usage error") {
  const auto path = temp_file("opm4_cli_small.json");
  write_file(path, "[[\"1\",\"0\"],[\"0\",\"1\"]]");
  CHECK(run_cli("classify --in " + path.string()).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("trig sweep columns: residuals below 1e-12, determinant one") {
  const auto r = run_cli(
      "sweep X1theta --from -3.14159265358979312 --to 3.14159265358979312 "
      "--step 0.78539816339744828");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 20);
    CHECK(std::fabs(std::stod(cells[17]) - 1.0) < 1e-12);  // det
    CHECK(std::stod(cells[18]) < 1e-12);                   // residual
    CHECK(cells[19] == "1");                               // permutative
  }
  CHECK(rows == 9);
}
