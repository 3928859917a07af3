#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the built CLI with stderr dropped; stdout is the machine payload.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QWIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string temp_path(const char* name) {
  return std::string("/tmp/qwit_cli_test_") + name;
}

}  // namespace

TEST_CASE("state kay reports PPT flags as JSON") {
  const RunResult r = run_cli("state kay --a 2 --ppt");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["family"] == "kay");
  CHECK(j["params"]["a"] == 2.0);
  CHECK(j["trace"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(j["hermitian"] == true);
  REQUIRE(j["ppt"].size() == 3);
  CHECK(j["ppt"][0] == true);
  CHECK(j["ppt"][1] == true);
  CHECK(j["ppt"][2] == true);
  CHECK_FALSE(j.contains("eigenvalues"));
}

TEST_CASE("state kye reports the singular eigenvalue at bc = 1") {
  const RunResult r = run_cli("state kye --b 1 --c 1 --eigs");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["eigenvalues"].size() == 8);
  CHECK(std::abs(j["min_eigenvalue"].get<double>()) <= 1e-10);
  double sum = 0.0;
  for (const auto& v : j["eigenvalues"]) sum += v.get<double>();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state precondition violations exit with code 2") {
  CHECK(run_cli("state kay --a 1.5").exit_code == 2);
  CHECK(run_cli("state kye --b 1 --c 0.5").exit_code == 2);
  CHECK(run_cli("state kye --b -1 --c -1").exit_code == 2);
  CHECK(run_cli("state kay").exit_code == 2);  // missing --a
}

TEST_CASE("eval reproduces the Kay closed form and annotates it") {
  const RunResult r = run_cli("eval --witness W1 --state kay:a=2.5");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["witness"] == "W1");
  CHECK(j["expectation"].get<double>() ==
        doctest::Approx(-0.09383632135605446).epsilon(1e-12));
  CHECK(j["detected"] == true);
  CHECK(j["closed_form_diff"].get<double>() <= 1e-12);
  CHECK(j["ppt"][0] == true);
}

TEST_CASE("eval reproduces the Kye closed form, case-insensitively") {
  const RunResult r = run_cli("eval --witness w2 --state kye:b=1,c=1");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["expectation"].get<double>() ==
        doctest::Approx(-0.41421356237309515).epsilon(1e-12));
  CHECK(j["detected"] == true);
  CHECK(j["closed_form"].get<double>() ==
        doctest::Approx(-0.41421356237309515).epsilon(1e-12));
}

TEST_CASE("eval without a closed form omits the annotation and keeps flags consistent") {
  const RunResult r = run_cli("eval --witness W2 --state kay:a=2.5");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK_FALSE(j.contains("closed_form"));
  CHECK(j["detected"].get<bool>() == (j["expectation"].get<double>() < 0.0));
}

TEST_CASE("eval rejects unknown witnesses, families, and parameters") {
  CHECK(run_cli("eval --witness W9 --state kay:a=2.5").exit_code == 2);
  CHECK(run_cli("eval --witness W1 --state foo:a=2.5").exit_code == 2);
  CHECK(run_cli("eval --witness W1 --state kay:a=oops").exit_code == 2);
  CHECK(run_cli("eval --witness W1 --state kay:a=2.5,z=1").exit_code == 2);
  CHECK(run_cli("eval --witness W1 --state kay").exit_code == 2);
  CHECK(run_cli("eval --witness W1 --state kye:b=1").exit_code == 2);
}

TEST_CASE("eval CSV and JSON carry identical numeric values") {
  const RunResult jr = run_cli("eval --witness W1 --state kay:a=2.2 --format json");
  const RunResult cr = run_cli("eval --witness W1 --state kay:a=2.2 --format csv");
  REQUIRE(jr.exit_code == 0);
  REQUIRE(cr.exit_code == 0);
  const json j = json::parse(jr.out);
  const auto lines = split_lines(cr.out);
  REQUIRE(lines.size() == 2);
  const auto header = split_csv(lines[0]);
  const auto row = split_csv(lines[1]);
  REQUIRE(header.size() == row.size());
  auto field = [&](const std::string& name) {
    for (size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return row[k];
    FAIL("missing CSV column " << name);
    return std::string();
  };
  // Shortest round-trip text parses back to the exact same double.
  CHECK(std::stod(field("expectation")) == j["expectation"].get<double>());
  CHECK(std::stod(field("closed_form")) == j["closed_form"].get<double>());
  CHECK(std::stod(field("param_a")) == j["params"]["a"].get<double>());
  CHECK(field("detected") == (j["detected"].get<bool>() ? "true" : "false"));
  CHECK(field("witness") == j["witness"].get<std::string>());
  CHECK(field("param_b").empty());
}

TEST_CASE("scan kay writes CSV records and brackets the threshold") {
  const std::string path = temp_path("kay_scan.csv");
  const RunResult r =
      run_cli("scan kay --a-min 2.7 --a-max 2.9 --steps 101 --out " + path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("scan kay: 101 points") != std::string::npos);
  CHECK(r.out.find("boundary bracket [2.828") != std::string::npos);
  const auto lines = split_lines(slurp(path));
  REQUIRE(lines.size() == 102);  // header + one row per grid point
  CHECK(lines[0] ==
        "family,param_a,param_b,param_c,witness,expectation,detected,ppt_q1,ppt_q2,ppt_q3");
  const auto first = split_csv(lines[1]);
  CHECK(first[0] == "kay");
  CHECK(first[1] == "2.7");
  CHECK(first[4] == "W1");
  CHECK(first[6] == "true");  // 2.7 < 2 sqrt(2): detected
  const auto last = split_csv(lines[101]);
  CHECK(last[6] == "false");  // 2.9 > 2 sqrt(2)
  std::remove(path.c_str());
}

TEST_CASE("scan output is byte-identical across runs") {
  const std::string p1 = temp_path("repeat1.csv");
  const std::string p2 = temp_path("repeat2.csv");
  REQUIRE(run_cli("scan kay --a-min 2 --a-max 3 --steps 50 --out " + p1).exit_code == 0);
  REQUIRE(run_cli("scan kay --a-min 2 --a-max 3 --steps 50 --out " + p2).exit_code == 0);
  CHECK(slurp(p1) == slurp(p2));
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("scan CSV and JSON agree numerically row by row") {
  const RunResult cr = run_cli("scan kay --a-min 2 --a-max 3 --steps 5 --format csv");
  const RunResult jr = run_cli("scan kay --a-min 2 --a-max 3 --steps 5 --format json");
  REQUIRE(cr.exit_code == 0);
  REQUIRE(jr.exit_code == 0);
  const json arr = json::parse(jr.out);
  const auto lines = split_lines(cr.out);
  REQUIRE(arr.size() == 5);
  REQUIRE(lines.size() == 6);
  for (size_t k = 0; k < 5; ++k) {
    const auto row = split_csv(lines[k + 1]);
    CHECK(std::stod(row[1]) == arr[k]["params"]["a"].get<double>());
    CHECK(std::stod(row[5]) == arr[k]["expectation"].get<double>());
    CHECK(row[6] == (arr[k]["detected"].get<bool>() ? "true" : "false"));
  }
}

TEST_CASE("scan kye with the inverse rule detects every point") {
  const RunResult r = run_cli("scan kye --b-min 0.25 --b-max 4 --steps 16 --c inverse");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 17);
  for (size_t k = 1; k < lines.size(); ++k) {
    const auto row = split_csv(lines[k]);
    CHECK(row[0] == "kye");
    CHECK(row[4] == "W2");
    CHECK(row[6] == "true");
  }
}

TEST_CASE("scan kye accepts a fixed c") {
  const RunResult r = run_cli("scan kye --b-min 1 --b-max 2 --steps 3 --c 1.5");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  for (size_t k = 1; k < lines.size(); ++k) CHECK(split_csv(lines[k])[3] == "1.5");
}

TEST_CASE("scan range and output failures use exit codes 2 and 3") {
  CHECK(run_cli("scan kay --a-min 3 --a-max 2 --steps 10").exit_code == 2);
  CHECK(run_cli("scan kay --a-min 1 --a-max 3 --steps 10").exit_code == 2);
  CHECK(run_cli("scan kay --a-min 2 --a-max 3 --steps 1").exit_code == 2);
  CHECK(run_cli("scan kye --b-min 0 --b-max 2 --steps 4 --c inverse").exit_code == 2);
  CHECK(run_cli("scan kye --b-min 1 --b-max 2 --steps 4 --c bogus").exit_code == 2);
  CHECK(run_cli("scan kay --a-min 2 --a-max 3 --steps 5 --out /nonexistent/dir/x.csv")
            .exit_code == 3);
}

TEST_CASE("certify W1 passes and reports its optimum") {
  const RunResult r = run_cli("certify --witness W1 --grid 5 --refine 60");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["witness"] == "W1");
  CHECK(j["pass"] == true);
  CHECK(j["max_angle_objective"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(j["min_expectation"].get<double>() ==
        doctest::Approx(0.0).epsilon(1e-6));
  CHECK(j["bound"] == "lower");
  CHECK(j["converged"] == true);
  CHECK(j["evaluations"].get<long long>() > 0);
  CHECK(j["best_angles"].contains("theta1"));
}

TEST_CASE("certify with no refinement stays a lower bound and may not converge") {
  const RunResult r = run_cli("certify --witness W1 --grid 3 --refine 0");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["max_angle_objective"].get<double>() <= 1.0 + 1e-12);
  CHECK(j["converged"] == false);
  CHECK(j["evaluations"] == 729);
}

TEST_CASE("certify CSV matches the JSON run") {
  const RunResult jr = run_cli("certify --witness Wxzy- --grid 4 --refine 30 --format json");
  const RunResult cr = run_cli("certify --witness Wxzy- --grid 4 --refine 30 --format csv");
  REQUIRE(jr.exit_code == 0);
  REQUIRE(cr.exit_code == 0);
  const json j = json::parse(jr.out);
  const auto lines = split_lines(cr.out);
  REQUIRE(lines.size() == 2);
  const auto row = split_csv(lines[1]);
  CHECK(row[0] == "Wxzy-");
  CHECK(std::stod(row[1]) == j["max_angle_objective"].get<double>());
  CHECK(std::stod(row[2]) == j["min_expectation"].get<double>());
  CHECK(row[4] == (j["pass"].get<bool>() ? "true" : "false"));
}

TEST_CASE("certify all covers the twelve-member family") {
  const RunResult r = run_cli("certify --witness all --grid 3 --refine 20");
  REQUIRE(r.exit_code == 0);
  const json arr = json::parse(r.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 12);
  for (const auto& j : arr) CHECK(j["max_angle_objective"].get<double>() <= 1.0 + 1e-9);
}

TEST_CASE("certify rejects unknown labels") {
  CHECK(run_cli("certify --witness W7").exit_code == 2);
}

TEST_CASE("help exits zero; unknown subcommands exit two") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("state --help").exit_code == 0);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
}
