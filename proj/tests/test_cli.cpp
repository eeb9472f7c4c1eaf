#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// Spawns the installed front end (path injected by the build) and
// inspects exit codes and CSV output.
namespace {

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(FADE_CLI_PATH) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";

  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.out.append(buf, got);
  }
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

// Environment-prefixed variant, e.g. env = "FADE_THREADS=abc".
CmdResult run_cli_env(const std::string& env, const std::string& args,
                      bool merge_stderr = false) {
  std::string cmd = env + " " + std::string(FADE_CLI_PATH) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";

  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.out.append(buf, got);
  }
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

} // namespace

TEST_CASE("solve with defaults reports the reference errors") {
  const CmdResult r = run_cli("solve");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "param,h,tau,E2,rate2,Einf,rateInf");

  const std::vector<std::string> f = fields_of(lines[1]);
  REQUIRE(f.size() == 7);
  CHECK(std::stod(f[0]) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::stod(f[1]) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(std::stod(f[2]) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(std::stod(f[3]) == doctest::Approx(9.19393e-4).epsilon(1e-4));
  CHECK(f[4].empty());
  CHECK(std::stod(f[5]) == doctest::Approx(1.25769e-3).epsilon(1e-4));
  CHECK(f[6].empty());
}

TEST_CASE("solve output is byte-deterministic") {
  const CmdResult a = run_cli("solve --case example2 --alpha 0.5 "
                              "--kappa1 0.1 --kappa2 5 --N 6 --M 10");
  const CmdResult b = run_cli("solve --case example2 --alpha 0.5 "
                              "--kappa1 0.1 --kappa2 5 --N 6 --M 10");
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
  CHECK(a.out.back() == '\n');
}

TEST_CASE("solve honours the param echo flag") {
  const CmdResult r = run_cli("solve --param 0.4 --N 4 --M 4");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(fields_of(lines[1])[0] == "4.00000e-01");
}

TEST_CASE("convergence study over a doubling sweep") {
  const CmdResult r = run_cli("convergence --beta 1.2 --vary 4,8,16");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);

  const std::vector<std::string> first = fields_of(lines[1]);
  const std::vector<std::string> last = fields_of(lines[3]);
  REQUIRE(first.size() == 7);
  REQUIRE(last.size() == 7);
  CHECK(std::stod(first[0]) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(std::stod(first[5]) == doctest::Approx(4.92731e-3).epsilon(1e-4));
  CHECK(first[6].empty());
  CHECK(!last[6].empty());
  CHECK(std::stod(last[6]) == doctest::Approx(1.94).epsilon(0.08));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("convergence").status == 2);          // missing --vary
  CHECK(run_cli("").status == 2);                     // missing subcommand
  CHECK(run_cli("solve --case example7").status == 2);
  CHECK(run_cli("weights --kind delta").status == 2);
  CHECK(run_cli("solve --beta 2.0").status == 2);     // order out of range
  CHECK(run_cli("convergence --vary 4,9").status == 2);
}

TEST_CASE("help exits clean") {
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("solve --help").status == 0);
}

TEST_CASE("unwritable output path exits with 1") {
  const CmdResult r =
      run_cli("solve --out /nonexistent-dir/report.csv", true);
  CHECK(r.status == 1);
  CHECK(r.out.find("cannot open") != std::string::npos);
}

TEST_CASE("output file matches the stdout stream") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "fade_cli_out.csv";
  const CmdResult to_file =
      run_cli("solve --N 4 --M 4 --out " + path.string());
  REQUIRE(to_file.status == 0);
  CHECK(to_file.out.empty());

  std::ifstream in(path, std::ios::binary);
  std::ostringstream content;
  content << in.rdbuf();
  const CmdResult to_stdout = run_cli("solve --N 4 --M 4");
  CHECK(content.str() == to_stdout.out);
  fs::remove(path);
}

TEST_CASE("weight-table dump") {
  const CmdResult r = run_cli("weights --N 8 --kind beta");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  // Header plus one line per (row, node) pair: rows r = 1..7 with r+1
  // entries each.
  REQUIRE(lines.size() == 36);
  CHECK(lines[0] == "r,j,w");

  int expect_r = 1;
  int expect_j = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> f = fields_of(lines[i]);
    REQUIRE(f.size() == 3);
    CHECK(std::stoi(f[0]) == expect_r);
    CHECK(std::stoi(f[1]) == expect_j);
    CHECK(std::isfinite(std::stod(f[2])));
    // Full double precision in the dump.
    CHECK(f[2].find('.') != std::string::npos);
    CHECK(f[2].size() >= 20);
    if (++expect_j > expect_r) {
      ++expect_r;
      expect_j = 0;
    }
  }

  const CmdResult again = run_cli("weights --N 8 --kind beta");
  CHECK(again.out == r.out);

  // beta = 1.5 and gamma = 0.5 share the kernel exponent m - eta = 1/2
  // and therefore the same unscaled table; a different advective order
  // must produce different weights.
  const CmdResult same = run_cli("weights --N 8 --kind gamma");
  REQUIRE(same.status == 0);
  CHECK(same.out == r.out);
  const CmdResult gamma = run_cli("weights --N 8 --kind gamma --gamma 0.3");
  REQUIRE(gamma.status == 0);
  CHECK(gamma.out != r.out);
}

TEST_CASE("self-test subcommand passes") {
  const CmdResult r = run_cli("selftest");
  CHECK(r.status == 0);
  CHECK(r.out.find("[ok]") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("invalid worker-count environment falls back with a warning") {
  const CmdResult r =
      run_cli_env("FADE_THREADS=abc", "convergence --vary 4,8", true);
  CHECK(r.status == 0);
  CHECK(r.out.find("FADE_THREADS") != std::string::npos);
}
