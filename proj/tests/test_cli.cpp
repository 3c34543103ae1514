// End-to-end tests of the gclm command-line tool.  The binary path is
// injected by CMake via GCLM_CLI_PATH; each test shells out and inspects
// exit codes, stdout, and the emitted CSV/JSON artifacts.

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(GCLM_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe))
    res.output += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path temp_dir() {
  static int counter = 0;
  fs::path dir =
      fs::temp_directory_path() / ("gclm_cli_test_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses a CSV with a header row into column-keyed rows; '#' lines skipped.
std::vector<std::map<std::string, std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  std::vector<std::string> headers;
  {
    std::istringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) headers.push_back(tok);
  }
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    std::map<std::string, std::string> row;
    for (const auto& h : headers) {
      std::getline(ls, tok, ',');
      row[h] = tok;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double col(const std::map<std::string, std::string>& row,
           const std::string& name) {
  return std::stod(row.at(name));
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("solve --a 1.5").exit_code == 1);  // profiles exist for a <= 1
  CHECK(run_cli("solve").exit_code == 1);          // --a is required
  CHECK(run_cli("sweep").exit_code == 1);          // empty range
  CHECK(run_cli("critical --bracket 0.2").exit_code == 1);
  CHECK(run_cli("nonsense").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("solve at a = 0 converges quickly and writes artifacts") {
  const fs::path dir = temp_dir();
  const std::string base = (dir / "a0").string();
  auto res = run_cli("solve --a 0 --tol 1e-7 --out " + base);
  CHECK(res.exit_code == 0);

  const json meta = json::parse(slurp(base + ".json"));
  CHECK(meta["iterations"].get<int>() <= 50);
  CHECK(meta["residual"].get<double>() <= 1e-7);
  CHECK(std::abs(meta["c_l"].get<double>() - 0.5) < 1e-3);
  CHECK(std::abs(meta["c_omega"].get<double>() + 0.5) < 1e-3);
  // the effective config is echoed for reproducibility
  CHECK(meta["config"]["a"].get<double>() == 0.0);
  CHECK(meta["config"]["tol"].get<double>() == 1e-7);

  // profile CSV: header plus f(0) = 1 on the first row
  const auto rows = read_csv(base + ".csv");
  REQUIRE(!rows.empty());
  CHECK(col(rows[0], "x") == 0.0);
  CHECK(col(rows[0], "f") == 1.0);
  CHECK(col(rows[0], "omega") == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("solve at a = 0.5 reports gamma = 1/3") {
  const fs::path dir = temp_dir();
  const std::string base = (dir / "ah").string();
  auto res = run_cli("solve --a 0.5 --format json --out " + base);
  CHECK(res.exit_code == 0);
  const json meta = json::parse(slurp(base + ".json"));
  CHECK(std::abs(meta["gamma"].get<double>() - 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(meta["c_l"].get<double>() - std::sqrt(2.0) / 16.0) < 1e-3);
  // --format json mirrors the metadata to stdout
  const json echoed = json::parse(res.output);
  CHECK(echoed["gamma"] == meta["gamma"]);
  fs::remove_all(dir);
}

TEST_CASE("non-convergence exits with code 2") {
  auto res = run_cli("solve --a 0.5 --max-iter 1 --tol 1e-14");
  CHECK(res.exit_code == 2);
}

TEST_CASE("sweep rows match the reference catalog") {
  const fs::path dir = temp_dir();
  auto res = run_cli("sweep --a-list 0,0.5 --out " + (dir / "out").string());
  CHECK(res.exit_code == 0);
  const auto rows = read_csv(dir / "out" / "sweep.csv");
  REQUIRE(rows.size() == 2);

  CHECK(col(rows[0], "a") == 0.0);
  CHECK(std::abs(col(rows[0], "b") - 1.0) < 1e-3);
  CHECK(std::abs(col(rows[0], "c") - 1.0) < 1e-3);
  CHECK(std::abs(col(rows[0], "cl") - 0.5) < 1e-3);
  CHECK(std::abs(col(rows[0], "ra") - 2.0) < 1e-2);

  CHECK(col(rows[1], "a") == 0.5);
  CHECK(std::abs(col(rows[1], "b") - std::sqrt(2.0) / 2.0) < 1e-3);
  CHECK(std::abs(col(rows[1], "c") - 3.0 * std::sqrt(2.0) / 4.0) < 1e-3);
  CHECK(std::abs(col(rows[1], "cl") - std::sqrt(2.0) / 16.0) < 1e-3);
  CHECK(std::abs(col(rows[1], "gamma") - 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(col(rows[1], "mu") - 0.5) < 1e-3);
  fs::remove_all(dir);
}

TEST_CASE("identical invocations produce byte-identical files") {
  const fs::path dir = temp_dir();
  const std::string b1 = (dir / "run1").string();
  const std::string b2 = (dir / "run2").string();
  CHECK(run_cli("solve --a 0 --out " + b1).exit_code == 0);
  CHECK(run_cli("solve --a 0 --out " + b2).exit_code == 0);
  CHECK(slurp(b1 + ".csv") == slurp(b2 + ".csv"));
  CHECK(slurp(b1 + ".json") == slurp(b2 + ".json"));
  fs::remove_all(dir);
}

TEST_CASE("config file precedence: flags > config > defaults") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "cfg.json";
  {
    std::ofstream out(cfg);
    out << R"({"tol": 1e-5, "max_iter": 37})" << '\n';
  }
  const std::string base = (dir / "cfgrun").string();

  // config value applies when no flag is given
  auto res = run_cli("solve --a 0 --config " + cfg.string() + " --out " + base);
  CHECK(res.exit_code == 0);
  json meta = json::parse(slurp(base + ".json"));
  CHECK(meta["config"]["tol"].get<double>() == 1e-5);
  CHECK(meta["config"]["max_iter"].get<int>() == 37);

  // an explicit flag wins over the config file
  res = run_cli("solve --a 0 --tol 1e-6 --config " + cfg.string() + " --out " +
                base);
  CHECK(res.exit_code == 0);
  meta = json::parse(slurp(base + ".json"));
  CHECK(meta["config"]["tol"].get<double>() == 1e-6);
  CHECK(meta["config"]["max_iter"].get<int>() == 37);

  CHECK(run_cli("solve --a 0 --config " + (dir / "missing.json").string())
            .exit_code == 1);
  fs::remove_all(dir);
}

TEST_CASE("critical with a sign-free bracket exits with code 2") {
  auto res = run_cli("critical --bracket 0,0.1");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("error") != std::string::npos);
}

TEST_CASE("verify passes clean and fails under fault injection") {
  auto clean = run_cli("verify");
  CHECK(clean.exit_code == 0);
  CHECK(clean.output.find("FAIL") == std::string::npos);
  CHECK(clean.output.find("PASS") != std::string::npos);

  auto faulty = run_cli("verify --inject-f-error 0.01 --json");
  CHECK(faulty.exit_code == 2);
  const json report = json::parse(faulty.output);
  bool any_fail = false;
  for (const auto& check : report) any_fail |= !check["pass"].get<bool>();
  CHECK(any_fail);
}
