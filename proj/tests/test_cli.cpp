#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "splitkdv/io.h"
#include "splitkdv/kdv.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// End-to-end checks against the installed binary; SPLITKDV_CLI_PATH comes
// from the build system.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("splitkdv_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path log = work_dir() / "out.log";
  const std::string command =
      std::string(SPLITKDV_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_data_rows(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  int rows = -1;  // skip the header
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++rows;
  return rows;
}

}  // namespace

TEST_CASE("no subcommand prints usage and exits 2") {
  const auto result = run_cli("");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("Usage:") != std::string::npos);
}

TEST_CASE("unknown flags and bad values exit 2") {
  CHECK(run_cli("logistic --no-such-flag").exit_code == 2);
  CHECK(run_cli("logistic --scheme lie").exit_code == 2);
  CHECK(run_cli("logistic --u0 1.5").exit_code == 2);
  CHECK(run_cli("kdv-converge --N 0").exit_code == 2);
  CHECK(run_cli("kdv-converge --kappa 0.1").exit_code == 2);  // kappa L < 30
  CHECK(run_cli("kdv-converge --ladder 0.1,0.2,0.3,0.4").exit_code == 2);
  CHECK(run_cli("kdv-solve --problem kdv-custom").exit_code == 2);  // missing --init
}

TEST_CASE("logistic defaults write 21 rows") {
  const fs::path out = work_dir() / "logistic_default.csv";
  const auto result = run_cli("logistic --out " + out.string());
  REQUIRE(result.exit_code == 0);
  CHECK(count_data_rows(out) == 21);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,t_n,godunov,strang,exact,err_godunov,err_strang");
}

TEST_CASE("logistic rejects an inadmissible dt with the printed bound") {
  const auto result = run_cli("logistic --dt 1.9 --u0 0.9");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("0.862") != std::string::npos);
}

TEST_CASE("logistic --scheme strang keeps the strang column") {
  const fs::path out = work_dir() / "logistic_strang.csv";
  const auto result = run_cli("logistic --scheme strang --out " + out.string());
  REQUIRE(result.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find(",strang,") != std::string::npos);
  CHECK(result.output.find("strang error") != std::string::npos);
}

TEST_CASE("identical configurations give byte-identical CSVs") {
  const fs::path out_a = work_dir() / "det_a.csv";
  const fs::path out_b = work_dir() / "det_b.csv";
  REQUIRE(run_cli("logistic --dt 0.025 --out " + out_a.string()).exit_code == 0);
  REQUIRE(run_cli("logistic --dt 0.025 --out " + out_b.string()).exit_code == 0);
  CHECK(slurp(out_a) == slurp(out_b));

  const std::string ladder = "--T 0.25 --N 128 --ladder 0.03125,0.015625,0.0078125,0.00390625";
  const fs::path kc_a = work_dir() / "det_kc_a.csv";
  const fs::path kc_b = work_dir() / "det_kc_b.csv";
  REQUIRE(run_cli("kdv-converge " + ladder + " --jobs 2 --out " + kc_a.string()).exit_code == 0);
  REQUIRE(run_cli("kdv-converge " + ladder + " --jobs 1 --out " + kc_b.string()).exit_code == 0);
  CHECK(slurp(kc_a) == slurp(kc_b));  // independent of the job count
}

TEST_CASE("config file supplies values and flags win") {
  const fs::path cfg = work_dir() / "logistic.cfg";
  {
    std::ofstream out(cfg);
    out << "u0 = 0.25\n"
        << "dt = 0.1\n"
        << "out = " << (work_dir() / "from_config.csv").string() << "\n";
  }
  const auto result = run_cli("logistic --config " + cfg.string() + " --u0 0.5");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("u0=0.5") != std::string::npos);   // flag wins
  CHECK(result.output.find("dt=0.1") != std::string::npos);   // config fills the rest
  CHECK(fs::exists(work_dir() / "from_config.csv"));
}

TEST_CASE("kdv-converge in strict mode passes on a healthy ladder") {
  const fs::path out = work_dir() / "kc_strict.csv";
  const auto result = run_cli(
      "kdv-converge --T 0.25 --N 128 --ladder 0.03125,0.015625,0.0078125,0.00390625 "
      "--strict --out " + out.string());
  REQUIRE(result.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find("dt,error,local_slope") == 0);
  double slope = 0.0, residual = 0.0;
  const auto footer = text.find("# slope=");
  REQUIRE(footer != std::string::npos);
  REQUIRE(std::sscanf(text.c_str() + footer, "# slope=%lf residual=%lf", &slope, &residual) == 2);
  CHECK(slope > 0.8);
  CHECK(slope < 1.2);
}

TEST_CASE("reversed scheme and norm index plumb through kdv-converge") {
  const fs::path out = work_dir() / "kc_reversed.csv";
  const auto result = run_cli(
      "kdv-converge --scheme godunov-reversed --norm 2 --T 0.25 --N 128 "
      "--ladder 0.03125,0.015625,0.0078125,0.00390625 --strict --out " + out.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("scheme=godunov-reversed") != std::string::npos);
  CHECK(result.output.find("norm=H2") != std::string::npos);
}

TEST_CASE("SPLITKDV_THREADS caps the job count") {
  const fs::path out = work_dir() / "kc_caps.csv";
  const std::string log = (work_dir() / "caps.log").string();
  const std::string command = "SPLITKDV_THREADS=1 " + std::string(SPLITKDV_CLI_PATH) +
                              " kdv-converge --T 0.25 --N 128 --jobs 8 "
                              "--ladder 0.03125,0.015625,0.0078125,0.00390625 --out " +
                              out.string() + " > " + log + " 2>&1";
  REQUIRE(std::system(command.c_str()) == 0);
  CHECK(slurp(log).find("jobs=1") != std::string::npos);
}

TEST_CASE("kdv-solve on zero initial data writes all-zero snapshots") {
  // hand-written zero snapshot, L = 50, N = 64
  const fs::path init = work_dir() / "zeros.csv";
  {
    std::ofstream out(init);
    out << "x,u\n";
    char buffer[40];
    for (int j = 0; j < 64; ++j) {
      std::snprintf(buffer, sizeof buffer, "%.17g", 50.0 * j / 64);
      out << buffer << ",0\n";
    }
  }
  const fs::path prefix = work_dir() / "zero_run";
  const auto result = run_cli("kdv-solve --problem kdv-custom --init " + init.string() +
                              " --T 0.1 --dt 0.0125 --snap-every 2 --out " + prefix.string());
  REQUIRE(result.exit_code == 0);
  int snapshots = 0;
  for (const auto& entry : fs::directory_iterator(work_dir())) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("zero_run_0", 0) != 0) continue;
    ++snapshots;
    std::ifstream in(entry.path());
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      REQUIRE(comma != std::string::npos);
      CHECK(std::stod(line.substr(comma + 1)) == 0.0);
    }
  }
  CHECK(snapshots == 5);  // steps 0, 2, 4, 6, 8 with the final step coinciding
}

TEST_CASE("explicit --L or --N must agree with a custom snapshot") {
  const fs::path init = work_dir() / "zeros_check.csv";
  {
    std::ofstream out(init);
    out << "x,u\n";
    char buffer[40];
    for (int j = 0; j < 64; ++j) {
      std::snprintf(buffer, sizeof buffer, "%.17g", 50.0 * j / 64);
      out << buffer << ",0\n";
    }
  }
  const std::string base = "kdv-solve --problem kdv-custom --T 0.1 --dt 0.05 --init " +
                           init.string() + " --out " + (work_dir() / "mismatch").string();
  CHECK(run_cli(base + " --L 60").exit_code == 2);
  CHECK(run_cli(base + " --N 32").exit_code == 2);
  CHECK(run_cli(base + " --L 50 --N 64").exit_code == 0);
}

TEST_CASE("kdv-solve soliton run lands near the translated soliton") {
  const fs::path prefix = work_dir() / "soliton_run";
  const auto result =
      run_cli("kdv-solve --scheme strang --T 1 --dt 0.00390625 --snap-every 128 --out " +
              prefix.string());
  REQUIRE(result.exit_code == 0);

  const splitkdv::RealField final_state =
      splitkdv::field_from_csv((prefix.string() + "_00256.csv"), 100.0);
  const splitkdv::RealField expected =
      splitkdv::soliton(final_state.grid(), splitkdv::SolitonParams{0.4, 50.0}, 1.0);
  CHECK(splitkdv::sobolev_norm(final_state - expected, 0) <= 1e-3);

  // the mass column never moves: the Airy multiplier is 1 at k = 0 and the
  // Burgers flow preserves the mean
  std::ifstream conserved(prefix.string() + "_conserved.csv");
  std::string line;
  REQUIRE(std::getline(conserved, line));
  CHECK(line == "t,mass,momentum,hamiltonian");
  double mass0 = 0.0;
  bool first = true;
  int rows = 0;
  while (std::getline(conserved, line)) {
    double t = 0.0, mass = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &t, &mass) == 2);
    if (first) {
      mass0 = mass;
      first = false;
    }
    CHECK(std::abs(mass - mass0) <= 1e-12 * std::abs(mass0));
    ++rows;
  }
  CHECK(rows == 257);
}

TEST_CASE("selftest passes on a fresh build") {
  const auto result = run_cli("selftest");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("FAIL") == std::string::npos);
  CHECK(result.output.find("PASS  soliton vs fine reference") != std::string::npos);
}
