#include "splitkdv/convergence.h"
#include "splitkdv/io.h"
#include "splitkdv/kdv.h"
#include "splitkdv/logistic.h"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace splitkdv;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

std::pair<double, double> acceptance_band(SplitScheme scheme) {
  return scheme == SplitScheme::Strang ? std::pair{1.8, 2.2} : std::pair{0.8, 1.2};
}

// ---------------------------------------------------------------------------
// logistic

struct LogisticOptions {
  std::string problem = "logistic";
  std::string scheme = "godunov";
  double u0 = 0.5;
  double final_time = 1.0;
  double dt = 0.05;
  std::string out = "logistic.csv";
};

int cmd_logistic(const LogisticOptions& opt) {
  namespace lg = splitkdv::logistic;
  if (opt.problem != "logistic")
    throw std::invalid_argument("logistic: --problem must be 'logistic'");
  const SplitScheme scheme = scheme_from_name(opt.scheme);
  if (!(opt.u0 > 0.0 && opt.u0 < 1.0))
    throw std::invalid_argument("logistic: u0 must lie in (0, 1)");
  if (!(opt.final_time > 0.0) || !(opt.dt > 0.0))
    throw std::invalid_argument("logistic: T and dt must be positive");
  const double bound = static_cast<double>(lg::dt_admissible(opt.u0, opt.final_time));
  if (opt.dt >= bound)
    throw std::invalid_argument("logistic: dt = " + std::to_string(opt.dt) +
                                " is not admissible; need dt < 2(1 - u0(1 - e^-T)) = " +
                                std::to_string(bound));

  const TimeGrid grid(opt.final_time, opt.dt);
  const auto flow_a = lg::flow_map_a();
  const auto flow_b = lg::flow_map_b();
  const auto godunov =
      run_splitting(flow_a, flow_b, lg::Scalar(opt.u0), grid, SplitScheme::Godunov);
  const auto strang = run_splitting(flow_a, flow_b, lg::Scalar(opt.u0), grid, SplitScheme::Strang);

  std::ofstream csv(opt.out);
  if (!csv) throw std::runtime_error("cannot open '" + opt.out + "' for writing");
  csv << "n,t_n,godunov,strang,exact,err_godunov,err_strang\n";
  for (std::size_t n = 0; n <= grid.n_steps(); ++n) {
    const double t = grid.time(n);
    const double g = static_cast<double>(godunov.state(n));
    const double s = static_cast<double>(strang.state(n));
    const double e = static_cast<double>(lg::exact_solution(opt.u0, t));
    csv << n << ',' << format_full(t) << ',' << format_full(g) << ',' << format_full(s) << ','
        << format_full(e) << ',' << format_full(g - e) << ',' << format_full(s - e) << '\n';
  }

  const double exact_final =
      static_cast<double>(lg::exact_solution(opt.u0, grid.achieved_final_time()));
  const double err = std::abs(static_cast<double>(scheme == SplitScheme::Strang
                                                      ? strang.final_state()
                                                      : godunov.final_state()) -
                              exact_final);
  std::cout << "logistic u0=" << opt.u0 << " dt=" << opt.dt << " steps=" << grid.n_steps()
            << " final t=" << grid.achieved_final_time() << "\n"
            << "  " << scheme_name(scheme) << " error at final time: " << err << "\n"
            << "  wrote " << opt.out << " (" << grid.n_steps() + 1 << " rows)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// shared KdV problem setup

struct KdvOptions {
  std::string problem = "kdv-soliton";
  std::string scheme = "godunov";
  double final_time = 1.0;
  double length = 100.0;
  int n_points = 512;
  double kappa = 0.4;
  double x0 = -1.0;  // -1 selects L/2
  std::string init_path;
  bool length_given = false;  // set after parsing from the option counts
  bool n_given = false;
};

struct KdvProblem {
  GridPtr grid;
  RealField initial;
  std::optional<SolitonParams> soliton_params;
};

KdvProblem build_kdv_problem(const KdvOptions& opt) {
  if (!(opt.final_time > 0.0)) throw std::invalid_argument("kdv: T must be positive");
  if (opt.problem == "kdv-soliton") {
    if (!(opt.length > 0.0)) throw std::invalid_argument("kdv: L must be positive");
    if (opt.n_points < 4 || opt.n_points % 2 != 0)
      throw std::invalid_argument("kdv: N must be even and >= 4");
    if (!(opt.kappa > 0.0)) throw std::invalid_argument("kdv: kappa must be positive");
    if (opt.kappa * opt.length < 30.0)
      throw std::invalid_argument("kdv: need kappa*L >= 30 (tails below ~1e-12); got " +
                                  std::to_string(opt.kappa * opt.length));
    const SolitonParams params{opt.kappa, opt.x0 < 0.0 ? 0.5 * opt.length : opt.x0};
    auto grid = make_grid(opt.length, opt.n_points);
    return {grid, soliton(grid, params, 0.0), params};
  }
  if (opt.problem == "kdv-custom") {
    if (opt.init_path.empty())
      throw std::invalid_argument("kdv: --problem kdv-custom requires --init <snapshot.csv>");
    RealField initial = field_from_csv(opt.init_path, opt.length_given ? opt.length : 0.0);
    if (opt.n_given && initial.size() != opt.n_points)
      throw std::invalid_argument("kdv: snapshot has N = " + std::to_string(initial.size()) +
                                  ", which disagrees with --N");
    return {initial.grid(), initial, std::nullopt};
  }
  throw std::invalid_argument("kdv: unknown problem '" + opt.problem +
                              "' (expected kdv-soliton or kdv-custom)");
}

// ---------------------------------------------------------------------------
// kdv-converge

struct ConvergeOptions {
  KdvOptions kdv;
  std::vector<double> ladder;
  int norm_index = 0;
  std::string oracle = "fine-reference";
  std::string out = "kdv_converge.csv";
  bool strict = false;
  bool trajectory_max = false;
  int jobs = 0;
};

int cmd_kdv_converge(const ConvergeOptions& opt) {
  if (opt.norm_index < 0 || opt.norm_index > 12)
    throw std::invalid_argument("kdv-converge: --norm must be between 0 and 12");
  const KdvProblem problem = build_kdv_problem(opt.kdv);
  KdvStudyConfig config;
  config.grid = problem.grid;
  config.initial = problem.initial;
  config.final_time = opt.kdv.final_time;
  config.ladder = opt.ladder;
  config.norm_index = opt.norm_index;
  config.scheme = scheme_from_name(opt.kdv.scheme);
  config.jobs = capped_jobs(opt.jobs);
  config.problem_id = opt.kdv.problem;
  config.max_over_trajectory = opt.trajectory_max;
  if (opt.oracle == "soliton") {
    if (!problem.soliton_params)
      throw std::invalid_argument("kdv-converge: the soliton oracle needs --problem kdv-soliton");
    config.oracle_kind = KdvOracleKind::ExactSoliton;
    config.soliton_params = problem.soliton_params;
  } else if (opt.oracle == "fine-reference") {
    config.oracle_kind = KdvOracleKind::FineReference;
  } else {
    throw std::invalid_argument("kdv-converge: unknown oracle '" + opt.oracle + "'");
  }

  const ConvergenceReport report = run_kdv_refinement_study(config);
  write_report_csv(opt.out, report);

  std::cout << "kdv-converge problem=" << report.problem << " scheme=" << report.scheme
            << " norm=H" << report.norm_index << " jobs=" << config.jobs << "\n";
  std::printf("  %12s  %13s  %11s\n", "dt", "error", "local_slope");
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    if (i == 0)
      std::printf("  %12.6g  %13.6e  %11s\n", report.samples[i].dt, report.samples[i].error, "-");
    else
      std::printf("  %12.6g  %13.6e  %11.4f\n", report.samples[i].dt, report.samples[i].error,
                  report.local[i - 1]);
  }
  for (const auto& failure : report.failures)
    std::cout << "  failed dt=" << failure.dt << ": " << failure.reason << "\n";
  if (report.fit)
    std::printf("  slope = %.4f (fit residual %.2f%%)\n", report.fit->slope,
                100.0 * report.fit->residual);
  else
    std::cout << "  slope unavailable\n";
  std::cout << "  wrote " << opt.out << "\n";

  if (report.samples.empty()) {
    std::cerr << "error: every rung failed\n";
    return kExitNumerical;
  }
  if (opt.strict) {
    const auto [lo, hi] = acceptance_band(config.scheme);
    if (!report.fit || report.fit->slope < lo || report.fit->slope > hi) {
      std::cerr << "error: slope outside the acceptance band [" << lo << ", " << hi << "]\n";
      return kExitNumerical;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// kdv-solve

struct SolveOptions {
  KdvOptions kdv;
  double dt = 0.0;  // 0 selects T/256
  int snap_every = 0;
  std::string out = "kdv_solve";
};

int cmd_kdv_solve(const SolveOptions& opt) {
  const KdvProblem problem = build_kdv_problem(opt.kdv);
  const double dt = opt.dt > 0.0 ? opt.dt : opt.kdv.final_time / 256.0;
  if (!(dt > 0.0)) throw std::invalid_argument("kdv-solve: dt must be positive");
  const SplitScheme scheme = scheme_from_name(opt.kdv.scheme);
  const TimeGrid grid(opt.kdv.final_time, dt);
  const auto stride = opt.snap_every > 0
                          ? static_cast<std::size_t>(opt.snap_every)
                          : std::max<std::size_t>(1, grid.n_steps() / 8);

  const auto flow_a = airy_flow_map(problem.grid);
  const auto flow_b = burgers_flow_map(problem.grid);
  SplitTrajectory<RealField> traj{scheme, grid, {}};
  try {
    traj = run_splitting(flow_a, flow_b, problem.initial, grid, scheme);
  } catch (const SplitRunError& e) {
    std::cerr << "error: blow-up during the run, " << e.what() << "\n";
    return kExitNumerical;
  }

  std::ofstream conserved(opt.out + "_conserved.csv");
  if (!conserved)
    throw std::runtime_error("cannot open '" + opt.out + "_conserved.csv' for writing");
  conserved << "t,mass,momentum,hamiltonian\n";
  std::size_t snapshots = 0;
  for (std::size_t n = 0; n <= grid.n_steps(); ++n) {
    const auto q = conserved_quantities(traj.state(n));
    conserved << format_full(grid.time(n)) << ',' << format_full(q.mass) << ','
              << format_full(q.momentum) << ',' << format_full(q.hamiltonian) << '\n';
    if (n % stride == 0 || n == grid.n_steps()) {
      char name[32];
      std::snprintf(name, sizeof name, "_%05zu.csv", n);
      write_field_csv(opt.out + name, traj.state(n));
      ++snapshots;
    }
  }
  std::cout << "kdv-solve problem=" << opt.kdv.problem << " scheme=" << scheme_name(scheme)
            << " dt=" << dt << " steps=" << grid.n_steps()
            << " final t=" << grid.achieved_final_time() << "\n"
            << "  wrote " << snapshots << " snapshots '" << opt.out << "_*.csv' and "
            << opt.out << "_conserved.csv\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest

int cmd_selftest() {
  namespace lg = splitkdv::logistic;
  struct Check {
    std::string name;
    std::function<bool()> run;
  };

  std::vector<Check> checks;

  checks.push_back({"spectral round trip", [] {
    auto grid = make_grid(3.0, 128);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ArrayXd values(128);
    for (int j = 0; j < 128; ++j) values[j] = uni(rng);
    const RealField f(grid, values);
    return (from_spectrum(to_spectrum(f)) - f).max_abs() < 1e-12;
  }});

  checks.push_back({"spectral derivative", [] {
    auto grid = make_grid(2.0 * std::numbers::pi, 64);
    ArrayXd values(64);
    for (int j = 0; j < 64; ++j) values[j] = std::sin(grid->nodes()[j]);
    const RealField d3 = derivative(RealField(grid, values), 3);
    for (int j = 0; j < 64; ++j)
      if (std::abs(d3.values()[j] + std::cos(grid->nodes()[j])) > 1e-10) return false;
    return true;
  }});

  checks.push_back({"dealiased product", [] {
    auto grid = make_grid(2.0 * std::numbers::pi, 32);
    ArrayXd values(32);
    for (int j = 0; j < 32; ++j) values[j] = std::sin(grid->nodes()[j]);
    const RealField f(grid, values);
    const RealField p = dealiased_product(f, f);
    for (int j = 0; j < 32; ++j)
      if (std::abs(p.values()[j] - 0.5 * (1.0 - std::cos(2.0 * grid->nodes()[j]))) > 1e-10)
        return false;
    return true;
  }});

  checks.push_back({"airy unitarity", [] {
    auto grid = make_grid(2.0 * std::numbers::pi, 256);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ArrayXcd coeffs = ArrayXcd::Zero(256);
    for (int m = 1; m <= 80; ++m) {
      coeffs[m] = std::complex<double>(uni(rng), uni(rng));
      coeffs[256 - m] = std::conj(coeffs[m]);
    }
    const RealField f = from_spectrum(Spectrum(grid, coeffs));
    const RealField g = AiryFlow(grid).evolve(f, 1.0);
    for (int s = 0; s <= 12; ++s)
      if (std::abs(sobolev_norm(g, s) / sobolev_norm(f, s) - 1.0) > 1e-12) return false;
    return true;
  }});

  checks.push_back({"logistic engine equals closed forms", [] {
    const auto flow_a = lg::flow_map_a();
    const auto flow_b = lg::flow_map_b();
    const auto godunov =
        run_splitting(flow_a, flow_b, lg::Scalar(0.5), TimeGrid(1.0, 0.1), SplitScheme::Godunov);
    const auto strang =
        run_splitting(flow_a, flow_b, lg::Scalar(0.5), TimeGrid(1.0, 0.1), SplitScheme::Strang);
    for (std::size_t n = 0; n <= 10; ++n) {
      const lg::Scalar g = lg::godunov_closed_form(0.5L, 0.1L, n);
      const lg::Scalar s = lg::strang_closed_form(0.5L, 0.1L, n);
      if (std::abs(godunov.state(n) - g) > 1e-12L * std::abs(g)) return false;
      if (std::abs(strang.state(n) - s) > 1e-12L * std::abs(s)) return false;
    }
    return true;
  }});

  checks.push_back({"soliton vs fine reference", [] {
    auto grid = make_grid(100.0, 512);
    const SolitonParams params{0.4, 50.0};
    const RealField u0 = soliton(grid, params, 0.0);
    const RealField numeric = KdVReference(grid, 0.5 / 2048).evolve(u0, 0.5);
    return sobolev_norm(numeric - soliton(grid, params, 0.5), 0) <= 1e-8;
  }});

  checks.push_back({"conserved quantities", [] {
    auto grid = make_grid(100.0, 512);
    const RealField u0 = soliton(grid, SolitonParams{0.4, 50.0}, 0.0);
    const auto before = conserved_quantities(u0);
    const auto after = conserved_quantities(KdVReference(grid, 0.5 / 2048).evolve(u0, 0.5));
    return std::abs(after.mass - before.mass) <= 1e-12 * std::abs(before.mass) &&
           std::abs(after.momentum - before.momentum) <= 1e-10 * before.momentum &&
           std::abs(after.hamiltonian - before.hamiltonian) <= 1e-7 * std::abs(before.hamiltonian);
  }});

  bool all_ok = true;
  for (const auto& check : checks) {
    bool ok = false;
    try {
      ok = check.run();
    } catch (const std::exception& e) {
      std::printf("FAIL  %-36s (%s)\n", check.name.c_str(), e.what());
      all_ok = false;
      continue;
    }
    std::printf("%s  %s\n", ok ? "PASS" : "FAIL", check.name.c_str());
    all_ok = all_ok && ok;
  }
  return all_ok ? kExitOk : kExitNumerical;
}

// Flat "key = value" config files expand into --key=value tokens inserted
// right after the subcommand, so flags given on the command line win.
std::vector<std::string> load_config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  auto trim = [](std::string text) {
    const auto first = text.find_first_not_of(" \t\r");
    const auto last = text.find_last_not_of(" \t\r");
    return first == std::string::npos ? std::string() : text.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto equals = stripped.find('=');
    if (equals == std::string::npos)
      throw std::invalid_argument("config: expected 'key = value', got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, equals));
    const std::string value = trim(stripped.substr(equals + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: expected 'key = value', got '" + stripped + "'");
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

std::vector<std::string> preprocess_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::size_t subcommand = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      subcommand = i;
      break;
    }
  }
  if (subcommand == args.size()) return args;
  std::string config_path;
  for (std::size_t i = subcommand + 1; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  if (config_path.empty()) return args;
  const auto tokens = load_config_tokens(config_path);
  args.insert(args.begin() + static_cast<long>(subcommand) + 1, tokens.begin(), tokens.end());
  return args;
}

template <class Fn>
int guarded(Fn&& body) {
  try {
    return body();
  } catch (const SplitRunError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const BlowUpError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Godunov and Strang operator splitting for the KdV equation,\n"
               "with a pseudospectral toolbox and a convergence-order harness."};
  app.require_subcommand(0, 1);
  constexpr auto take_last = CLI::MultiOptionPolicy::TakeLast;
  std::string config_help;  // consumed by preprocess_args; registered for --help only

  LogisticOptions logistic_opt;
  auto* logistic_cmd =
      app.add_subcommand("logistic", "Split the logistic ODE and emit a per-step CSV");
  logistic_cmd->add_option("--config", config_help, "flat key = value config file; flags win");
  logistic_cmd->add_option("--problem", logistic_opt.problem, "problem id (logistic)")
      ->multi_option_policy(take_last);
  logistic_cmd->add_option("--scheme", logistic_opt.scheme, "godunov | godunov-reversed | strang")
      ->multi_option_policy(take_last);
  logistic_cmd->add_option("--u0", logistic_opt.u0, "initial value in (0, 1)")
      ->multi_option_policy(take_last);
  logistic_cmd->add_option("--T", logistic_opt.final_time, "final time")
      ->multi_option_policy(take_last);
  logistic_cmd->add_option("--dt", logistic_opt.dt, "time step")->multi_option_policy(take_last);
  logistic_cmd->add_option("--out", logistic_opt.out, "output CSV path")
      ->multi_option_policy(take_last);

  const auto add_kdv_options = [&take_last](CLI::App* cmd, KdvOptions& opt) {
    cmd->add_option("--problem", opt.problem, "kdv-soliton | kdv-custom")
        ->multi_option_policy(take_last);
    cmd->add_option("--scheme", opt.scheme, "godunov | godunov-reversed | strang")
        ->multi_option_policy(take_last);
    cmd->add_option("--T", opt.final_time, "final time")->multi_option_policy(take_last);
    cmd->add_option("--L", opt.length, "domain length")->multi_option_policy(take_last);
    cmd->add_option("--N", opt.n_points, "grid points (even)")->multi_option_policy(take_last);
    cmd->add_option("--kappa", opt.kappa, "soliton parameter")->multi_option_policy(take_last);
    cmd->add_option("--x0", opt.x0, "soliton crest (default L/2)")
        ->multi_option_policy(take_last);
    cmd->add_option("--init", opt.init_path, "initial snapshot CSV for kdv-custom")
        ->multi_option_policy(take_last);
  };

  ConvergeOptions converge_opt;
  auto* converge_cmd = app.add_subcommand(
      "kdv-converge", "Run a dt refinement study for split KdV and fit the error slope");
  converge_cmd->add_option("--config", config_help, "flat key = value config file; flags win");
  add_kdv_options(converge_cmd, converge_opt.kdv);
  converge_cmd->add_option("--ladder", converge_opt.ladder, "dt ladder (default T/{32..512})")
      ->delimiter(',');
  converge_cmd->add_option("--norm", converge_opt.norm_index, "Sobolev index for errors")
      ->multi_option_policy(take_last);
  converge_cmd->add_option("--oracle", converge_opt.oracle, "fine-reference | soliton")
      ->multi_option_policy(take_last);
  converge_cmd->add_option("--out", converge_opt.out, "report CSV path")
      ->multi_option_policy(take_last);
  converge_cmd->add_flag("--strict", converge_opt.strict,
                         "exit 1 when the slope leaves the scheme's band")
      ->multi_option_policy(take_last);
  converge_cmd->add_flag("--trajectory-max", converge_opt.trajectory_max,
                         "measure the max error over the whole trajectory "
                         "(needs --oracle soliton)")
      ->multi_option_policy(take_last);
  converge_cmd
      ->add_option("--jobs", converge_opt.jobs,
                   "concurrent rungs (0 = hardware, capped by SPLITKDV_THREADS)")
      ->multi_option_policy(take_last);

  SolveOptions solve_opt;
  auto* solve_cmd = app.add_subcommand(
      "kdv-solve", "Run one splitting trajectory, write snapshots and conserved quantities");
  solve_cmd->add_option("--config", config_help, "flat key = value config file; flags win");
  add_kdv_options(solve_cmd, solve_opt.kdv);
  solve_cmd->add_option("--dt", solve_opt.dt, "time step (default T/256)")
      ->multi_option_policy(take_last);
  solve_cmd->add_option("--snap-every", solve_opt.snap_every,
                        "snapshot stride in steps (default n_steps/8)")
      ->multi_option_policy(take_last);
  solve_cmd->add_option("--out", solve_opt.out, "output prefix")->multi_option_policy(take_last);

  auto* selftest_cmd =
      app.add_subcommand("selftest", "Run the built-in invariant suite and print a table");

  std::vector<std::string> args;
  try {
    args = preprocess_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  converge_opt.kdv.length_given = converge_cmd->count("--L") > 0;
  converge_opt.kdv.n_given = converge_cmd->count("--N") > 0;
  solve_opt.kdv.length_given = solve_cmd->count("--L") > 0;
  solve_opt.kdv.n_given = solve_cmd->count("--N") > 0;

  if (logistic_cmd->parsed()) return guarded([&] { return cmd_logistic(logistic_opt); });
  if (converge_cmd->parsed()) return guarded([&] { return cmd_kdv_converge(converge_opt); });
  if (solve_cmd->parsed()) return guarded([&] { return cmd_kdv_solve(solve_opt); });
  if (selftest_cmd->parsed()) return guarded([] { return cmd_selftest(); });

  std::cout << app.help();
  return kExitConfig;
}
