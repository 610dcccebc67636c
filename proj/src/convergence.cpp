#include "splitkdv/convergence.h"

#include "splitkdv/logistic.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <stdexcept>

namespace splitkdv {

std::optional<SlopeFit> estimate_slope(const std::vector<ErrorSample>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("estimate_slope: need at least 2 samples");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i].dt == samples[j].dt)
        throw std::invalid_argument("estimate_slope: duplicate dt in samples");
    }
  }
  for (const auto& s : samples) {
    if (!(s.error > 0.0)) return std::nullopt;  // exact match: slope unavailable
  }

  const auto n = static_cast<double>(samples.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& s : samples) {
    mean_x += std::log(s.dt);
    mean_y += std::log(s.error);
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0.0, var = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(s.dt) - mean_x;
    cov += dx * (std::log(s.error) - mean_y);
    var += dx * dx;
  }
  const double slope = cov / var;
  const double intercept = mean_y - slope * mean_x;
  double residual = 0.0;
  for (const auto& s : samples) {
    const double fitted = intercept + slope * std::log(s.dt);
    residual = std::max(residual, std::abs(std::expm1(std::log(s.error) - fitted)));
  }
  return SlopeFit{slope, residual};
}

std::vector<double> local_slopes(const std::vector<ErrorSample>& samples) {
  std::vector<double> result;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    if (a.error > 0.0 && b.error > 0.0 && a.dt != b.dt)
      result.push_back(std::log(a.error / b.error) / std::log(a.dt / b.dt));
    else
      result.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return result;
}

namespace detail {

void validate_ladder(const std::vector<double>& ladder, double final_time) {
  if (!(final_time > 0.0))
    throw std::invalid_argument("refinement study: final time must be positive");
  if (ladder.size() < 4)
    throw std::invalid_argument("refinement study: ladder needs at least 4 entries");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0))
      throw std::invalid_argument("refinement study: ladder entries must be positive");
    if (i > 0 && !(ladder[i] < ladder[i - 1]))
      throw std::invalid_argument("refinement study: ladder must be strictly decreasing");
    const double ratio = final_time / ladder[i];
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
      throw std::invalid_argument("refinement study: T/dt must be an integer for every rung");
  }
}

ConvergenceReport assemble_report(std::string scheme, std::string problem, int norm_index,
                                  std::vector<std::optional<ErrorSample>> samples,
                                  std::vector<std::optional<FailedRung>> failures) {
  ConvergenceReport report;
  report.scheme = std::move(scheme);
  report.problem = std::move(problem);
  report.norm_index = norm_index;
  for (auto& s : samples) {
    if (s) report.samples.push_back(*s);
  }
  for (auto& f : failures) {
    if (f) report.failures.push_back(*f);
  }
  std::sort(report.samples.begin(), report.samples.end(),
            [](const ErrorSample& a, const ErrorSample& b) { return a.dt > b.dt; });
  report.local = local_slopes(report.samples);
  if (report.samples.size() >= 2) report.fit = estimate_slope(report.samples);
  return report;
}

}  // namespace detail

Oracle<RealField> make_fine_reference_oracle(const GridPtr& grid, const RealField& initial,
                                             double final_time, double reference_substep) {
  if (!(reference_substep > 0.0))
    throw std::invalid_argument("fine reference oracle: substep must be positive");
  KdVReference solver(grid, reference_substep);
  auto state = std::make_shared<RealField>(solver.evolve(initial, final_time));
  return Oracle<RealField>{"fine-reference", [state](double) { return *state; }};
}

Oracle<RealField> make_soliton_oracle(const GridPtr& grid, const SolitonParams& params) {
  return Oracle<RealField>{"exact-soliton",
                           [grid, params](double t) { return soliton(grid, params, t); }};
}

ConvergenceReport run_kdv_refinement_study(const KdvStudyConfig& config) {
  if (!config.grid) throw std::invalid_argument("kdv study: null grid");
  if (config.norm_index < 0 || config.norm_index > 12)
    throw std::invalid_argument("kdv study: norm index must be between 0 and 12");
  std::vector<double> ladder =
      config.ladder.empty() ? default_ladder(config.final_time) : config.ladder;
  detail::validate_ladder(ladder, config.final_time);

  if (config.max_over_trajectory && config.oracle_kind != KdvOracleKind::ExactSoliton)
    throw std::invalid_argument(
        "kdv study: trajectory-max errors need an oracle evaluable at every step "
        "(use the soliton oracle)");
  Oracle<RealField> oracle;
  if (config.oracle_kind == KdvOracleKind::ExactSoliton) {
    if (!config.soliton_params)
      throw std::invalid_argument("kdv study: the soliton oracle needs soliton parameters");
    oracle = make_soliton_oracle(config.grid, *config.soliton_params);
  } else {
    const double substep = config.reference_substep > 0.0 ? config.reference_substep
                                                          : ladder.back() / 16.0;
    oracle = make_fine_reference_oracle(config.grid, config.initial, config.final_time, substep);
  }

  return run_refinement_study(airy_flow_map(config.grid), burgers_flow_map(config.grid),
                              config.initial, config.final_time, config.scheme, ladder,
                              config.norm_index, oracle, config.jobs, config.problem_id,
                              config.max_over_trajectory);
}

ConvergenceReport run_logistic_refinement_study(double u0, double final_time, SplitScheme scheme,
                                                const std::vector<double>& ladder, int jobs) {
  if (!(u0 > 0.0 && u0 < 1.0))
    throw std::invalid_argument("logistic study: u0 must lie in (0, 1)");
  Oracle<logistic::Scalar> oracle{
      "exact-closed-form",
      [u0](double t) { return logistic::exact_solution(u0, static_cast<logistic::Scalar>(t)); }};
  return run_refinement_study(logistic::flow_map_a(), logistic::flow_map_b(),
                              static_cast<logistic::Scalar>(u0), final_time, scheme, ladder,
                              /*norm_index=*/0, oracle, jobs, "logistic");
}

std::vector<double> default_ladder(double final_time) {
  std::vector<double> ladder;
  for (int denom = 32; denom <= 512; denom *= 2) ladder.push_back(final_time / denom);
  return ladder;
}

int capped_jobs(int requested) {
  int jobs = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (const char* env = std::getenv("SPLITKDV_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) jobs = std::min(jobs, cap);
  }
  return jobs;
}

}  // namespace splitkdv
