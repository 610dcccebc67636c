#pragma once

#include "splitkdv/field.h"
#include "splitkdv/kdv.h"
#include "splitkdv/splitting.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace splitkdv {

struct ErrorSample {
  double dt;
  double error;
  int norm_index;
  double final_time;
};

struct SlopeFit {
  double slope;
  double residual;  // max relative deviation of the errors from the fit line
};

/// Least-squares line through (log dt, log error). Returns nullopt when any
/// error is zero or negative (an exact match, not an infinite slope).
std::optional<SlopeFit> estimate_slope(const std::vector<ErrorSample>& samples);

/// Pairwise slopes log(e_i/e_{i+1}) / log(dt_i/dt_{i+1}); exposes
/// pre-asymptotic contamination next to the global fit.
std::vector<double> local_slopes(const std::vector<ErrorSample>& samples);

struct FailedRung {
  double dt;
  std::string reason;
};

struct ConvergenceReport {
  std::string scheme;
  std::string problem;
  int norm_index = 0;
  std::vector<ErrorSample> samples;  // sorted by dt descending
  std::vector<double> local;         // one entry per consecutive sample pair
  std::optional<SlopeFit> fit;
  std::vector<FailedRung> failures;
};

inline double state_error_norm(const RealField& a, const RealField& b, int norm_index) {
  return sobolev_norm(a - b, norm_index);
}
inline double state_error_norm(double a, double b, int) { return std::abs(a - b); }
inline double state_error_norm(long double a, long double b, int) {
  return static_cast<double>(std::abs(a - b));
}

template <class State>
struct Oracle {
  std::string kind;                 // "exact-closed-form", "exact-soliton", "fine-reference"
  std::function<State(double)> at;  // solution at a given time
};

template <class State>
double error_at_final_time(const SplitTrajectory<State>& traj, const Oracle<State>& oracle,
                           int norm_index) {
  return state_error_norm(traj.final_state(), oracle.at(traj.achieved_final_time()), norm_index);
}

/// Max error over every stored diagonal state; needs an oracle that is
/// evaluable at arbitrary times (closed form or exact soliton).
template <class State>
double error_max_over_trajectory(const SplitTrajectory<State>& traj, const Oracle<State>& oracle,
                                 int norm_index) {
  double worst = 0.0;
  for (std::size_t n = 0; n < traj.states.size(); ++n)
    worst = std::max(worst, state_error_norm(traj.state(n), oracle.at(traj.time(n)), norm_index));
  return worst;
}

namespace detail {
void validate_ladder(const std::vector<double>& ladder, double final_time);
ConvergenceReport assemble_report(std::string scheme, std::string problem, int norm_index,
                                  std::vector<std::optional<ErrorSample>> samples,
                                  std::vector<std::optional<FailedRung>> failures);
}  // namespace detail

/// Run one scheme across a dt ladder, measure the final-time error against the
/// oracle, and fit the log-log slope. Rungs are independent and may run on
/// several threads; the report is assembled in ladder order regardless.
/// Blown-up rungs are recorded as failures, not rethrown.
template <class State>
ConvergenceReport run_refinement_study(const FlowMap<State>& flow_a, const FlowMap<State>& flow_b,
                                       const State& u0, double final_time, SplitScheme scheme,
                                       const std::vector<double>& ladder, int norm_index,
                                       const Oracle<State>& oracle, int jobs = 1,
                                       const std::string& problem_id = "",
                                       bool max_over_trajectory = false) {
  detail::validate_ladder(ladder, final_time);
  std::vector<std::optional<ErrorSample>> samples(ladder.size());
  std::vector<std::optional<FailedRung>> failures(ladder.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ladder.size()) return;
      const double dt = ladder[i];
      try {
        TimeGrid grid(final_time, dt);
        auto traj = run_splitting(flow_a, flow_b, u0, grid, scheme);
        const double err = max_over_trajectory
                               ? error_max_over_trajectory(traj, oracle, norm_index)
                               : error_at_final_time(traj, oracle, norm_index);
        if (!std::isfinite(err)) throw BlowUpError("non-finite error norm");
        samples[i] = ErrorSample{dt, err, norm_index, traj.achieved_final_time()};
      } catch (const SplitRunError& e) {
        failures[i] = FailedRung{dt, e.what()};
      } catch (const BlowUpError& e) {
        failures[i] = FailedRung{dt, e.what()};
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        return;
      }
    }
  };

  const std::size_t n_threads =
      std::min<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs), ladder.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  return detail::assemble_report(scheme_name(scheme), problem_id, norm_index, std::move(samples),
                                 std::move(failures));
}

enum class KdvOracleKind { FineReference, ExactSoliton };

struct KdvStudyConfig {
  GridPtr grid;
  RealField initial;
  double final_time = 1.0;
  std::vector<double> ladder;      // empty = final_time / {32,...,512}
  int norm_index = 0;
  SplitScheme scheme = SplitScheme::Godunov;
  int jobs = 1;
  double reference_substep = 0.0;  // 0 = min(ladder)/16
  KdvOracleKind oracle_kind = KdvOracleKind::FineReference;
  std::optional<SolitonParams> soliton_params;  // required for ExactSoliton
  bool max_over_trajectory = false;             // needs the soliton oracle
  std::string problem_id = "kdv";
};

/// Builds the Airy/Burgers flows and the requested oracle (the fine reference
/// is integrated once, up front), then delegates to run_refinement_study.
ConvergenceReport run_kdv_refinement_study(const KdvStudyConfig& config);

Oracle<RealField> make_fine_reference_oracle(const GridPtr& grid, const RealField& initial,
                                             double final_time, double reference_substep);
Oracle<RealField> make_soliton_oracle(const GridPtr& grid, const SolitonParams& params);

ConvergenceReport run_logistic_refinement_study(double u0, double final_time, SplitScheme scheme,
                                                const std::vector<double>& ladder, int jobs = 1);

std::vector<double> default_ladder(double final_time);

/// Requested worker count clamped by the SPLITKDV_THREADS environment variable
/// and the hardware concurrency; requested <= 0 means "use the hardware".
int capped_jobs(int requested);

}  // namespace splitkdv
