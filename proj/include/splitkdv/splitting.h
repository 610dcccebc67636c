#pragma once

#include "splitkdv/errors.h"

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace splitkdv {

inline bool is_finite_state(double s) { return std::isfinite(s); }
inline bool is_finite_state(long double s) { return std::isfinite(s); }

/// Exact-or-approximate solution operator of one sub-equation. All equation
/// knowledge lives here; the splitting engine treats states as opaque values.
template <class State>
class FlowMap {
 public:
  using EvolveFn = std::function<State(const State&, double)>;

  FlowMap(std::string label, EvolveFn evolve)
      : label_(std::move(label)), evolve_(std::move(evolve)) {
    if (!evolve_) throw std::invalid_argument("FlowMap: empty evolve function");
  }

  State evolve(const State& s, double duration) const { return evolve_(s, duration); }
  const std::string& label() const { return label_; }

  static FlowMap identity(std::string label = "I") {
    return FlowMap(std::move(label), [](const State& s, double) { return s; });
  }

 private:
  std::string label_;
  EvolveFn evolve_;
};

enum class SplitScheme { Godunov, GodunovReversed, Strang };

inline const char* scheme_name(SplitScheme s) {
  switch (s) {
    case SplitScheme::Godunov: return "godunov";
    case SplitScheme::GodunovReversed: return "godunov-reversed";
    case SplitScheme::Strang: return "strang";
  }
  return "?";
}

inline SplitScheme scheme_from_name(const std::string& name) {
  if (name == "godunov") return SplitScheme::Godunov;
  if (name == "godunov-reversed") return SplitScheme::GodunovReversed;
  if (name == "strang") return SplitScheme::Strang;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected godunov, godunov-reversed or strang)");
}

/// Uniform step grid t_n = n dt, n = 0..n_steps, with n_steps chosen so that
/// n_steps*dt <= T < (n_steps+1)*dt holds in double arithmetic. Times come
/// from the multiplication n*dt, never from accumulation.
class TimeGrid {
 public:
  TimeGrid(double final_time, double dt) : final_time_(final_time), dt_(dt) {
    if (!(final_time > 0.0)) throw std::invalid_argument("TimeGrid: final time must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
    auto n = static_cast<std::size_t>(std::floor(final_time / dt));
    while (static_cast<double>(n + 1) * dt <= final_time) ++n;
    while (n > 0 && static_cast<double>(n) * dt > final_time) --n;
    n_steps_ = n;
  }

  double final_time_request() const { return final_time_; }
  double dt() const { return dt_; }
  std::size_t n_steps() const { return n_steps_; }
  double time(std::size_t n) const { return static_cast<double>(n) * dt_; }
  double achieved_final_time() const { return time(n_steps_); }

 private:
  double final_time_;
  double dt_;
  std::size_t n_steps_;
};

/// Diagonal record {(t_n, v(t_n, t_n))} of a splitting run.
template <class State>
struct SplitTrajectory {
  SplitScheme scheme;
  TimeGrid grid;
  std::vector<State> states;  // n_steps + 1 entries, states[0] = u0

  double time(std::size_t n) const { return grid.time(n); }
  const State& state(std::size_t n) const { return states.at(n); }
  const State& final_state() const { return states.back(); }
  double achieved_final_time() const { return grid.achieved_final_time(); }
};

/// One Godunov step Phi_A(dt) o Phi_B(dt).
template <class State>
State godunov_step(const FlowMap<State>& flow_a, const FlowMap<State>& flow_b,
                   const State& state, double dt) {
  if (dt < 0.0) throw std::invalid_argument("godunov_step: dt must be >= 0");
  return flow_a.evolve(flow_b.evolve(state, dt), dt);
}

/// One Strang step Phi_B(dt/2) o Phi_A(dt) o Phi_B(dt/2). The middle A-flow is
/// applied as a single evolve(dt) call, not as two half steps; the two agree
/// exactly for exact flows.
template <class State>
State strang_step(const FlowMap<State>& flow_a, const FlowMap<State>& flow_b,
                  const State& state, double dt) {
  if (dt < 0.0) throw std::invalid_argument("strang_step: dt must be >= 0");
  const double half = 0.5 * dt;
  return flow_b.evolve(flow_a.evolve(flow_b.evolve(state, half), dt), half);
}

template <class State>
SplitTrajectory<State> run_splitting(const FlowMap<State>& flow_a, const FlowMap<State>& flow_b,
                                     const State& u0, const TimeGrid& grid, SplitScheme scheme) {
  if (!is_finite_state(u0)) throw std::invalid_argument("run_splitting: non-finite initial state");
  SplitTrajectory<State> traj{scheme, grid, {}};
  traj.states.reserve(grid.n_steps() + 1);
  traj.states.push_back(u0);
  const double dt = grid.dt();
  for (std::size_t n = 0; n < grid.n_steps(); ++n) {
    try {
      const State& current = traj.states.back();
      State next = scheme == SplitScheme::Godunov ? godunov_step(flow_a, flow_b, current, dt)
                   : scheme == SplitScheme::GodunovReversed
                       ? godunov_step(flow_b, flow_a, current, dt)
                       : strang_step(flow_a, flow_b, current, dt);
      if (!is_finite_state(next)) throw BlowUpError("non-finite state");
      traj.states.push_back(std::move(next));
    } catch (const BlowUpError& e) {
      throw SplitRunError(n + 1, e.what());
    }
  }
  return traj;
}

namespace detail {

// Index n of the square [t_n, t_{n+1}]^2 containing lo = min(t,tau),
// hi = max(t,tau), or throw. Shared corners resolve to the lower square.
inline std::size_t locate_square(const TimeGrid& grid, double lo, double hi,
                                 const char* who) {
  const double dt = grid.dt();
  if (lo < 0.0 || hi > grid.time(grid.n_steps() + 1))
    throw std::invalid_argument(std::string(who) + ": (t, tau) outside the admissible set");
  auto n = static_cast<std::size_t>(std::floor(lo / dt));
  if (n > grid.n_steps()) n = grid.n_steps();
  while (n > 0 && grid.time(n) > lo) --n;
  while (n < grid.n_steps() && grid.time(n + 1) <= lo) ++n;
  if (lo < grid.time(n) || hi > grid.time(n + 1))
    throw std::invalid_argument(std::string(who) + ": (t, tau) outside the admissible set");
  return n;
}

}  // namespace detail

/// Two-time-variable extension v(t, tau). For the Godunov scheme the value on
/// square n is Phi_A(tau - t_n) o Phi_B(t - t_n) applied to v(t_n, t_n); the
/// reversed scheme swaps the roles of A and B. For Strang the per-half-square
/// rule applies (B in t / A in tau on the lower half, A then B on the upper).
/// Exact diagonal corners return the stored trajectory state.
template <class State>
State extension_eval(const FlowMap<State>& flow_a, const FlowMap<State>& flow_b,
                     const SplitTrajectory<State>& traj, double t, double tau) {
  const TimeGrid& grid = traj.grid;
  const double dt = grid.dt();

  if (t == tau && t >= 0.0 && t <= grid.achieved_final_time()) {
    auto k = static_cast<std::size_t>(std::llround(t / dt));
    if (k < traj.states.size() && grid.time(k) == t) return traj.state(k);
  }

  const double lo = std::min(t, tau);
  const double hi = std::max(t, tau);
  const std::size_t n = detail::locate_square(grid, lo, hi, "extension_eval");
  const double tn = grid.time(n);
  const State& corner = traj.state(n);

  switch (traj.scheme) {
    case SplitScheme::Godunov:
      return flow_a.evolve(flow_b.evolve(corner, t - tn), tau - tn);
    case SplitScheme::GodunovReversed:
      return flow_b.evolve(flow_a.evolve(corner, t - tn), tau - tn);
    case SplitScheme::Strang: {
      const double half = 0.5 * dt;
      const double mid = tn + half;
      if (hi <= mid) return flow_a.evolve(flow_b.evolve(corner, t - tn), tau - tn);
      if (lo >= mid) {
        State half_state = flow_a.evolve(flow_b.evolve(corner, half), half);
        return flow_b.evolve(flow_a.evolve(half_state, tau - mid), t - mid);
      }
      throw std::invalid_argument("extension_eval: (t, tau) straddles the Strang half-squares");
    }
  }
  throw std::logic_error("extension_eval: unreachable");
}

/// Conventional single-time extension with "time run twice as fast": the
/// B-flow covers [t_n, t_{n+1/2}], the A-flow covers [t_{n+1/2}, t_{n+1}]
/// (roles swapped for the reversed scheme). Not defined for Strang runs.
template <class State>
State traditional_extension_eval(const FlowMap<State>& flow_a, const FlowMap<State>& flow_b,
                                 const SplitTrajectory<State>& traj, double t) {
  if (traj.scheme == SplitScheme::Strang)
    throw std::invalid_argument(
        "traditional_extension_eval: defined for the sequential schemes only");
  const TimeGrid& grid = traj.grid;
  if (t < 0.0 || t > grid.achieved_final_time())
    throw std::invalid_argument("traditional_extension_eval: t outside [0, t_n_steps]");

  const double dt = grid.dt();
  auto k = static_cast<std::size_t>(std::llround(t / dt));
  if (k < traj.states.size() && grid.time(k) == t) return traj.state(k);

  auto n = static_cast<std::size_t>(std::floor(t / dt));
  while (n > 0 && grid.time(n) > t) --n;
  while (n + 1 < grid.n_steps() && grid.time(n + 1) <= t) ++n;

  const FlowMap<State>& first = traj.scheme == SplitScheme::Godunov ? flow_b : flow_a;
  const FlowMap<State>& second = traj.scheme == SplitScheme::Godunov ? flow_a : flow_b;
  const double tn = grid.time(n);
  const double mid = tn + 0.5 * dt;
  if (t <= mid) return first.evolve(traj.state(n), 2.0 * (t - tn));
  State half_state = first.evolve(traj.state(n), dt);
  return second.evolve(half_state, 2.0 * (t - mid));
}

}  // namespace splitkdv
