#pragma once

#include "splitkdv/field.h"
#include "splitkdv/splitting.h"

namespace splitkdv {

/// Exact flow of v_tau = -v_xxx: the phase multiplier e^{i k^3 tau} per mode.
/// The Nyquist mode, which has no conjugate partner, evolves by the real part
/// cos(k^3 tau) so fields stay real. A group: tau may be negative.
class AiryFlow {
 public:
  explicit AiryFlow(GridPtr grid);

  RealField evolve(const RealField& f, double tau) const;
  Spectrum evolve(Spectrum s, double tau) const;

  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
};

/// Pseudospectral flow of v_t = v v_x: classical RK4 in physical space with
/// right-hand side dealiased_product(v, v_x), substepped so the advective CFL
/// number t_sub * k_max * max|v| stays at or below 0.5. Throws BlowUpError
/// when max|v| grows by more than 10x or turns non-finite (shock hazard).
class BurgersFlow {
 public:
  static constexpr double kCflTarget = 0.5;
  static constexpr double kGrowthLimit = 10.0;

  explicit BurgersFlow(GridPtr grid);

  // forced_substeps > 0 overrides the CFL substep rule (used by accuracy tests).
  RealField evolve(const RealField& f, double t, int forced_substeps = 0) const;

  int substeps_for(const RealField& f, double t) const;
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
};

/// Reference solver for u_t = u u_x - u_xxx: integrating-factor RK4. The
/// transform w_hat = e^{-i k^3 s} u_hat removes the Airy term exactly and RK4
/// integrates the remaining nonlinearity, substepped to advective CFL <= 0.25
/// and to max_substep when one is given. The Nyquist mode is zeroed.
class KdVReference {
 public:
  static constexpr double kCflTarget = 0.25;

  explicit KdVReference(GridPtr grid, double max_substep = 0.0, bool nonlinear = true);

  RealField evolve(const RealField& f, double t) const;

  double max_substep() const { return max_substep_; }
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
  double max_substep_;  // 0 = CFL rule only
  bool nonlinear_;      // false reduces the solver to the Airy flow (testing)
};

struct SolitonParams {
  double kappa;  // width/speed parameter, crest depth -12 kappa^2, speed 4 kappa^2
  double x0;     // crest position at t = 0
};

/// Traveling-wave solution u(x,t) = -12 kappa^2 sech^2(kappa((x - x0) - 4 kappa^2 t)),
/// wrapped periodically. Requires kappa * L >= 30 so the tails sit below ~1e-12.
RealField soliton(const GridPtr& grid, const SolitonParams& params, double t);

/// Commutator of the Airy and Burgers operators applied to (f, f):
/// -(3/2) d^2/dx^2 (f_x)^2.
RealField commutator_ab(const RealField& f);

struct ConservedQuantities {
  double mass;         // int u dx = L * u_hat_0
  double momentum;     // int u^2 dx
  double hamiltonian;  // int (u^3/6 + u_x^2/2) dx
};

ConservedQuantities conserved_quantities(const RealField& f);

/// Splitting defect F(t, tau) = v_t - v v_x on a Godunov square, with v_t by
/// central differences of the two-time extension. Diagnostic only. fd_eps <= 0
/// selects the default dt/64; the stencil must stay inside the square.
RealField forcing_f(const SplitTrajectory<RealField>& traj, const FlowMap<RealField>& flow_a,
                    const FlowMap<RealField>& flow_b, double t, double tau, double fd_eps = 0.0);

FlowMap<RealField> airy_flow_map(GridPtr grid);
FlowMap<RealField> burgers_flow_map(GridPtr grid);

}  // namespace splitkdv
