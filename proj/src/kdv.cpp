#include "splitkdv/kdv.h"

#include "splitkdv/errors.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace splitkdv {

namespace {

void require_grid(const GridPtr& expected, const RealField& f, const char* who) {
  if (!f.grid() || !f.grid()->compatible_with(*expected))
    throw std::invalid_argument(std::string(who) + ": field lives on a different grid");
}

// Phase multipliers e^{i k^3 tau}; the Nyquist entry keeps only the real part
// cos(k^3 tau) so conjugate symmetry survives.
ArrayXcd airy_phase(const PeriodicGrid& grid, double tau) {
  const ArrayXd& k = grid.wavenumbers();
  ArrayXcd phase(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const double theta = k[j] * k[j] * k[j] * tau;
    phase[j] = std::complex<double>(std::cos(theta), std::sin(theta));
  }
  const int nyq = grid.nyquist_index();
  phase[nyq] = std::complex<double>(phase[nyq].real(), 0.0);
  return phase;
}

double sech_squared(double z) {
  if (std::abs(z) > 350.0) return 0.0;
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace

AiryFlow::AiryFlow(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("AiryFlow: null grid");
}

RealField AiryFlow::evolve(const RealField& f, double tau) const {
  require_grid(grid_, f, "AiryFlow::evolve");
  if (tau == 0.0) return f;
  return from_spectrum(evolve(to_spectrum(f), tau));
}

Spectrum AiryFlow::evolve(Spectrum s, double tau) const {
  if (tau == 0.0) return s;
  s.coeffs() *= airy_phase(*grid_, tau);
  return s;
}

BurgersFlow::BurgersFlow(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("BurgersFlow: null grid");
}

int BurgersFlow::substeps_for(const RealField& f, double t) const {
  const double courant = t * grid_->max_wavenumber() * f.max_abs();
  return std::max(1, static_cast<int>(std::ceil(courant / kCflTarget)));
}

RealField BurgersFlow::evolve(const RealField& f, double t, int forced_substeps) const {
  require_grid(grid_, f, "BurgersFlow::evolve");
  if (t < 0.0) throw std::invalid_argument("BurgersFlow::evolve: duration must be >= 0");
  if (t == 0.0) return f;
  if (!f.all_finite()) throw BlowUpError("burgers flow: non-finite input");

  const double amp0 = f.max_abs();
  const int n_sub = forced_substeps > 0 ? forced_substeps : substeps_for(f, t);
  const double h = t / n_sub;

  auto rhs = [](const RealField& u) { return dealiased_product(u, derivative(u, 1)); };

  RealField u = f;
  for (int step = 0; step < n_sub; ++step) {
    const RealField k1 = rhs(u);
    const RealField k2 = rhs(u + (0.5 * h) * k1);
    const RealField k3 = rhs(u + (0.5 * h) * k2);
    const RealField k4 = rhs(u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double amp = u.max_abs();
    if (!std::isfinite(amp) || amp > kGrowthLimit * amp0)
      throw BlowUpError("burgers flow blow-up (shock hazard): max|u| grew past " +
                        std::to_string(kGrowthLimit) + "x the input amplitude");
  }
  return u;
}

KdVReference::KdVReference(GridPtr grid, double max_substep, bool nonlinear)
    : grid_(std::move(grid)), max_substep_(max_substep), nonlinear_(nonlinear) {
  if (!grid_) throw std::invalid_argument("KdVReference: null grid");
  if (max_substep < 0.0) throw std::invalid_argument("KdVReference: max_substep must be >= 0");
}

RealField KdVReference::evolve(const RealField& f, double t) const {
  require_grid(grid_, f, "KdVReference::evolve");
  if (t < 0.0) throw std::invalid_argument("KdVReference::evolve: duration must be >= 0");
  if (t == 0.0) return f;
  if (!f.all_finite()) throw BlowUpError("kdv reference: non-finite input");

  const PeriodicGrid& grid = *grid_;
  const double amp0 = f.max_abs();
  int n_sub = std::max(1, static_cast<int>(std::ceil(t * grid.max_wavenumber() * amp0 / kCflTarget)));
  if (max_substep_ > 0.0)
    n_sub = std::max(n_sub, static_cast<int>(std::ceil(t / max_substep_ - 1e-12)));
  const double h = t / n_sub;

  // Integrating factor: u_hat' = i k^3 u_hat + N(u_hat) with N the dealiased
  // Burgers term; w_hat = e^{-i k^3 s} u_hat leaves RK4 only the nonlinearity.
  ArrayXcd half_phase = airy_phase(grid, 0.5 * h);
  ArrayXcd full_phase = airy_phase(grid, h);
  const int nyq = grid.nyquist_index();
  half_phase[nyq] = 0.0;  // no conjugate partner; the mode is dropped
  full_phase[nyq] = 0.0;
  const ArrayXcd half_inv = half_phase.conjugate();
  const ArrayXcd full_inv = full_phase.conjugate();

  auto nonlinear_hat = [&](const ArrayXcd& v_hat) -> ArrayXcd {
    if (!nonlinear_) return ArrayXcd::Zero(grid.size());
    const RealField u = from_spectrum(Spectrum(grid_, v_hat));
    return to_spectrum(dealiased_product(u, derivative(u, 1))).coeffs();
  };

  ArrayXcd v = to_spectrum(f).coeffs();
  v[nyq] = 0.0;
  for (int step = 0; step < n_sub; ++step) {
    const ArrayXcd a = nonlinear_hat(v);
    const ArrayXcd b = half_inv * nonlinear_hat(half_phase * (v + (0.5 * h) * a));
    const ArrayXcd c = half_inv * nonlinear_hat(half_phase * (v + (0.5 * h) * b));
    const ArrayXcd d = full_inv * nonlinear_hat(full_phase * (v + h * c));
    v = full_phase * (v + (h / 6.0) * (a + 2.0 * b + 2.0 * c + d));
    if (!v.allFinite()) throw BlowUpError("kdv reference blow-up: non-finite spectrum");
  }
  RealField result = from_spectrum(Spectrum(grid_, std::move(v)));
  if (result.max_abs() > BurgersFlow::kGrowthLimit * amp0)
    throw BlowUpError("kdv reference blow-up: amplitude grew past the growth limit");
  return result;
}

RealField soliton(const GridPtr& grid, const SolitonParams& params, double t) {
  if (!grid) throw std::invalid_argument("soliton: null grid");
  if (!(params.kappa > 0.0)) throw std::invalid_argument("soliton: kappa must be positive");
  const double length = grid->length();
  if (params.kappa * length < 30.0)
    throw std::invalid_argument("soliton: kappa*L must be >= 30 so the tails sit below ~1e-12");

  const double speed = 4.0 * params.kappa * params.kappa;
  const double depth = -12.0 * params.kappa * params.kappa;
  const ArrayXd& x = grid->nodes();
  ArrayXd u(grid->size());
  for (int j = 0; j < grid->size(); ++j) {
    double y = x[j] - params.x0 - speed * t;
    y -= length * std::floor(y / length + 0.5);  // wrap to [-L/2, L/2)
    // neighbor images keep the wrap smooth at machine precision
    double shape = 0.0;
    for (int image = -1; image <= 1; ++image)
      shape += sech_squared(params.kappa * (y + image * length));
    u[j] = depth * shape;
  }
  return RealField(grid, std::move(u));
}

RealField commutator_ab(const RealField& f) {
  const RealField fx = derivative(f, 1);
  return -1.5 * derivative(dealiased_product(fx, fx), 2);
}

ConservedQuantities conserved_quantities(const RealField& f) {
  const PeriodicGrid& grid = *f.grid();
  const Spectrum s = to_spectrum(f);
  const double mass = grid.length() * s.coeffs()[0].real();
  const double momentum = l2_inner(f, f);
  const RealField ux = derivative(f, 1);
  const double cubic =
      grid.length() / grid.size() * (f.values() * f.values() * f.values()).sum();
  const double hamiltonian = cubic / 6.0 + 0.5 * l2_inner(ux, ux);
  return {mass, momentum, hamiltonian};
}

RealField forcing_f(const SplitTrajectory<RealField>& traj, const FlowMap<RealField>& flow_a,
                    const FlowMap<RealField>& flow_b, double t, double tau, double fd_eps) {
  if (traj.scheme != SplitScheme::Godunov)
    throw std::invalid_argument("forcing_f: defined for the Godunov scheme (B in t, A in tau)");
  const TimeGrid& grid = traj.grid;
  if (fd_eps <= 0.0) fd_eps = grid.dt() / 64.0;

  const double lo = std::min(t, tau);
  const double hi = std::max(t, tau);
  const std::size_t n = detail::locate_square(grid, lo, hi, "forcing_f");
  if (t - fd_eps < grid.time(n) || t + fd_eps > grid.time(n + 1))
    throw std::invalid_argument("forcing_f: finite-difference stencil leaves the square");

  const RealField v_plus = extension_eval(flow_a, flow_b, traj, t + fd_eps, tau);
  const RealField v_minus = extension_eval(flow_a, flow_b, traj, t - fd_eps, tau);
  const RealField v = extension_eval(flow_a, flow_b, traj, t, tau);
  const RealField v_t = (1.0 / (2.0 * fd_eps)) * (v_plus - v_minus);
  return v_t - dealiased_product(v, derivative(v, 1));
}

FlowMap<RealField> airy_flow_map(GridPtr grid) {
  AiryFlow flow(std::move(grid));
  return FlowMap<RealField>("A", [flow](const RealField& f, double tau) {
    return flow.evolve(f, tau);
  });
}

FlowMap<RealField> burgers_flow_map(GridPtr grid) {
  BurgersFlow flow(std::move(grid));
  return FlowMap<RealField>("B", [flow](const RealField& f, double t) {
    return flow.evolve(f, t);
  });
}

}  // namespace splitkdv
