#include "splitkdv/logistic.h"

#include "splitkdv/errors.h"

#include <cmath>
#include <stdexcept>

namespace splitkdv::logistic {

Scalar exact_solution(Scalar u0, Scalar t) { return u0 / (u0 + std::exp(t) * (1.0L - u0)); }

Scalar flow_a(Scalar u0, Scalar t) { return u0 * std::exp(-t); }

Scalar flow_b(Scalar u0, Scalar t) {
  if (u0 * t >= 1.0L)
    throw BlowUpError("logistic flow B blow-up: u0*t >= 1 (t* = 1/u0)");
  return u0 / (1.0L - u0 * t);
}

Scalar dt_admissible(Scalar u0, Scalar T) { return 2.0L * (1.0L + u0 * std::expm1(-T)); }

Scalar godunov_closed_form(Scalar u0, Scalar dt, std::size_t n) {
  const Scalar t_n = static_cast<Scalar>(n) * dt;
  const Scalar one_minus_exp = -std::expm1(-dt);  // 1 - e^{-dt}
  const Scalar denom = one_minus_exp * std::exp(t_n) - u0 * dt * std::expm1(t_n);
  if (std::abs(denom) < 1e-14L)
    throw std::domain_error("godunov_closed_form: vanishing denominator (dt not admissible)");
  return u0 * one_minus_exp / denom;
}

Scalar strang_closed_form(Scalar u0, Scalar dt, std::size_t n) {
  const Scalar half = 0.5L * dt;
  Scalar u = u0;
  for (std::size_t i = 0; i < n; ++i) u = flow_b(flow_a(flow_b(u, half), dt), half);
  return u;
}

Scalar strang_closed_form_alt(Scalar u0, Scalar dt, std::size_t n) {
  const Scalar t_n = static_cast<Scalar>(n) * dt;
  const Scalar one_minus_exp = -std::expm1(-dt);
  const Scalar denom = one_minus_exp * std::exp(t_n) +
                       u0 * dt * std::expm1(t_n) * (std::exp(dt) + 1.0L) / 2.0L;
  if (std::abs(denom) < 1e-14L)
    throw std::domain_error("strang_closed_form_alt: vanishing denominator");
  return u0 * one_minus_exp / denom;
}

FlowMap<Scalar> flow_map_a() {
  return FlowMap<Scalar>("A", [](const Scalar& u, double t) { return flow_a(u, t); });
}

FlowMap<Scalar> flow_map_b() {
  return FlowMap<Scalar>("B", [](const Scalar& u, double t) { return flow_b(u, t); });
}

}  // namespace splitkdv::logistic
