#pragma once

#include "splitkdv/splitting.h"

#include <cstddef>

namespace splitkdv::logistic {

// Closed forms are compared at 1e-12, so scalars use the widest hardware type.
using Scalar = long double;

/// Solution of u' = u(u - 1), u(0) = u0: u0 / (u0 + e^t (1 - u0)).
Scalar exact_solution(Scalar u0, Scalar t);

/// Flow of u' = -u: u0 e^{-t}.
Scalar flow_a(Scalar u0, Scalar t);

/// Flow of u' = u^2: u0 / (1 - u0 t); throws BlowUpError once u0*t >= 1.
Scalar flow_b(Scalar u0, Scalar t);

/// Sufficient step bound 2 (1 - u0 (1 - e^{-T})) for the Godunov closed form
/// to stay well defined on [0, T]; callers must choose dt strictly below it.
Scalar dt_admissible(Scalar u0, Scalar T);

/// Godunov iterate after n steps of size dt,
/// u0 (1 - e^{-dt}) / ((1 - e^{-dt}) e^{t_n} + u0 dt (1 - e^{t_n})).
Scalar godunov_closed_form(Scalar u0, Scalar dt, std::size_t n);

/// Strang iterate after n steps, computed by composing the exact flows
/// Phi_B(dt/2) o Phi_A(dt) o Phi_B(dt/2); this composition is authoritative.
Scalar strang_closed_form(Scalar u0, Scalar dt, std::size_t n);

/// Alternate Strang closed form with denominator term
/// u0 dt (e^{t_n} - 1)(e^{dt} + 1)/2. Kept for comparison only: it disagrees
/// with the flow composition at first order in dt (see the dedicated test).
Scalar strang_closed_form_alt(Scalar u0, Scalar dt, std::size_t n);

FlowMap<Scalar> flow_map_a();
FlowMap<Scalar> flow_map_b();

}  // namespace splitkdv::logistic
