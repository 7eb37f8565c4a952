// semiclassical.hpp — optical Bloch equations of the driven, decaying
// two-level atom, their closed-form solution and its special cases

#pragma once

#include <complex>
#include <functional>

#include "rabisim/system_params.hpp"
#include "rabisim/time_series.hpp"

namespace rabi::semiclassical {

// Density matrix of the bare atom. rho_eg is the conjugate of rho_ge and
// is not stored.
struct BlochState {
    double rho_gg{1.0};
    double rho_ee{0.0};
    std::complex<double> rho_ge{0.0, 0.0};
};

// Coefficients of the closed-form solution. Away from b = 0 the excited
// population oscillates at (sqrt(3)/2)*f2 and damps at (Gamma + f1)/2;
// a_cubic is the Cardano radicand combination they derive from.
struct FCoefficients {
    double f1{0.0};
    double f2{0.0};
    double a_cubic{0.0};
};

// Time derivative of the Bloch state:
//   d rho_gg/dt = -i Omega (rho_eg - rho_ge) + b Gamma rho_ee
//   d rho_ee/dt = -i Omega (rho_ge - rho_eg) - Gamma rho_ee
//   d rho_ge/dt = -i Omega (rho_ee - rho_gg) - (Gamma/2) rho_ge
// with Omega real by convention. Throws InvalidStateError on non-finite input.
BlochState bloch_rhs(const BlochState& state, const SystemParams& params);

// f1, f2 and the cubic quantity A. Requires strong coupling
// (16 Omega^2 > Gamma^2); throws RegimeError otherwise. At b = 0 the
// simplified closed form is used: f1 = 0, f2 = sqrt((16 Omega^2 - Gamma^2)/3).
FCoefficients f_coefficients(const SystemParams& params);

// Closed-form rho_ee(t) for any branching ratio, initial state |g>:
//   K e^{(f1 - Gamma/2) t} [1 - e^{-3 f1 t / 2}
//       (sqrt(3) (f1/f2) sin((sqrt3/2) f2 t) + cos((sqrt3/2) f2 t))],
//   K = 8 Omega^2 / (3 (3 f1^2 + f2^2)).
// Strong coupling required (propagates RegimeError).
double rho_ee_analytic(double t, const SystemParams& params);

// b = 0 special case: (4 Omega^2 / zeta^2) e^{-Gamma t / 2} sin^2(zeta t / 2),
// zeta = sqrt(4 Omega^2 - Gamma^2/4). Throws RegimeError when zeta^2 <= 0.
double rho_ee_b0(double t, const SystemParams& params);

// b = 1 special case with lambda = sqrt(4 Omega^2 - Gamma^2/16):
//   K1 [1 - (cos(lambda t) + (3 Gamma / 4 lambda) sin(lambda t)) e^{-3 Gamma t / 4}],
//   K1 = 4 Omega^2 / (8 Omega^2 + Gamma^2).
double rho_ee_b1(double t, const SystemParams& params);

// b = 1 in the limit Omega >> Gamma: (1/2)(1 - cos(2 Omega t) e^{-3 Gamma t / 4}).
double rho_ee_b1_strong(double t, const SystemParams& params);

// Damping rate (Gamma + f1)/2 of the population oscillation: Gamma/2 at
// b = 0, exactly 3 Gamma/4 at b = 1.
double damping_rate(const SystemParams& params);

// Long-time limit of rho_ee_b1 (the Eq.-type steady prefactor K1); the
// natural baseline when fitting the b = 1 oscillation envelope.
double steady_state_b1(const SystemParams& params);

// Sample rho_ee_analytic on the uniform grid t = 0, dt, ..., ~t_end,
// labeled "semiclassical-analytic".
TimeSeries sample_analytic(const SystemParams& params, double t_end, double dt);

// RK4 integration of the Bloch equations from |g> on the same grid,
// labeled "semiclassical-ode". Used as the independent oracle for the
// closed form and exposed as its own CLI model.
TimeSeries integrate_bloch(const SystemParams& params, double t_end, double dt);

// Same integration, invoking observer at every sampled step (for
// trajectory-level invariant tests).
void integrate_bloch_observed(const SystemParams& params, double t_end, double dt,
                              const std::function<void(double, const BlochState&)>& observer);

} // namespace rabi::semiclassical
