// ode.hpp — fixed-step classical RK4 over flat real state vectors

#pragma once

#include <functional>
#include <vector>

#include "rabisim/time_series.hpp"

namespace rabi::ode {

using StateVector = std::vector<double>;

// rhs(t, y, dydt): write the derivative of y into dydt (same length as y).
using RhsFn = std::function<void(double, const StateVector&, StateVector&)>;

// Per-step value recorded into the output series.
using ObserverFn = std::function<double(const StateVector&)>;

// Optional caller-supplied invariant check, run every check_stride steps
// and on the final state; throws to abort the integration.
using CheckFn = std::function<void(double, const StateVector&)>;

struct IntegratorOptions {
    double dt{1e-3};
    double t_end{1.0};
    int sample_stride{1};  // store every k-th step
    int check_stride{1};   // run the check callback every k-th step
    bool estimate_error{false};  // step-doubling error estimate at samples
};

// One classical 4-stage Runge-Kutta step. Throws DivergenceError if the
// update is non-finite.
StateVector rk4_step(const RhsFn& rhs, const StateVector& y, double t, double dt);

// Step-doubling error estimate for the step t -> t+dt: max-norm distance
// between one full step and two half steps, scaled by 1/15. Diagnostic
// only; never used to adapt the step.
double step_doubling_error(const RhsFn& rhs, const StateVector& y, double t, double dt);

// Integrate y' = rhs(t, y) from t=0 over [0, t_end] with fixed step dt,
// recording observe(y) every sample_stride steps (the initial state is
// always recorded; a zero-length horizon yields a one-sample series).
// Deterministic: identical inputs give bit-identical outputs on one
// platform. Throws DivergenceError with the first bad time if the state
// goes non-finite. If opts.estimate_error and max_error_estimate is
// non-null, the largest step-doubling estimate seen at sampled steps is
// written there.
TimeSeries integrate(const RhsFn& rhs, StateVector y0, const IntegratorOptions& opts,
                     const ObserverFn& observe, const CheckFn& check = {},
                     double* max_error_estimate = nullptr);

} // namespace rabi::ode
