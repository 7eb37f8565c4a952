#include "rabisim/ode.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "rabisim/errors.hpp"

namespace rabi::ode {

namespace {

bool all_finite(const StateVector& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

// Reusable stage buffers so the hot loop does not allocate.
struct Rk4Workspace {
    StateVector k1, k2, k3, k4, tmp;

    explicit Rk4Workspace(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}

    void step(const RhsFn& rhs, StateVector& y, double t, double dt) {
        const std::size_t n = y.size();
        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(t + 0.5 * dt, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(t + 0.5 * dt, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
        rhs(t + dt, tmp, k4);
        const double w = dt / 6.0;
        for (std::size_t i = 0; i < n; ++i)
            y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
};

} // namespace

StateVector rk4_step(const RhsFn& rhs, const StateVector& y, double t, double dt) {
    Rk4Workspace ws(y.size());
    StateVector out = y;
    ws.step(rhs, out, t, dt);
    if (!all_finite(out))
        throw DivergenceError("rk4_step produced a non-finite state", t + dt);
    return out;
}

double step_doubling_error(const RhsFn& rhs, const StateVector& y, double t, double dt) {
    Rk4Workspace ws(y.size());
    StateVector full = y;
    ws.step(rhs, full, t, dt);
    StateVector halves = y;
    ws.step(rhs, halves, t, 0.5 * dt);
    ws.step(rhs, halves, t + 0.5 * dt, 0.5 * dt);
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        err = std::max(err, std::abs(full[i] - halves[i]));
    return err / 15.0;  // RK4: one-step defect overestimates the halved error 15x
}

TimeSeries integrate(const RhsFn& rhs, StateVector y0, const IntegratorOptions& opts,
                     const ObserverFn& observe, const CheckFn& check,
                     double* max_error_estimate) {
    if (!(opts.dt > 0.0) || !std::isfinite(opts.dt))
        throw std::invalid_argument("integrate: dt must be positive and finite");
    if (!(opts.t_end >= 0.0) || !std::isfinite(opts.t_end))
        throw std::invalid_argument("integrate: t_end must be nonnegative and finite");
    if (opts.sample_stride < 1 || opts.check_stride < 1)
        throw std::invalid_argument("integrate: strides must be >= 1");
    if (!all_finite(y0))
        throw DivergenceError("integrate: non-finite initial state", 0.0);

    const long long n_steps = std::llround(opts.t_end / opts.dt);
    TimeSeries series;
    series.t0 = 0.0;
    series.dt = opts.dt * static_cast<double>(opts.sample_stride);
    series.values.reserve(static_cast<std::size_t>(n_steps / opts.sample_stride) + 1);

    Rk4Workspace ws(y0.size());
    double err_estimate = 0.0;

    series.values.push_back(observe(y0));
    if (check) check(0.0, y0);

    for (long long step = 1; step <= n_steps; ++step) {
        const double t_prev = static_cast<double>(step - 1) * opts.dt;
        const bool sampled = (step % opts.sample_stride == 0) || step == n_steps;
        if (max_error_estimate && opts.estimate_error && sampled)
            err_estimate = std::max(err_estimate, step_doubling_error(rhs, y0, t_prev, opts.dt));

        ws.step(rhs, y0, t_prev, opts.dt);
        const double t = static_cast<double>(step) * opts.dt;
        if (!all_finite(y0))
            throw DivergenceError("integrate: state became non-finite", t);
        if (step % opts.sample_stride == 0)
            series.values.push_back(observe(y0));
        if (check && (step % opts.check_stride == 0 || step == n_steps))
            check(t, y0);
    }

    if (max_error_estimate) *max_error_estimate = err_estimate;
    return series;
}

} // namespace rabi::ode
