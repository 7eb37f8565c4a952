#include "rabisim/semiclassical.hpp"

#include <cmath>

#include "rabisim/ode.hpp"

namespace rabi::semiclassical {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_strong_coupling(const SystemParams& p) {
    if (!(16.0 * p.rabi * p.rabi > p.gamma * p.gamma))
        throw RegimeError("analytic Bloch solution requires 16 Omega^2 > Gamma^2");
}

bool finite(const BlochState& s) {
    return std::isfinite(s.rho_gg) && std::isfinite(s.rho_ee) &&
           std::isfinite(s.rho_ge.real()) && std::isfinite(s.rho_ge.imag());
}

// Flat layout for the shared integrator: [rho_gg, rho_ee, Re rho_ge, Im rho_ge].
ode::StateVector pack(const BlochState& s) {
    return {s.rho_gg, s.rho_ee, s.rho_ge.real(), s.rho_ge.imag()};
}

BlochState unpack(const ode::StateVector& y) {
    return {y[0], y[1], {y[2], y[3]}};
}

ode::RhsFn bloch_flat_rhs(const SystemParams& params) {
    return [params](double, const ode::StateVector& y, ode::StateVector& dydt) {
        const BlochState d = bloch_rhs(unpack(y), params);
        dydt[0] = d.rho_gg;
        dydt[1] = d.rho_ee;
        dydt[2] = d.rho_ge.real();
        dydt[3] = d.rho_ge.imag();
    };
}

} // namespace

BlochState bloch_rhs(const BlochState& state, const SystemParams& params) {
    if (!finite(state))
        throw InvalidStateError("bloch_rhs: non-finite state");
    const double omega = params.rabi;
    const double gamma = params.gamma;
    const double b = params.branching;
    const std::complex<double> rho_ge = state.rho_ge;
    const std::complex<double> rho_eg = std::conj(rho_ge);

    BlochState d;
    d.rho_gg = (-kI * omega * (rho_eg - rho_ge)).real() + b * gamma * state.rho_ee;
    d.rho_ee = (-kI * omega * (rho_ge - rho_eg)).real() - gamma * state.rho_ee;
    d.rho_ge = -kI * omega * (state.rho_ee - state.rho_gg) - 0.5 * gamma * rho_ge;
    return d;
}

FCoefficients f_coefficients(const SystemParams& params) {
    require_strong_coupling(params);
    const double omega2 = params.rabi * params.rabi;
    const double gamma = params.gamma;
    const double p = 16.0 * omega2 - gamma * gamma;  // > 0 in regime

    if (params.branching == 0.0) {
        // Closed form at b = 0; the Cardano route would cancel to 0/0 precision.
        return {0.0, std::sqrt(p / 3.0), 3.0 * std::sqrt(3.0 * p * p * p)};
    }

    const double b = params.branching;
    const double a_cubic = 216.0 * b * gamma * omega2 +
                           3.0 * std::sqrt(5184.0 * b * b * gamma * gamma * omega2 * omega2 +
                                           3.0 * p * p * p);
    const double a13 = std::cbrt(a_cubic);
    FCoefficients f;
    f.a_cubic = a_cubic;
    f.f1 = a13 / 6.0 - p / (2.0 * a13);
    f.f2 = a13 / 6.0 + p / (2.0 * a13);
    return f;
}

double rho_ee_analytic(double t, const SystemParams& params) {
    const FCoefficients f = f_coefficients(params);
    const double omega2 = params.rabi * params.rabi;
    const double prefactor = 8.0 * omega2 / (3.0 * (3.0 * f.f1 * f.f1 + f.f2 * f.f2));
    const double phase = 0.5 * std::sqrt(3.0) * f.f2 * t;
    const double oscillation =
        std::sqrt(3.0) * (f.f1 / f.f2) * std::sin(phase) + std::cos(phase);
    return prefactor * std::exp((f.f1 - 0.5 * params.gamma) * t) *
           (1.0 - std::exp(-1.5 * f.f1 * t) * oscillation);
}

double rho_ee_b0(double t, const SystemParams& params) {
    const double omega2 = params.rabi * params.rabi;
    const double zeta_sq = 4.0 * omega2 - 0.25 * params.gamma * params.gamma;
    if (!(zeta_sq > 0.0))
        throw RegimeError("rho_ee_b0 requires 4 Omega^2 > Gamma^2 / 4");
    const double zeta = std::sqrt(zeta_sq);
    const double s = std::sin(0.5 * zeta * t);
    return (4.0 * omega2 / zeta_sq) * std::exp(-0.5 * params.gamma * t) * s * s;
}

double rho_ee_b1(double t, const SystemParams& params) {
    const double omega2 = params.rabi * params.rabi;
    const double gamma = params.gamma;
    const double lambda_sq = 4.0 * omega2 - gamma * gamma / 16.0;
    if (!(lambda_sq > 0.0))
        throw RegimeError("rho_ee_b1 requires 4 Omega^2 > Gamma^2 / 16");
    const double lambda = std::sqrt(lambda_sq);
    const double prefactor = 4.0 * omega2 / (8.0 * omega2 + gamma * gamma);
    return prefactor *
           (1.0 - (std::cos(lambda * t) + 0.75 * gamma / lambda * std::sin(lambda * t)) *
                      std::exp(-0.75 * gamma * t));
}

double rho_ee_b1_strong(double t, const SystemParams& params) {
    return 0.5 * (1.0 - std::cos(2.0 * params.rabi * t) * std::exp(-0.75 * params.gamma * t));
}

double damping_rate(const SystemParams& params) {
    return 0.5 * (params.gamma + f_coefficients(params).f1);
}

double steady_state_b1(const SystemParams& params) {
    const double omega2 = params.rabi * params.rabi;
    return 4.0 * omega2 / (8.0 * omega2 + params.gamma * params.gamma);
}

TimeSeries sample_analytic(const SystemParams& params, double t_end, double dt) {
    const long long n = std::llround(t_end / dt);
    TimeSeries series;
    series.dt = dt;
    series.label = "semiclassical-analytic";
    series.values.reserve(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i)
        series.values.push_back(rho_ee_analytic(static_cast<double>(i) * dt, params));
    return series;
}

TimeSeries integrate_bloch(const SystemParams& params, double t_end, double dt) {
    ode::IntegratorOptions opts;
    opts.dt = dt;
    opts.t_end = t_end;
    TimeSeries series = ode::integrate(bloch_flat_rhs(params), pack(BlochState{}), opts,
                                       [](const ode::StateVector& y) { return y[1]; });
    series.label = "semiclassical-ode";
    return series;
}

void integrate_bloch_observed(const SystemParams& params, double t_end, double dt,
                              const std::function<void(double, const BlochState&)>& observer) {
    ode::IntegratorOptions opts;
    opts.dt = dt;
    opts.t_end = t_end;
    double t_sample = 0.0;
    std::size_t index = 0;
    ode::integrate(bloch_flat_rhs(params), pack(BlochState{}), opts,
                   [&](const ode::StateVector& y) {
                       t_sample = static_cast<double>(index++) * dt;
                       observer(t_sample, unpack(y));
                       return y[1];
                   });
}

} // namespace rabi::semiclassical
