#include "rabisim/quantum_ladder.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "rabisim/ode.hpp"

namespace rabi::ladder {

namespace {

void require_quantum_params(const SystemParams& p) {
    if (!(p.coupling > 0.0) || !std::isfinite(p.coupling))
        throw ConfigError("quantum ladder requires coupling > 0");
    if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma))
        throw ConfigError("quantum ladder requires gamma >= 0");
    if (p.branching < 0.0 || p.branching > 1.0)
        throw ConfigError("branching ratio must lie in [0, 1]");
    if (p.alpha_sq < 0.0 || !std::isfinite(p.alpha_sq))
        throw ConfigError("alpha_sq must be nonnegative");
    if (p.n_max < 1) throw ConfigError("n_max must be >= 1");
}

bool finite(const LadderState& s) {
    for (double v : s.pop_g)
        if (!std::isfinite(v)) return false;
    for (double v : s.pop_e)
        if (!std::isfinite(v)) return false;
    for (const auto& c : s.coh)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return std::isfinite(s.external_leak);
}

ode::RhsFn ladder_flat_rhs(const SystemParams& params) {
    const int n_max = params.n_max;
    const double g = params.coupling;
    const double gamma = params.gamma;
    const double b = params.branching;
    // sqrt(n+1) for manifold n = 0..n_max-1
    std::vector<double> root(static_cast<std::size_t>(n_max));
    for (int n = 0; n < n_max; ++n) root[n] = std::sqrt(static_cast<double>(n + 1));

    return [n_max, g, gamma, b, root](double, const ode::StateVector& y,
                                      ode::StateVector& dydt) {
        const std::size_t np = static_cast<std::size_t>(n_max) + 1;
        const double* pg = y.data();
        const double* pe = y.data() + np;
        const double* ch = y.data() + 2 * np;  // interleaved re/im pairs
        double* dpg = dydt.data();
        double* dpe = dydt.data() + np;
        double* dch = dydt.data() + 2 * np;

        double pe_total = 0.0;
        for (std::size_t m = 0; m < np; ++m) {
            dpg[m] = b * gamma * pe[m];
            dpe[m] = -gamma * pe[m];
            pe_total += pe[m];
        }
        for (int n = 0; n < n_max; ++n) {
            const double re = ch[2 * n];
            const double im = ch[2 * n + 1];
            const double drive = 2.0 * g * root[n] * im;
            dpg[n + 1] -= drive;
            dpe[n] += drive;
            dch[2 * n] = -0.5 * gamma * re;
            dch[2 * n + 1] = -g * root[n] * (pe[n] - pg[n + 1]) - 0.5 * gamma * im;
        }
        dydt[y.size() - 1] = (1.0 - b) * gamma * pe_total;
    };
}

ode::CheckFn invariant_check(const SystemParams& params, const EvolveOptions& opts) {
    return [params, opts](double t, const ode::StateVector& y) {
        check_invariants(unpack(y, params.n_max), t, opts);
    };
}

} // namespace

int suggested_n_max(double alpha_sq) {
    return static_cast<int>(std::ceil(alpha_sq + 10.0 * std::sqrt(alpha_sq)));
}

double LadderState::trace() const {
    return std::accumulate(pop_g.begin(), pop_g.end(), 0.0) +
           std::accumulate(pop_e.begin(), pop_e.end(), 0.0);
}

double LadderState::rho_ee() const {
    return std::accumulate(pop_e.begin(), pop_e.end(), 0.0);
}

std::vector<double> coherent_weights(double alpha_sq, int n_max) {
    if (alpha_sq < 0.0 || !std::isfinite(alpha_sq))
        throw ConfigError("coherent_weights: alpha_sq must be nonnegative");
    if (n_max < 1) throw ConfigError("coherent_weights: n_max must be >= 1");

    std::vector<double> weights(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (alpha_sq == 0.0) {
        weights[0] = 1.0;  // vacuum
        return weights;
    }
    const double log_alpha_sq = std::log(alpha_sq);
    for (int n = 0; n <= n_max; ++n)
        weights[n] = std::exp(-alpha_sq + n * log_alpha_sq - std::lgamma(n + 1.0));

    const double tail = poisson_tail_mass(alpha_sq, n_max);
    if (tail > kTailTolerance) {
        std::ostringstream msg;
        msg << "Fock truncation n_max=" << n_max << " discards tail mass " << tail
            << " > " << kTailTolerance << "; suggest n_max >= " << suggested_n_max(alpha_sq);
        throw TruncationError(msg.str(), suggested_n_max(alpha_sq));
    }
    return weights;
}

double poisson_tail_mass(double alpha_sq, int n_max) {
    if (alpha_sq == 0.0) return 0.0;
    const double log_alpha_sq = std::log(alpha_sq);
    double kept = 0.0;
    for (int n = n_max; n >= 0; --n)  // ascending magnitude near the mean last
        kept += std::exp(-alpha_sq + n * log_alpha_sq - std::lgamma(n + 1.0));
    return std::max(0.0, 1.0 - kept);
}

LadderState initial_state(const SystemParams& params) {
    require_quantum_params(params);
    LadderState s;
    s.pop_g = coherent_weights(params.alpha_sq, params.n_max);
    s.pop_e.assign(static_cast<std::size_t>(params.n_max) + 1, 0.0);
    s.coh.assign(static_cast<std::size_t>(params.n_max), {0.0, 0.0});
    return s;
}

LadderState ladder_rhs(const LadderState& state, const SystemParams& params) {
    if (state.n_max() != params.n_max)
        throw InvalidStateError("ladder_rhs: state size does not match params.n_max");
    if (!finite(state))
        throw InvalidStateError("ladder_rhs: non-finite state");
    const std::vector<double> y = pack(state);
    std::vector<double> dydt(y.size());
    ladder_flat_rhs(params)(0.0, y, dydt);
    return unpack(dydt, params.n_max);
}

std::size_t packed_size(int n_max) {
    return 4 * static_cast<std::size_t>(n_max) + 3;
}

std::vector<double> pack(const LadderState& state) {
    const std::size_t np = state.pop_g.size();
    std::vector<double> y(packed_size(state.n_max()));
    for (std::size_t m = 0; m < np; ++m) {
        y[m] = state.pop_g[m];
        y[np + m] = state.pop_e[m];
    }
    for (std::size_t n = 0; n + 1 < np; ++n) {
        y[2 * np + 2 * n] = state.coh[n].real();
        y[2 * np + 2 * n + 1] = state.coh[n].imag();
    }
    y.back() = state.external_leak;
    return y;
}

LadderState unpack(const std::vector<double>& y, int n_max) {
    const std::size_t np = static_cast<std::size_t>(n_max) + 1;
    LadderState s;
    s.pop_g.assign(y.begin(), y.begin() + np);
    s.pop_e.assign(y.begin() + np, y.begin() + 2 * np);
    s.coh.resize(np - 1);
    for (std::size_t n = 0; n + 1 < np; ++n)
        s.coh[n] = {y[2 * np + 2 * n], y[2 * np + 2 * n + 1]};
    s.external_leak = y.back();
    return s;
}

void check_invariants(const LadderState& state, double t, const EvolveOptions& opts) {
    auto fail = [t](const std::string& what) {
        std::ostringstream msg;
        msg << "ladder invariant violated at t=" << t << ": " << what;
        throw DivergenceError(msg.str(), t);
    };
    if (!finite(state)) fail("non-finite state");
    for (double v : state.pop_g)
        if (v < -opts.positivity_tol || v > 1.0 + opts.trace_tol) fail("pop_g out of [0,1]");
    for (double v : state.pop_e)
        if (v < -opts.positivity_tol || v > 1.0 + opts.trace_tol) fail("pop_e out of [0,1]");
    if (state.external_leak < -opts.positivity_tol) fail("negative external leak");
    if (std::abs(state.trace() + state.external_leak - 1.0) > opts.trace_tol)
        fail("trace + external_leak drifted from 1");
    for (std::size_t n = 0; n + 1 < state.pop_g.size(); ++n) {
        const double lhs = std::norm(state.coh[n]);
        if (lhs > state.pop_g[n + 1] * state.pop_e[n] + opts.coherence_tol)
            fail("coherence exceeds population bound");
    }
}

TimeSeries evolve(const SystemParams& params, const EvolveOptions& opts) {
    require_quantum_params(params);
    const double fastest_period =
        2.0 * M_PI / (2.0 * params.coupling * std::sqrt(static_cast<double>(params.n_max) + 1.0));
    if (opts.dt > fastest_period / 20.0) {
        std::ostringstream msg;
        msg << "evolve: dt=" << opts.dt << " does not resolve the fastest manifold; need dt <= "
            << fastest_period / 20.0;
        throw std::invalid_argument(msg.str());
    }

    const std::size_t np = static_cast<std::size_t>(params.n_max) + 1;
    ode::IntegratorOptions iopts;
    iopts.dt = opts.dt;
    iopts.t_end = opts.t_end;
    iopts.sample_stride = opts.sample_stride;
    iopts.check_stride = opts.check_stride;
    TimeSeries series = ode::integrate(
        ladder_flat_rhs(params), pack(initial_state(params)), iopts,
        [np](const ode::StateVector& y) {
            double ree = 0.0;
            for (std::size_t m = 0; m < np; ++m) ree += y[np + m];
            return ree;
        },
        invariant_check(params, opts));
    series.label = "quantum-ladder";
    return series;
}

void evolve_observed(const SystemParams& params, const EvolveOptions& opts,
                     const std::function<void(double, const LadderState&)>& observer) {
    require_quantum_params(params);
    ode::IntegratorOptions iopts;
    iopts.dt = opts.dt;
    iopts.t_end = opts.t_end;
    iopts.sample_stride = opts.sample_stride;
    iopts.check_stride = opts.check_stride;
    const double sample_dt = opts.dt * static_cast<double>(opts.sample_stride);
    std::size_t index = 0;
    ode::integrate(
        ladder_flat_rhs(params), pack(initial_state(params)), iopts,
        [&](const ode::StateVector& y) {
            const double t = static_cast<double>(index++) * sample_dt;
            observer(t, unpack(y, params.n_max));
            return 0.0;
        },
        invariant_check(params, opts));
}

double rho_ee_quantum_b0(double t, const SystemParams& params) {
    require_quantum_params(params);
    const double g2 = params.coupling * params.coupling;
    const double xi0_sq = 4.0 * g2 - 0.25 * params.gamma * params.gamma;
    if (!(xi0_sq > 0.0))
        throw RegimeError("rho_ee_quantum_b0 requires 4 g^2 > Gamma^2 / 4");

    const std::vector<double> p = coherent_weights(params.alpha_sq, params.n_max);
    double sum = 0.0;
    for (int n = 0; n + 1 <= params.n_max; ++n) {
        const double xi_sq = 4.0 * g2 * (n + 1) - 0.25 * params.gamma * params.gamma;
        const double s = std::sin(0.5 * std::sqrt(xi_sq) * t);
        sum += 4.0 * g2 * (n + 1) * p[n + 1] / xi_sq * s * s;
    }
    return sum * std::exp(-0.5 * params.gamma * t);
}

TimeSeries sample_quantum_b0(const SystemParams& params, double t_end, double dt) {
    const long long n = std::llround(t_end / dt);
    TimeSeries series;
    series.dt = dt;
    series.label = "quantum-analytic-b0";
    series.values.reserve(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i)
        series.values.push_back(rho_ee_quantum_b0(static_cast<double>(i) * dt, params));
    return series;
}

double population_g0(const LadderState& state) {
    return state.pop_g.at(0);
}

} // namespace rabi::ladder
