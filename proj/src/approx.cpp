#include "rabisim/approx.hpp"

#include <cmath>

#include "rabisim/quantum_ladder.hpp"
#include "rabisim/semiclassical.hpp"

namespace rabi::approx {

double guess_rate(const GuessMode& mode, const SystemParams& params) {
    switch (mode.kind) {
        case GuessMode::Kind::QuantumRate:
            return 0.5 * params.gamma;
        case GuessMode::Kind::SemiclassicalRate:
            return semiclassical::damping_rate(params);  // RegimeError outside strong coupling
        case GuessMode::Kind::Explicit:
            if (mode.explicit_rate < 0.0 || !std::isfinite(mode.explicit_rate))
                throw ConfigError("explicit guess rate must be nonnegative");
            return mode.explicit_rate;
    }
    throw ConfigError("unknown guess mode");
}

double rho_ee_approx(double t, const SystemParams& params, const GuessMode& mode, Form form) {
    const double rate = guess_rate(mode, params);
    const std::vector<double> p = ladder::coherent_weights(params.alpha_sq, params.n_max);
    const double g = params.coupling;
    const double weight_scale = (form == Form::AsPrinted) ? 0.5 : 1.0;

    double sum = 0.0;
    for (int n = 0; n + 1 <= params.n_max; ++n)
        sum += p[n + 1] * std::cos(2.0 * g * std::sqrt(n + 1.0) * t);
    return 0.5 * (1.0 - weight_scale * sum * std::exp(-rate * t));
}

TimeSeries sample(const SystemParams& params, const GuessMode& mode, Form form,
                  double t_end, double dt) {
    const long long n = std::llround(t_end / dt);
    TimeSeries series;
    series.dt = dt;
    series.label = "approx";
    series.values.reserve(static_cast<std::size_t>(n) + 1);
    // hoist the weights out of the time loop
    const double rate = guess_rate(mode, params);
    const std::vector<double> p = ladder::coherent_weights(params.alpha_sq, params.n_max);
    const double weight_scale = (form == Form::AsPrinted) ? 0.5 : 1.0;
    std::vector<double> freq(static_cast<std::size_t>(params.n_max));
    for (int k = 0; k < params.n_max; ++k)
        freq[k] = 2.0 * params.coupling * std::sqrt(k + 1.0);

    for (long long i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) * dt;
        double sum = 0.0;
        for (int k = 0; k < params.n_max; ++k) sum += p[k + 1] * std::cos(freq[k] * t);
        series.values.push_back(0.5 * (1.0 - weight_scale * sum * std::exp(-rate * t)));
    }
    return series;
}

} // namespace rabi::approx
