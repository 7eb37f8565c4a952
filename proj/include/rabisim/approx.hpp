// approx.hpp — damped collapse-and-revival envelope model with a guessed
// oscillation damping rate

#pragma once

#include "rabisim/system_params.hpp"
#include "rabisim/time_series.hpp"

namespace rabi::approx {

// Which reading of the approximate formula to evaluate. Corrected is the
// default: it satisfies rho_ee(0) ~ 0. AsPrinted keeps a spurious inner
// factor 1/2 (halving every cosine weight) and is retained for audit.
enum class Form { Corrected, AsPrinted };

// Choice of the guessed damping rate.
struct GuessMode {
    enum class Kind { QuantumRate, SemiclassicalRate, Explicit };
    Kind kind{Kind::QuantumRate};
    double explicit_rate{0.0};

    static GuessMode quantum() { return {Kind::QuantumRate, 0.0}; }
    static GuessMode semiclassical() { return {Kind::SemiclassicalRate, 0.0}; }
    static GuessMode explicit_rate_of(double rate) { return {Kind::Explicit, rate}; }
};

// Gamma/2 (quantum), (Gamma + f1)/2 via the semiclassical coefficients
// (= 3 Gamma/4 at b = 1), or the explicit value. The semiclassical mode
// requires strong coupling (RegimeError otherwise); an explicit rate must
// be nonnegative.
double guess_rate(const GuessMode& mode, const SystemParams& params);

// Corrected form:
//   (1/2) (1 - sum_{n>=0} p_{n+1} cos(2 g sqrt(n+1) t) e^{-rate t}),
// with p_k the coherent (Poisson) weights truncated at n_max. AsPrinted
// halves every summand. Truncation gate as in coherent_weights.
double rho_ee_approx(double t, const SystemParams& params, const GuessMode& mode,
                     Form form = Form::Corrected);

// Sampled trajectory on t = 0, dt, ..., ~t_end, labeled "approx".
TimeSeries sample(const SystemParams& params, const GuessMode& mode, Form form,
                  double t_end, double dt);

} // namespace rabi::approx
