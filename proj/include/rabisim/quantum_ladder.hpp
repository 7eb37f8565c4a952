// quantum_ladder.hpp — fully quantum Fock-ladder master equation for the
// atom + single-mode field, with coherent-state initial conditions

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "rabisim/system_params.hpp"
#include "rabisim/time_series.hpp"

namespace rabi::ladder {

// Tail-mass gate for the Fock truncation (hard limit on the coherent
// weight discarded above n_max).
inline constexpr double kTailTolerance = 1e-9;

// Default truncation rule: ten Poisson standard deviations above the mean.
int suggested_n_max(double alpha_sq);

// Ladder state. Manifold n couples |g,n+1> and |e,n> through coh[n]:
//   pop_g[m]  = rho_{g m, g m},        m = 0..n_max
//   pop_e[n]  = rho_{e n, e n},        n = 0..n_max
//   coh[n]    = rho_{g n+1, e n},      n = 0..n_max-1  (conjugate implicit)
//   external_leak = probability emitted into states outside the ladder.
// pop_g[0] is the |g,0> sink: fed by decay, coupled to nothing.
struct LadderState {
    std::vector<double> pop_g;
    std::vector<double> pop_e;
    std::vector<std::complex<double>> coh;
    double external_leak{0.0};

    int n_max() const { return static_cast<int>(pop_g.size()) - 1; }
    double trace() const;   // sum of all populations
    double rho_ee() const;  // sum of excited populations
};

struct EvolveOptions {
    double t_end{8.0};
    double dt{5e-4};
    int sample_stride{1};
    int check_stride{200};     // invariant-check cadence, in steps
    double trace_tol{1e-6};    // |trace + leak - 1|
    double positivity_tol{1e-9};
    double coherence_tol{1e-8};  // |coh|^2 <= pop_g*pop_e + tol
};

// Poisson weights p_n = e^{-|alpha|^2} |alpha|^{2n} / n! for n = 0..n_max,
// evaluated in the log domain. Throws TruncationError (with a suggested
// n_max) when the discarded tail mass exceeds kTailTolerance.
std::vector<double> coherent_weights(double alpha_sq, int n_max);

// Tail mass sum_{n > n_max} p_n (clamped at zero).
double poisson_tail_mass(double alpha_sq, int n_max);

// Atom in |g>, field in the coherent state: pop_g[n] = p_n, rest zero.
LadderState initial_state(const SystemParams& params);

// Time derivative per the ladder master equation with g real:
//   d pop_g[n+1]/dt = -2 g sqrt(n+1) Im coh[n] + b Gamma pop_e[n+1]
//   d pop_e[n]/dt   = +2 g sqrt(n+1) Im coh[n] - Gamma pop_e[n]
//   d coh[n]/dt     = -i g sqrt(n+1) (pop_e[n] - pop_g[n+1]) - (Gamma/2) coh[n]
//   d pop_g[0]/dt   = b Gamma pop_e[0]                      (|g,0> sink)
//   d leak/dt       = (1-b) Gamma sum_n pop_e[n]
// The top level pop_e[n_max] keeps only its -Gamma decay (no partner above
// the truncation). Throws InvalidStateError on non-finite input.
LadderState ladder_rhs(const LadderState& state, const SystemParams& params);

// Flat packing used with the shared RK4 integrator (complex split into
// real/imaginary). Layout, for N = n_max:
//   y[0 .. N]            pop_g[0..N]
//   y[N+1 .. 2N+1]       pop_e[0..N]
//   y[2N+2 + 2k]         Re coh[k],  k = 0..N-1
//   y[2N+3 + 2k]         Im coh[k]
//   y[4N+2]              external_leak
std::vector<double> pack(const LadderState& state);
LadderState unpack(const std::vector<double>& y, int n_max);
std::size_t packed_size(int n_max);

// RK4 trajectory of rho_ee(t) = sum_n pop_e[n], labeled "quantum-ladder".
// Requires dt <= (2 pi / (2 g sqrt(n_max+1))) / 20 so the fastest manifold
// is resolved (std::invalid_argument otherwise). LadderState invariants
// are checked every check_stride steps; a violation throws DivergenceError
// with the time of first failure.
TimeSeries evolve(const SystemParams& params, const EvolveOptions& opts);

// Same trajectory, calling observer with the unpacked state at every
// sampled step.
void evolve_observed(const SystemParams& params, const EvolveOptions& opts,
                     const std::function<void(double, const LadderState&)>& observer);

// Closed-form b = 0 solution, truncated at n_max:
//   sum_n (4 g^2 (n+1) p_{n+1} / xi_n^2) e^{-Gamma t / 2} sin^2(xi_n t / 2),
//   xi_n = sqrt(4 g^2 (n+1) - Gamma^2/4).
// Throws RegimeError if xi_0 is imaginary, TruncationError via the weights.
double rho_ee_quantum_b0(double t, const SystemParams& params);

// Sampled version of the above, labeled "quantum-analytic-b0".
TimeSeries sample_quantum_b0(const SystemParams& params, double t_end, double dt);

// Population of the lowest state |g,0> (the irreversible sink for b > 0).
double population_g0(const LadderState& state);

// Invariant check used by evolve; throws DivergenceError. Exposed for tests.
void check_invariants(const LadderState& state, double t, const EvolveOptions& opts);

} // namespace rabi::ladder
