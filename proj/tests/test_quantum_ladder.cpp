#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rabisim/errors.hpp"
#include "rabisim/ode.hpp"
#include "rabisim/quantum_ladder.hpp"

using rabi::DivergenceError;
using rabi::InvalidStateError;
using rabi::SystemParams;
using rabi::TimeSeries;
using rabi::TruncationError;
namespace ladder = rabi::ladder;

namespace {

SystemParams quantum_params(double g, double gamma, double b, double alpha_sq, int n_max) {
    SystemParams p;
    p.coupling = g;
    p.rabi = g;
    p.gamma = gamma;
    p.branching = b;
    p.alpha_sq = alpha_sq;
    p.n_max = n_max;
    return p;
}

SystemParams paper_params(double b) {
    return quantum_params(10.0, 1.0, b, 25.0, 75);
}

// seeded generator for property-style checks on synthetic states
ladder::LadderState random_state(std::mt19937& rng, int n_max) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ladder::LadderState s;
    s.pop_g.resize(n_max + 1);
    s.pop_e.resize(n_max + 1);
    s.coh.resize(n_max);
    const double scale = 1.0 / (2.0 * (n_max + 1));
    for (int m = 0; m <= n_max; ++m) {
        s.pop_g[m] = scale * unit(rng);
        s.pop_e[m] = scale * unit(rng);
    }
    for (int n = 0; n < n_max; ++n)
        s.coh[n] = {scale * (unit(rng) - 0.5), scale * (unit(rng) - 0.5)};
    s.external_leak = unit(rng) * 0.1;
    return s;
}

} // namespace

TEST_CASE("suggested_n_max follows the ten-sigma rule") {
    CHECK(ladder::suggested_n_max(25.0) == 75);
    CHECK(ladder::suggested_n_max(0.0) == 0);
    CHECK(ladder::suggested_n_max(4.0) == 24);
}

TEST_CASE("coherent_weights: vacuum and normalization") {
    const auto vacuum = ladder::coherent_weights(0.0, 5);
    CHECK(vacuum[0] == 1.0);
    for (int n = 1; n <= 5; ++n) CHECK(vacuum[n] == 0.0);

    for (double alpha_sq : {1.0, 4.0, 25.0}) {
        const auto w = ladder::coherent_weights(alpha_sq, ladder::suggested_n_max(alpha_sq));
        double sum = 0.0;
        for (double v : w) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum >= 1.0 - 1e-12);
        CHECK(sum <= 1.0 + 1e-12);
    }
}

TEST_CASE("coherent_weights: Poisson mass at the mean, alpha_sq = 25") {
    const auto w = ladder::coherent_weights(25.0, 75);
    CHECK(w[25] == doctest::Approx(0.0795229514680654).epsilon(1e-12));
    CHECK(w[0] == doctest::Approx(1.3887943864964021e-11).epsilon(1e-12));
}

TEST_CASE("coherent_weights: truncation gate suggests a usable n_max") {
    try {
        ladder::coherent_weights(25.0, 30);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.suggested_n_max == 75);
    }
    CHECK(ladder::poisson_tail_mass(25.0, 75) < ladder::kTailTolerance);
    CHECK(ladder::poisson_tail_mass(25.0, 30) > 0.1);
}

TEST_CASE("ladder_rhs: from the coherent initial state only coherences move") {
    const SystemParams p = paper_params(1.0);
    const ladder::LadderState s0 = ladder::initial_state(p);
    const ladder::LadderState d = ladder::ladder_rhs(s0, p);
    const auto w = ladder::coherent_weights(25.0, 75);
    for (int n = 0; n <= 75; ++n) CHECK(d.pop_e[n] == 0.0);
    for (int n = 0; n < 75; ++n) {
        CHECK(d.coh[n].real() == 0.0);
        CHECK(d.coh[n].imag() ==
              doctest::Approx(10.0 * std::sqrt(n + 1.0) * w[n + 1]).epsilon(1e-14));
    }
    CHECK(d.external_leak == 0.0);
}

TEST_CASE("ladder_rhs: trace flow identity on random states") {
    std::mt19937 rng(20240817);
    for (double b : {0.0, 0.37, 1.0}) {
        const SystemParams p = quantum_params(10.0, 1.0, b, 4.0, 24);
        for (int trial = 0; trial < 25; ++trial) {
            const ladder::LadderState s = random_state(rng, 24);
            const ladder::LadderState d = ladder::ladder_rhs(s, p);
            const double rate = d.trace();
            const double expected = -(1.0 - b) * p.gamma * s.rho_ee();
            CHECK(std::abs(rate - expected) < 1e-14);
            CHECK(std::abs(d.external_leak + expected) < 1e-14);  // leak balances the loss
        }
    }
}

TEST_CASE("ladder_rhs: rejects bad input") {
    const SystemParams p = quantum_params(10.0, 1.0, 1.0, 4.0, 24);
    ladder::LadderState s = ladder::initial_state(p);
    s.pop_e[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ladder::ladder_rhs(s, p), InvalidStateError);

    const ladder::LadderState wrong_size = ladder::initial_state(quantum_params(10, 1, 1, 4, 30));
    CHECK_THROWS_AS(ladder::ladder_rhs(wrong_size, p), InvalidStateError);
}

TEST_CASE("pack/unpack round trip") {
    std::mt19937 rng(7);
    const ladder::LadderState s = random_state(rng, 12);
    const ladder::LadderState back = ladder::unpack(ladder::pack(s), 12);
    CHECK(back.pop_g == s.pop_g);
    CHECK(back.pop_e == s.pop_e);
    CHECK(back.coh == s.coh);
    CHECK(back.external_leak == s.external_leak);
    CHECK(ladder::pack(s).size() == ladder::packed_size(12));
}

TEST_CASE("evolve: closed system at b=1 conserves the trace, leak stays zero") {
    ladder::EvolveOptions opts;
    opts.sample_stride = 20;
    double worst = 0.0;
    ladder::evolve_observed(paper_params(1.0), opts, [&](double, const ladder::LadderState& s) {
        worst = std::max(worst, std::abs(s.trace() - 1.0));
        CHECK(s.external_leak == 0.0);
    });
    CHECK(worst < 1e-6);
}

TEST_CASE("evolve: trace + external leak accounts for every decay channel") {
    for (double b : {0.0, 0.5}) {
        ladder::EvolveOptions opts;
        opts.t_end = 4.0;
        opts.sample_stride = 20;
        double worst = 0.0;
        double final_leak = 0.0;
        ladder::evolve_observed(paper_params(b), opts, [&](double, const ladder::LadderState& s) {
            worst = std::max(worst, std::abs(s.trace() + s.external_leak - 1.0));
            final_leak = s.external_leak;
            for (double v : s.pop_g) CHECK(v >= -1e-9);
            for (double v : s.pop_e) CHECK(v >= -1e-9);
        });
        CAPTURE(b);
        CHECK(worst < 1e-6);
        if (b < 1.0) CHECK(final_leak > 0.1);  // substantial emission over 4 decay times
    }
}

TEST_CASE("evolve: matches the closed-form b=0 ladder sum") {
    const SystemParams p = paper_params(0.0);
    ladder::EvolveOptions opts;
    const TimeSeries exact = ladder::evolve(p, opts);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i)
        worst = std::max(worst,
                         std::abs(exact.values[i] - ladder::rho_ee_quantum_b0(exact.time_at(i), p)));
    CHECK(worst < 1e-4);
}

TEST_CASE("evolve: collapse and two revivals show up as envelope excursions") {
    const TimeSeries s = ladder::evolve(paper_params(1.0), {});
    auto window_max = [&](double lo, double hi) {
        double best = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double t = s.time_at(i);
            if (t >= lo && t <= hi) best = std::max(best, std::abs(s.values[i] - 0.5));
        }
        return best;
    };
    const double dead_zone = window_max(1.3, 2.2);     // after the collapse, before revival 1
    const double revival1 = window_max(2.7, 3.6);      // around t ~ pi
    const double revival2 = window_max(5.9, 6.7);      // around t ~ 2 pi
    CHECK(revival1 > 3.0 * dead_zone);
    CHECK(revival2 > 2.0 * dead_zone);
    CHECK(revival1 > revival2);  // successive revivals are weaker
}

TEST_CASE("evolve: refuses a step that cannot resolve the fastest manifold") {
    ladder::EvolveOptions opts;
    opts.dt = 5e-3;  // fastest period at n_max=75 is ~0.036
    CHECK_THROWS_AS(ladder::evolve(paper_params(1.0), opts), std::invalid_argument);
}

TEST_CASE("evolve: truncation insensitivity at a small coherent amplitude") {
    const SystemParams base = quantum_params(10.0, 1.0, 1.0, 4.0, ladder::suggested_n_max(4.0));
    SystemParams wide = base;
    wide.n_max = base.n_max + 20;
    ladder::EvolveOptions opts;
    opts.t_end = 2.0;
    const TimeSeries a = ladder::evolve(base, opts);
    const TimeSeries b = ladder::evolve(wide, opts);
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    CHECK(worst < 1e-6);
}

TEST_CASE("b=0 manifolds evolve as isolated three-variable blocks") {
    const SystemParams p = paper_params(0.0);
    const int manifold = 24;  // near the Poisson peak
    const double root = std::sqrt(manifold + 1.0);
    const double g = p.coupling, gamma = p.gamma;

    // isolated block: y = [pop_g[25], pop_e[24], Re coh, Im coh]
    rabi::ode::RhsFn block = [=](double, const rabi::ode::StateVector& y,
                                 rabi::ode::StateVector& d) {
        const double drive = 2.0 * g * root * y[3];
        d[0] = -drive;
        d[1] = drive - gamma * y[1];
        d[2] = -0.5 * gamma * y[2];
        d[3] = -g * root * (y[1] - y[0]) - 0.5 * gamma * y[3];
    };
    const auto w = ladder::coherent_weights(p.alpha_sq, p.n_max);
    rabi::ode::IntegratorOptions iopts;
    iopts.dt = 5e-4;
    iopts.t_end = 2.0;
    std::vector<double> isolated;
    rabi::ode::integrate(block, {w[manifold + 1], 0.0, 0.0, 0.0}, iopts,
                         [&](const rabi::ode::StateVector& y) {
                             isolated.push_back(y[1]);
                             return y[1];
                         });

    ladder::EvolveOptions opts;
    opts.t_end = 2.0;
    std::vector<double> full;
    ladder::evolve_observed(p, opts, [&](double, const ladder::LadderState& s) {
        full.push_back(s.pop_e[manifold]);
    });

    REQUIRE(isolated.size() == full.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i)
        worst = std::max(worst, std::abs(full[i] - isolated[i]));
    CHECK(worst < 1e-8);
}

TEST_CASE("population_g0: sink stays frozen at b=0 and fills at b=1") {
    const auto w = ladder::coherent_weights(25.0, 75);
    ladder::EvolveOptions opts;
    double first = -1.0, last = -1.0;
    ladder::evolve_observed(paper_params(0.0), opts, [&](double t, const ladder::LadderState& s) {
        if (t == 0.0) first = ladder::population_g0(s);
        last = ladder::population_g0(s);
    });
    CHECK(first == w[0]);
    CHECK(last == first);  // no feeding term at b=0

    double last_b1 = -1.0;
    double prev = -1.0;
    bool monotone = true;
    ladder::evolve_observed(paper_params(1.0), opts, [&](double, const ladder::LadderState& s) {
        const double v = ladder::population_g0(s);
        if (prev >= 0.0 && v < prev) monotone = false;
        prev = v;
        last_b1 = v;
    });
    CHECK(last_b1 > w[0]);
    CHECK(monotone);
}

TEST_CASE("check_invariants flags unphysical states with the failure time") {
    const SystemParams p = quantum_params(10.0, 1.0, 1.0, 4.0, 24);
    ladder::LadderState s = ladder::initial_state(p);
    s.pop_e[0] = 1.5;  // breaks both positivity bookkeeping and the trace ledger
    try {
        ladder::check_invariants(s, 2.5, {});
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.t_fail == 2.5);
    }
    CHECK_NOTHROW(ladder::check_invariants(ladder::initial_state(p), 0.0, {}));
}

TEST_CASE("rho_ee_quantum_b0: limits and regime guard") {
    const SystemParams p = paper_params(0.0);
    CHECK(ladder::rho_ee_quantum_b0(0.0, p) == 0.0);

    // decay-free limit: plain Jaynes-Cummings collapse-revival sum
    SystemParams free = p;
    free.gamma = 0.0;
    const auto w = ladder::coherent_weights(25.0, 75);
    for (double t : {0.07, 0.5, 3.14}) {
        double expected = 0.0;
        for (int n = 0; n < 75; ++n) {
            const double s = std::sin(10.0 * std::sqrt(n + 1.0) * t);
            expected += w[n + 1] * s * s;
        }
        CHECK(ladder::rho_ee_quantum_b0(t, free) == doctest::Approx(expected).epsilon(1e-12));
    }

    SystemParams weak = p;
    weak.coupling = 0.1;
    weak.rabi = 0.1;
    weak.gamma = 1.0;
    CHECK_THROWS_AS(ladder::rho_ee_quantum_b0(1.0, weak), rabi::RegimeError);
}
