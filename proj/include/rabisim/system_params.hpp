// system_params.hpp — physical configuration of the driven two-level atom

#pragma once

#include <cmath>

#include "rabisim/errors.hpp"

namespace rabi {

// Physical parameters. Gamma sets the unit of time; rabi and coupling are
// quoted in units of gamma. The semiclassical engine reads `rabi` (|Omega|),
// the quantum ladder engine reads `coupling` (|g|), `alpha_sq` (|alpha|^2,
// the mean photon number of the initial coherent field) and `n_max` (Fock
// truncation). Both drive strengths are kept so mixed comparisons (exact
// ladder vs semiclassical-rate approximation) run off one object.
//
// Phase convention: Omega and g are real and nonnegative. The observable
// rho_ee depends only on |Omega| (resp. |g|), so a drive phase is dropped.
struct SystemParams {
    double rabi{10.0};      // |Omega|, semiclassical Rabi coupling
    double coupling{10.0};  // |g|, atom-field coupling for the quantum ladder
    double gamma{1.0};      // Gamma, total spontaneous decay rate
    double branching{1.0};  // b, fraction of Gamma decaying back into |g>
    double alpha_sq{25.0};  // |alpha|^2, mean photon number
    int n_max{75};          // Fock truncation (highest retained photon number)

    // Strong-coupling condition under which f1, f2 are real and positive.
    bool strong_coupling() const {
        return 16.0 * rabi * rabi > gamma * gamma;
    }

    // Full invariant check, used at the CLI / evolve boundary. The pure
    // analytic evaluators only check their own local regime conditions so
    // that decay-free limits (gamma = 0) stay evaluable.
    void validate() const {
        if (!(std::isfinite(rabi) && std::isfinite(coupling) && std::isfinite(gamma) &&
              std::isfinite(branching) && std::isfinite(alpha_sq)))
            throw ConfigError("system parameters must be finite");
        if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
        if (!(rabi > 0.0)) throw ConfigError("rabi must be positive");
        if (!(coupling > 0.0)) throw ConfigError("coupling must be positive");
        if (branching < 0.0 || branching > 1.0)
            throw ConfigError("branching ratio must lie in [0, 1]");
        if (alpha_sq < 0.0) throw ConfigError("alpha_sq must be nonnegative");
        if (n_max < 1) throw ConfigError("n_max must be a positive integer");
    }
};

} // namespace rabi
