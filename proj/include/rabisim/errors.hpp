// errors.hpp — exception types shared by all rabisim modules

#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

// Base class for everything thrown by this library.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Analytic form requested outside its regime of validity (e.g. the
// strong-coupling condition 16|Omega|^2 > Gamma^2 is violated).
struct RegimeError : SimError {
    using SimError::SimError;
};

// Non-finite or otherwise unusable state handed to a right-hand side.
struct InvalidStateError : SimError {
    using SimError::SimError;
};

// Fock truncation too small for the requested coherent amplitude.
struct TruncationError : SimError {
    TruncationError(const std::string& msg, int suggested)
        : SimError(msg), suggested_n_max(suggested) {}
    int suggested_n_max{0};
};

// Integration produced a non-finite state or violated a physics invariant.
struct DivergenceError : SimError {
    DivergenceError(const std::string& msg, double t)
        : SimError(msg), t_fail(t) {}
    double t_fail{0.0};
};

// Two time series do not share a sampling grid (no resampling is done).
struct AlignmentError : SimError {
    using SimError::SimError;
};

// Not enough envelope peaks (or samples) for the requested analysis.
struct InsufficientDataError : SimError {
    using SimError::SimError;
};

// Bad run configuration (CLI or JSON config file).
struct ConfigError : SimError {
    using SimError::SimError;
};

} // namespace rabi
