// time_series.hpp — uniformly sampled trajectory container

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rabisim/errors.hpp"

namespace rabi {

// A uniformly sampled (t, value) trajectory. values[i] sits at t0 + i*dt.
// label identifies the producing model (semiclassical-analytic,
// semiclassical-ode, quantum-ladder, quantum-analytic-b0, approx, delta:*).
struct TimeSeries {
    double t0{0.0};
    double dt{0.0};
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    double back_time() const { return time_at(values.empty() ? 0 : values.size() - 1); }

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0))
            throw SimError("time series requires finite t0 and dt > 0");
        for (double v : values)
            if (!std::isfinite(v)) throw SimError("time series contains non-finite values");
    }
};

// Closed time interval, used for fit windows and revival regions.
struct Window {
    double t_min{0.0};
    double t_max{0.0};
    bool contains(double t) const { return t >= t_min && t <= t_max; }
};

} // namespace rabi
