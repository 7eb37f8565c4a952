#include "rabisim/analysis.hpp"

#include <cmath>

#include "rabisim/errors.hpp"

namespace rabi::analysis {

namespace {

bool grids_match(const TimeSeries& a, const TimeSeries& b) {
    if (a.size() != b.size()) return false;
    const double scale = std::max({std::abs(a.dt), std::abs(b.dt), 1e-300});
    return std::abs(a.t0 - b.t0) <= 1e-12 * std::max(1.0, std::abs(a.t0)) &&
           std::abs(a.dt - b.dt) <= 1e-12 * scale;
}

} // namespace

TimeSeries difference_series(const TimeSeries& a, const TimeSeries& b) {
    if (!grids_match(a, b))
        throw AlignmentError("difference_series: series are not on the same grid");
    TimeSeries delta;
    delta.t0 = a.t0;
    delta.dt = a.dt;
    delta.label = "delta:" + a.label + "-" + b.label;
    delta.values.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        delta.values[i] = a.values[i] - b.values[i];
    return delta;
}

std::vector<Peak> envelope_peaks(const TimeSeries& series, double baseline) {
    std::vector<Peak> peaks;
    const auto& v = series.values;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double prev = std::abs(v[i - 1] - baseline);
        const double here = std::abs(v[i] - baseline);
        const double next = std::abs(v[i + 1] - baseline);
        // strict rise into the peak, ties with the next sample go to the earlier one
        if (here > prev && here >= next)
            peaks.push_back({series.time_at(i), here});
    }
    if (peaks.size() < 3)
        throw InsufficientDataError("envelope_peaks: fewer than 3 envelope peaks found");
    return peaks;
}

DampingFit fit_damping_rate(const TimeSeries& series, double baseline, Window window) {
    const std::vector<Peak> all = envelope_peaks(series, baseline);
    std::vector<double> t, log_a;
    for (const Peak& p : all) {
        if (!window.contains(p.t)) continue;
        if (p.amplitude <= 0.0) continue;  // log undefined; excluded
        t.push_back(p.t);
        log_a.push_back(std::log(p.amplitude));
    }
    const int n = static_cast<int>(t.size());
    if (n < 3)
        throw InsufficientDataError("fit_damping_rate: fewer than 3 usable peaks in window");

    double st = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        st += t[i];
        sy += log_a[i];
    }
    const double mt = st / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = t[i] - mt, dy = log_a[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw InsufficientDataError("fit_damping_rate: degenerate peak times");

    const double slope = sxy / sxx;
    DampingFit fit;
    fit.rate = -slope;
    fit.intercept = my - slope * mt;
    fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.n_peaks = n;
    return fit;
}

std::vector<Window> revival_windows(const SystemParams& params) {
    if (!(params.alpha_sq > 1.0)) return {};
    const double t_revival = 2.0 * M_PI * std::sqrt(params.alpha_sq) / params.coupling;
    const double half_width = 0.25 * t_revival;  // full width = half a revival period
    std::vector<Window> windows;
    for (int k = 1; k <= 2; ++k) {
        const double center = k * t_revival;
        windows.push_back({center - half_width, center + half_width});
    }
    return windows;
}

std::pair<double, double> max_abs(const TimeSeries& series) {
    if (series.empty())
        throw InsufficientDataError("max_abs: empty series");
    std::size_t best = 0;
    for (std::size_t i = 1; i < series.size(); ++i)
        if (std::abs(series.values[i]) > std::abs(series.values[best])) best = i;
    return {series.time_at(best), series.values[best]};
}

double windowed_max_abs(const TimeSeries& series, Window window) {
    double best = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (window.contains(series.time_at(i)))
            best = std::max(best, std::abs(series.values[i]));
    return best;
}

} // namespace rabi::analysis
