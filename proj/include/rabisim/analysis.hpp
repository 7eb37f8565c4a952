// analysis.hpp — difference curves, envelope extraction and damping-rate fits

#pragma once

#include <utility>
#include <vector>

#include "rabisim/system_params.hpp"
#include "rabisim/time_series.hpp"

namespace rabi::analysis {

// Result of a log-linear envelope fit.
struct DampingFit {
    double rate{0.0};       // minus the slope of log(amplitude) vs t
    double intercept{0.0};  // log-amplitude intercept at t = 0
    double r_squared{0.0};  // goodness of fit, reported not gated
    int n_peaks{0};         // envelope points used
};

struct Peak {
    double t{0.0};
    double amplitude{0.0};  // |value - baseline| at the peak
};

// Pointwise a - b. The two series must share t0, dt and length exactly
// (AlignmentError otherwise; no resampling). Result labeled
// "delta:<a.label>-<b.label>".
TimeSeries difference_series(const TimeSeries& a, const TimeSeries& b);

// Local maxima of |value - baseline| by 3-point comparison, ties broken
// toward the earlier sample; endpoints excluded. Throws
// InsufficientDataError when fewer than 3 peaks are found.
std::vector<Peak> envelope_peaks(const TimeSeries& series, double baseline);

// Ordinary least squares of log(amplitude) vs t over the envelope peaks
// inside the window; nonpositive amplitudes are dropped before the log.
// Requires at least 3 usable peaks (InsufficientDataError).
DampingFit fit_damping_rate(const TimeSeries& series, double baseline, Window window);

// Heuristic revival regions: intervals of full width pi*sqrt(alpha_sq)/g
// centered at t_k = k * 2 pi sqrt(alpha_sq) / g for k = 1, 2. Empty when
// alpha_sq <= 1 (no revivals worth windowing).
std::vector<Window> revival_windows(const SystemParams& params);

// Sample attaining max |value| (ties -> earliest); returns (t, signed value).
// Throws InsufficientDataError on an empty series.
std::pair<double, double> max_abs(const TimeSeries& series);

// max |value| restricted to samples inside the window (0 if none fall in it).
double windowed_max_abs(const TimeSeries& series, Window window);

} // namespace rabi::analysis
