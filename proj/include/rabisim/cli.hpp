// cli.hpp — command implementations behind the rabisim executable

#pragma once

#include <optional>
#include <string>

#include "rabisim/approx.hpp"
#include "rabisim/system_params.hpp"

namespace rabi::cli {

enum class Model {
    SemiclassicalAnalytic,
    SemiclassicalOde,
    Quantum,
    QuantumAnalyticB0,
    Approx,
};

Model model_from_name(const std::string& name);  // throws ConfigError
std::string model_name(Model model);

struct RunConfig {
    Model model{Model::Quantum};
    SystemParams params{};
    approx::GuessMode guess{approx::GuessMode::quantum()};
    approx::Form form{approx::Form::Corrected};
    double t_end{8.0};
    double dt{5e-4};
    std::string out{"trajectory.csv"};
    // optional damping-rate fit of the produced series
    bool fit{false};
    double fit_baseline{0.0};
    double fit_t_min{0.0};
    double fit_t_max{6.0};

    void validate() const;  // throws ConfigError
};

// Load a RunConfig from a JSON file mirroring the flag names
// (model, rabi, coupling, gamma, b, alpha_sq, n_max, t_end, dt, guess,
// form, out). Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json_file(const std::string& path);

// Execute one model, write its CSV, print key=value summary lines.
int run(const RunConfig& config);

// Difference of two stored trajectories: writes delta CSV (when out_path
// nonempty), prints max_abs_delta and, with revival windows requested,
// per-window maxima. params supplies g and alpha_sq for the windows.
int compare(const std::string& path_a, const std::string& path_b,
            const std::string& out_path, bool revival_windows,
            const SystemParams& params);

// Regenerate the data behind the headline figures at the default
// parameters (|g| = 10 Gamma, alpha_sq = 25, b = 1): "fig4a" emits the
// exact, quantum-rate and semiclassical-rate curves over the full span,
// "fig4b" restricts them to the two revival windows, "fig5" emits the two
// difference curves. A manifest.json recording every numeric setting is
// written alongside the CSVs.
int reproduce(const std::string& figure, const std::string& out_dir);

// Full argument parsing + dispatch; returns the process exit status.
int dispatch(int argc, const char* const* argv);

} // namespace rabi::cli
