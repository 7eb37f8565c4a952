#include "rabisim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rabisim/analysis.hpp"
#include "rabisim/csv.hpp"
#include "rabisim/quantum_ladder.hpp"
#include "rabisim/semiclassical.hpp"

namespace rabi::cli {

namespace {

using nlohmann::json;

void print_kv(const std::string& key, double value) {
    std::printf("%s=%.17g\n", key.c_str(), value);
}

void print_kv(const std::string& key, const std::string& value) {
    std::printf("%s=%s\n", key.c_str(), value.c_str());
}

std::string guess_name(const approx::GuessMode& mode) {
    switch (mode.kind) {
        case approx::GuessMode::Kind::QuantumRate: return "quantum";
        case approx::GuessMode::Kind::SemiclassicalRate: return "semiclassical";
        case approx::GuessMode::Kind::Explicit: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", mode.explicit_rate);
            return buf;
        }
    }
    return "quantum";
}

approx::GuessMode guess_from_name(const std::string& name) {
    if (name == "quantum") return approx::GuessMode::quantum();
    if (name == "semiclassical") return approx::GuessMode::semiclassical();
    try {
        std::size_t used = 0;
        const double rate = std::stod(name, &used);
        if (used == name.size()) return approx::GuessMode::explicit_rate_of(rate);
    } catch (const std::exception&) {
    }
    throw ConfigError("unknown guess mode '" + name + "' (quantum|semiclassical|<rate>)");
}

std::string form_name(approx::Form form) {
    return form == approx::Form::Corrected ? "corrected" : "as-printed";
}

approx::Form form_from_name(const std::string& name) {
    if (name == "corrected") return approx::Form::Corrected;
    if (name == "as-printed") return approx::Form::AsPrinted;
    throw ConfigError("unknown form '" + name + "' (corrected|as-printed)");
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["model"] = model_name(cfg.model);
    j["rabi"] = cfg.params.rabi;
    j["coupling"] = cfg.params.coupling;
    j["gamma"] = cfg.params.gamma;
    j["b"] = cfg.params.branching;
    j["alpha_sq"] = cfg.params.alpha_sq;
    j["n_max"] = cfg.params.n_max;
    j["t_end"] = cfg.t_end;
    j["dt"] = cfg.dt;
    if (cfg.guess.kind == approx::GuessMode::Kind::Explicit)
        j["guess"] = cfg.guess.explicit_rate;
    else
        j["guess"] = guess_name(cfg.guess);
    j["form"] = form_name(cfg.form);
    j["out"] = cfg.out;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "model") cfg.model = model_from_name(value.get<std::string>());
        else if (key == "rabi") cfg.params.rabi = value.get<double>();
        else if (key == "coupling") cfg.params.coupling = value.get<double>();
        else if (key == "gamma") cfg.params.gamma = value.get<double>();
        else if (key == "b") cfg.params.branching = value.get<double>();
        else if (key == "alpha_sq") cfg.params.alpha_sq = value.get<double>();
        else if (key == "n_max") cfg.params.n_max = value.get<int>();
        else if (key == "t_end") cfg.t_end = value.get<double>();
        else if (key == "dt") cfg.dt = value.get<double>();
        else if (key == "guess") {
            if (value.is_number()) cfg.guess = approx::GuessMode::explicit_rate_of(value.get<double>());
            else cfg.guess = guess_from_name(value.get<std::string>());
        } else if (key == "form") cfg.form = form_from_name(value.get<std::string>());
        else if (key == "out") cfg.out = value.get<std::string>();
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return cfg;
}

struct ProducedSeries {
    TimeSeries series;
    std::vector<std::string> trailing_comments;  // trace accounting etc.
};

ProducedSeries produce(const RunConfig& cfg) {
    ProducedSeries out;
    switch (cfg.model) {
        case Model::SemiclassicalAnalytic:
            out.series = semiclassical::sample_analytic(cfg.params, cfg.t_end, cfg.dt);
            break;
        case Model::SemiclassicalOde:
            out.series = semiclassical::integrate_bloch(cfg.params, cfg.t_end, cfg.dt);
            break;
        case Model::Quantum: {
            ladder::EvolveOptions opts;
            opts.t_end = cfg.t_end;
            opts.dt = cfg.dt;
            out.series.dt = cfg.dt;
            out.series.label = "quantum-ladder";
            double trace = 0.0, leak = 0.0;
            ladder::evolve_observed(cfg.params, opts, [&](double, const ladder::LadderState& s) {
                out.series.values.push_back(s.rho_ee());
                trace = s.trace();
                leak = s.external_leak;
            });
            char buf[160];
            std::snprintf(buf, sizeof(buf), "trace=%.17g external_leak=%.17g trace_plus_leak=%.17g",
                          trace, leak, trace + leak);
            out.trailing_comments.push_back(buf);
            break;
        }
        case Model::QuantumAnalyticB0:
            out.series = ladder::sample_quantum_b0(cfg.params, cfg.t_end, cfg.dt);
            break;
        case Model::Approx:
            out.series = approx::sample(cfg.params, cfg.guess, cfg.form, cfg.t_end, cfg.dt);
            break;
    }
    return out;
}

TimeSeries restrict_to_window(const TimeSeries& series, Window window) {
    TimeSeries out;
    out.dt = series.dt;
    out.label = series.label;
    bool first = true;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.time_at(i);
        if (!window.contains(t)) continue;
        if (first) {
            out.t0 = t;
            first = false;
        }
        out.values.push_back(series.values[i]);
    }
    return out;
}

json tolerances_json() {
    const ladder::EvolveOptions defaults;
    json j;
    j["truncation_tail"] = ladder::kTailTolerance;
    j["trace"] = defaults.trace_tol;
    j["positivity"] = defaults.positivity_tol;
    j["coherence"] = defaults.coherence_tol;
    return j;
}

} // namespace

Model model_from_name(const std::string& name) {
    if (name == "semiclassical-analytic") return Model::SemiclassicalAnalytic;
    if (name == "semiclassical-ode") return Model::SemiclassicalOde;
    if (name == "quantum") return Model::Quantum;
    if (name == "quantum-analytic-b0") return Model::QuantumAnalyticB0;
    if (name == "approx") return Model::Approx;
    throw ConfigError("unknown model '" + name + "'");
}

std::string model_name(Model model) {
    switch (model) {
        case Model::SemiclassicalAnalytic: return "semiclassical-analytic";
        case Model::SemiclassicalOde: return "semiclassical-ode";
        case Model::Quantum: return "quantum";
        case Model::QuantumAnalyticB0: return "quantum-analytic-b0";
        case Model::Approx: return "approx";
    }
    return "quantum";
}

void RunConfig::validate() const {
    params.validate();
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be nonnegative");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (out.empty()) throw ConfigError("output path must not be empty");
    switch (model) {
        case Model::SemiclassicalAnalytic:
            if (!params.strong_coupling())
                throw ConfigError("semiclassical-analytic requires 16 rabi^2 > gamma^2");
            break;
        case Model::QuantumAnalyticB0:
            if (params.branching != 0.0)
                throw ConfigError("quantum-analytic-b0 is only valid at b = 0");
            break;
        case Model::Approx:
            if (guess.kind == approx::GuessMode::Kind::Explicit && guess.explicit_rate < 0.0)
                throw ConfigError("explicit guess rate must be nonnegative");
            break;
        default:
            break;
    }
    if (fit && !(fit_t_max > fit_t_min)) throw ConfigError("fit window must be nonempty");
}

RunConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("bad JSON in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");
    return config_from_json(j);
}

int run(const RunConfig& cfg) {
    cfg.validate();
    const ProducedSeries produced = produce(cfg);
    io::write_csv(cfg.out, produced.series, false, produced.trailing_comments);

    print_kv("model", model_name(cfg.model));
    print_kv("samples", static_cast<double>(produced.series.size()));
    print_kv("t_end", cfg.t_end);
    print_kv("dt", cfg.dt);
    const auto [t_max, v_max] = analysis::max_abs(produced.series);
    print_kv("max_abs", std::abs(v_max));
    print_kv("max_abs_t", t_max);
    print_kv("final", produced.series.values.back());
    for (const std::string& comment : produced.trailing_comments) {
        // surface the trace ledger on stdout too
        std::printf("%s\n", comment.c_str());
    }
    if (cfg.fit) {
        const analysis::DampingFit fit = analysis::fit_damping_rate(
            produced.series, cfg.fit_baseline, {cfg.fit_t_min, cfg.fit_t_max});
        print_kv("fit_rate", fit.rate);
        print_kv("fit_intercept", fit.intercept);
        print_kv("fit_r_squared", fit.r_squared);
        print_kv("fit_n_peaks", static_cast<double>(fit.n_peaks));
    }
    print_kv("out", cfg.out);
    return 0;
}

int compare(const std::string& path_a, const std::string& path_b, const std::string& out_path,
            bool revival_windows, const SystemParams& params) {
    const TimeSeries a = io::read_csv(path_a);
    const TimeSeries b = io::read_csv(path_b);
    const TimeSeries delta = analysis::difference_series(a, b);
    if (!out_path.empty())
        io::write_csv(out_path, delta, true);

    const auto [t_max, v_max] = analysis::max_abs(delta);
    print_kv("max_abs_delta", std::abs(v_max));
    print_kv("max_abs_delta_t", t_max);
    if (revival_windows) {
        const auto windows = analysis::revival_windows(params);
        for (std::size_t k = 0; k < windows.size(); ++k) {
            char key[48];
            std::snprintf(key, sizeof(key), "revival%zu_max_abs_delta", k + 1);
            print_kv(key, analysis::windowed_max_abs(delta, windows[k]));
        }
    }
    if (!out_path.empty()) print_kv("out", out_path);
    return 0;
}

int reproduce(const std::string& figure, const std::string& out_dir) {
    if (figure != "fig4a" && figure != "fig4b" && figure != "fig5")
        throw ConfigError("unknown figure '" + figure + "' (fig4a|fig4b|fig5)");
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const std::string& name) { return out_dir + "/" + name; };

    RunConfig exact_cfg;  // defaults are the headline parameters
    exact_cfg.model = Model::Quantum;
    exact_cfg.out = path("exact.csv");
    RunConfig quant_cfg = exact_cfg;
    quant_cfg.model = Model::Approx;
    quant_cfg.guess = approx::GuessMode::quantum();
    quant_cfg.out = path("approx_quantum_rate.csv");
    RunConfig semi_cfg = quant_cfg;
    semi_cfg.guess = approx::GuessMode::semiclassical();
    semi_cfg.out = path("approx_semiclassical_rate.csv");

    const ProducedSeries exact = produce(exact_cfg);
    const ProducedSeries quant = produce(quant_cfg);
    const ProducedSeries semi = produce(semi_cfg);
    const auto windows = analysis::revival_windows(exact_cfg.params);

    json manifest;
    manifest["figure"] = figure;
    manifest["grid"] = {{"t_end", exact_cfg.t_end}, {"dt", exact_cfg.dt}, {"sample_stride", 1}};
    manifest["tolerances"] = tolerances_json();
    manifest["curves"] = json::array({config_to_json(exact_cfg), config_to_json(quant_cfg),
                                      config_to_json(semi_cfg)});
    json outputs = json::array();

    if (figure == "fig4a") {
        io::write_csv(exact_cfg.out, exact.series, true, exact.trailing_comments);
        io::write_csv(quant_cfg.out, quant.series, true);
        io::write_csv(semi_cfg.out, semi.series, true);
        outputs = {"exact.csv", "approx_quantum_rate.csv", "approx_semiclassical_rate.csv"};
        TimeSeries dq = analysis::difference_series(exact.series, quant.series);
        TimeSeries ds = analysis::difference_series(exact.series, semi.series);
        print_kv("max_abs_exact_vs_quant", std::abs(analysis::max_abs(dq).second));
        print_kv("max_abs_exact_vs_semi", std::abs(analysis::max_abs(ds).second));
    } else if (figure == "fig4b") {
        const double baseline = 0.5;
        json window_json = json::array();
        for (std::size_t k = 0; k < windows.size(); ++k) {
            const std::string suffix = "_revival" + std::to_string(k + 1) + ".csv";
            const TimeSeries ex = restrict_to_window(exact.series, windows[k]);
            const TimeSeries qu = restrict_to_window(quant.series, windows[k]);
            const TimeSeries se = restrict_to_window(semi.series, windows[k]);
            io::write_csv(path("exact" + suffix), ex, true);
            io::write_csv(path("approx_quantum_rate" + suffix), qu, true);
            io::write_csv(path("approx_semiclassical_rate" + suffix), se, true);
            outputs.push_back("exact" + suffix);
            outputs.push_back("approx_quantum_rate" + suffix);
            outputs.push_back("approx_semiclassical_rate" + suffix);
            window_json.push_back({windows[k].t_min, windows[k].t_max});

            // revival amplitude = windowed max excursion about the 1/2 plateau
            auto amplitude = [baseline](const TimeSeries& s) {
                double best = 0.0;
                for (double v : s.values) best = std::max(best, std::abs(v - baseline));
                return best;
            };
            const std::string tag = "revival" + std::to_string(k + 1);
            print_kv(tag + "_amplitude_exact", amplitude(ex));
            print_kv(tag + "_amplitude_quant", amplitude(qu));
            print_kv(tag + "_amplitude_semi", amplitude(se));
        }
        manifest["windows"] = window_json;
        manifest["baseline"] = baseline;
    } else {  // fig5
        TimeSeries dq = analysis::difference_series(exact.series, quant.series);
        dq.label = "delta_quant";
        TimeSeries ds = analysis::difference_series(exact.series, semi.series);
        ds.label = "delta_semi";
        io::write_csv(path("delta_quant.csv"), dq, true);
        io::write_csv(path("delta_semi.csv"), ds, true);
        outputs = {"delta_quant.csv", "delta_semi.csv"};
        print_kv("max_abs_delta_quant", std::abs(analysis::max_abs(dq).second));
        print_kv("max_abs_delta_semi", std::abs(analysis::max_abs(ds).second));
        json window_json = json::array();
        for (const auto& w : windows) window_json.push_back({w.t_min, w.t_max});
        manifest["windows"] = window_json;
    }

    manifest["outputs"] = outputs;
    std::ofstream mf(path("manifest.json"));
    if (!mf) throw SimError("cannot write manifest in " + out_dir);
    mf << manifest.dump(2) << "\n";
    print_kv("out_dir", out_dir);
    return 0;
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"rabisim — damped Rabi oscillations of a decaying two-level atom, "
                 "semiclassical vs fully quantum"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "simulate one model and write a CSV trajectory");
    std::string config_path, model_str, guess_str, form_str;
    RunConfig cfg;
    // pre-scan for --config so flags can override file values
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) cfg = config_from_json_file(config_path);

    run_cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    run_cmd->add_option("--model", model_str, "semiclassical-analytic|semiclassical-ode|quantum|quantum-analytic-b0|approx");
    run_cmd->add_option("--rabi", cfg.params.rabi, "|Omega| in units of gamma");
    run_cmd->add_option("--coupling", cfg.params.coupling, "|g| in units of gamma");
    run_cmd->add_option("--gamma", cfg.params.gamma, "total decay rate (time unit)");
    run_cmd->add_option("--b", cfg.params.branching, "branching ratio into the ground state");
    run_cmd->add_option("--alpha-sq", cfg.params.alpha_sq, "mean photon number |alpha|^2");
    run_cmd->add_option("--n-max", cfg.params.n_max, "Fock truncation");
    run_cmd->add_option("--t-end", cfg.t_end, "time horizon (units of 1/gamma)");
    run_cmd->add_option("--dt", cfg.dt, "integration / sampling step");
    run_cmd->add_option("--guess", guess_str, "quantum|semiclassical|<rate> (approx model)");
    run_cmd->add_option("--form", form_str, "corrected|as-printed (approx model)");
    run_cmd->add_option("--out", cfg.out, "output CSV path");
    run_cmd->add_flag("--fit", cfg.fit, "fit the oscillation damping rate");
    run_cmd->add_option("--fit-baseline", cfg.fit_baseline, "envelope baseline for the fit");
    run_cmd->add_option("--fit-tmin", cfg.fit_t_min, "fit window start");
    run_cmd->add_option("--fit-tmax", cfg.fit_t_max, "fit window end");

    // ---- compare ----
    auto* cmp_cmd = app.add_subcommand("compare", "pointwise difference of two trajectories");
    std::string cmp_a, cmp_b, cmp_out, cmp_windows;
    SystemParams cmp_params;
    cmp_cmd->add_option("--a", cmp_a, "first CSV (minuend)")->required();
    cmp_cmd->add_option("--b", cmp_b, "second CSV (subtrahend)")->required();
    cmp_cmd->add_option("--out", cmp_out, "difference CSV path");
    cmp_cmd->add_option("--windows", cmp_windows, "'revival' for per-revival-window maxima");
    cmp_cmd->add_option("--coupling", cmp_params.coupling, "|g| for the revival windows");
    cmp_cmd->add_option("--alpha-sq", cmp_params.alpha_sq, "|alpha|^2 for the revival windows");

    // ---- reproduce ----
    auto* rep_cmd = app.add_subcommand("reproduce", "regenerate headline figure data");
    std::string figure, out_dir = "reproduce_out";
    rep_cmd->add_option("figure", figure, "fig4a|fig4b|fig5")->required();
    rep_cmd->add_option("--out-dir", out_dir, "output directory");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) {
            if (!model_str.empty()) cfg.model = model_from_name(model_str);
            if (!guess_str.empty()) cfg.guess = guess_from_name(guess_str);
            if (!form_str.empty()) cfg.form = form_from_name(form_str);
            return run(cfg);
        }
        if (cmp_cmd->parsed()) {
            if (!cmp_windows.empty() && cmp_windows != "revival")
                throw ConfigError("--windows only supports 'revival'");
            return compare(cmp_a, cmp_b, cmp_out, cmp_windows == "revival", cmp_params);
        }
        if (rep_cmd->parsed())
            return reproduce(figure, out_dir);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rabi::cli
