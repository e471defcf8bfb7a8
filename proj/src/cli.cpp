#include "entsim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "entsim/io.hpp"

namespace entsim {

namespace {

namespace fs = std::filesystem;

constexpr double kValidateThreshold = 1e-6;

struct ModelFlags {
    CLI::Option* opts[9] = {};
    double vals[9] = {};
    static constexpr const char* names[9] = {"omega0", "gamma", "lambda",
                                             "delta",  "omega_drive", "beta",
                                             "r1",     "eta",   "phi"};

    void add(CLI::App* cmd) {
        static constexpr const char* descs[9] = {
            "bare qubit transition frequency (gamma units)",
            "reservoir coupling rate (the unit, default 1)",
            "Lorentzian spectral width (gamma units)",
            "detuning omega0 - omega_L (gamma units)",
            "classical driving strength (gamma units)",
            "velocity ratio v/c",
            "relative coupling of qubit 1",
            "initial-state mixing angle (radians)",
            "initial-state relative phase (radians)"};
        for (int i = 0; i < 9; ++i) {
            std::string flag = std::string("--") + names[i];
            if (flag.find('_') != std::string::npos) {
                std::string dashed = flag;
                std::replace(dashed.begin(), dashed.end(), '_', '-');
                flag = dashed + "," + flag;
            }
            opts[i] = cmd->add_option(flag, vals[i], descs[i]);
        }
    }

    void apply(ModelParams& p) const {
        for (int i = 0; i < 9; ++i)
            if (opts[i] && opts[i]->count() > 0) set_param(p, names[i], vals[i]);
    }
};

struct WindowFlags {
    CLI::Option *o_start = nullptr, *o_end = nullptr, *o_samples = nullptr;
    double t_start = 0.0, t_end = 50.0;
    std::size_t samples = 2001;

    void add(CLI::App* cmd) {
        o_start = cmd->add_option("--t-start", t_start, "window start (gamma*t)");
        o_end = cmd->add_option("--t-end", t_end, "window end (gamma*t)");
        o_samples = cmd->add_option("--samples", samples, "number of grid samples");
    }

    bool any() const { return o_start->count() || o_end->count() || o_samples->count(); }

    void apply(TimeWindow& w) const {
        if (o_start->count()) w.start = t_start;
        if (o_end->count()) w.end = t_end;
        if (o_samples->count()) w.samples = samples;
    }
};

struct OutputFlags {
    CLI::Option *o_dir = nullptr, *o_formats = nullptr;
    std::string dir = "out";
    std::vector<std::string> formats;

    void add(CLI::App* cmd) {
        o_dir = cmd->add_option("--out-dir", dir, "output directory root");
        o_formats =
            cmd->add_option("--format", formats, "output formats (csv,json,svg)")->delimiter(',');
    }

    void apply(io::OutputOptions& o) const {
        if (o_dir->count()) o.dir = dir;
        if (o_formats->count()) {
            o.formats.clear();
            for (const auto& f : formats) {
                if (f != "csv" && f != "json" && f != "svg")
                    throw std::invalid_argument("unknown output format \"" + f +
                                                "\" (use csv, json, svg)");
                if (std::find(o.formats.begin(), o.formats.end(), f) == o.formats.end())
                    o.formats.push_back(f);
            }
        }
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file \"" + path + "\"");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Writes the requested formats for one curve set into dir/<leaf>/, where leaf
// is the set name or a content hash for unnamed runs.
int write_outputs(const CurveSet& cs, const io::OutputOptions& opts) {
    const std::string json = io::emit_table_json(cs);
    const std::string leaf = (cs.name == "solve") ? io::content_hash(json) : cs.name;
    const fs::path dir = fs::path(opts.dir) / leaf;
    fs::create_directories(dir);
    const std::string stem = cs.name;
    for (const auto& f : opts.formats) {
        fs::path p = dir / (stem + "." + f);
        if (f == "csv") write_file(p, io::emit_table_csv(cs));
        else if (f == "json") write_file(p, json);
        else write_file(p, io::emit_plot_svg(cs));
        std::cout << "wrote " << p.string() << "\n";
    }
    int failed = 0;
    for (const auto& c : cs.curves)
        if (!c.error.empty()) {
            std::cerr << "warning: curve " << c.label << " failed: " << c.error << "\n";
            ++failed;
        }
    return (failed == static_cast<int>(cs.curves.size())) ? 1 : 0;
}

std::vector<double> deltas_or_default(const std::vector<double>& flag) {
    if (flag.empty())
        return {std::begin(kDefaultFig5Deltas), std::end(kDefaultFig5Deltas)};
    return flag;
}

SweepAxis parse_axis_flag(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("--axis expects name=v1,v2,... got \"" + text + "\"");
    SweepAxis ax;
    ax.name = text.substr(0, eq);
    if (!is_param_name(ax.name))
        throw std::invalid_argument("unknown sweep axis \"" + ax.name + "\"");
    std::string rest = text.substr(eq + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty()) throw std::invalid_argument("--axis has an empty value in \"" + text + "\"");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("--axis value \"" + tok + "\" is not a number");
        }
        if (used != tok.size())
            throw std::invalid_argument("--axis value \"" + tok + "\" is not a number");
        ax.values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ax;
}

int run_validate(const std::vector<double>& deltas, oracle::OracleConfig cfg) {
    const auto presets = builtin_presets(deltas);
    bool all_ok = true;
    std::cout << "analytic vs integro-differential oracle, threshold " << kValidateThreshold
              << "\n";
    for (const auto& p : presets) {
        const CurveSet a = run_preset(p, Engine::analytic, cfg);
        const CurveSet o = run_preset(p, Engine::oracle, cfg);
        double gap = 0.0;
        std::string err;
        for (std::size_t k = 0; k < a.curves.size(); ++k) {
            if (!a.curves[k].error.empty()) err = a.curves[k].error;
            if (!o.curves[k].error.empty()) err = o.curves[k].error;
            if (!err.empty()) break;
            for (std::size_t i = 0; i < a.times.size(); ++i)
                gap = std::max(gap,
                               std::abs(a.curves[k].concurrence[i] - o.curves[k].concurrence[i]));
        }
        const bool ok = err.empty() && gap < kValidateThreshold;
        all_ok = all_ok && ok;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", gap);
        std::cout << p.name << "  max|dC| = " << (err.empty() ? buf : err)
                  << (ok ? "  PASS" : "  FAIL") << "\n";
    }
    std::cout << (all_ok ? "validation passed" : "validation FAILED") << "\n";
    return all_ok ? 0 : 1;
}

void print_presets(const std::vector<double>& deltas) {
    for (const auto& p : builtin_presets(deltas)) {
        std::cout << p.name << ": lambda=" << format_value(p.base.lambda)
                  << " omega_drive=" << format_value(p.base.omega_drive)
                  << " beta=" << format_value(p.base.beta)
                  << " delta=" << format_value(p.base.delta) << " r1=" << format_value(p.base.r1)
                  << " eta=" << format_value(p.base.eta) << " phi=" << format_value(p.base.phi)
                  << " omega0=" << format_value(p.base.omega0) << " | " << p.varied << " in {";
        for (std::size_t i = 0; i < p.values.size(); ++i)
            std::cout << (i ? ", " : "") << format_value(p.values[i]);
        std::cout << "} | t in [" << format_value(p.window.start) << ", "
                  << format_value(p.window.end) << "] x " << p.window.samples << "\n";
    }
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"entanglement dynamics of two driven qubits moving in a common lossy reservoir"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run one parameter set");
    ModelFlags solve_model;
    WindowFlags solve_window;
    OutputFlags solve_output;
    std::string solve_config, solve_engine;
    solve_model.add(solve);
    solve_window.add(solve);
    solve_output.add(solve);
    solve->add_option("--config", solve_config, "JSON config file (mode: single)");
    auto* solve_engine_opt =
        solve->add_option("--engine", solve_engine, "engine: analytic or oracle");

    // figure
    auto* figure = app.add_subcommand("figure", "run a built-in preset (fig2a..fig5d)");
    std::string figure_name, figure_config, figure_engine;
    std::vector<double> figure_deltas;
    WindowFlags figure_window;
    OutputFlags figure_output;
    figure->add_option("name", figure_name, "preset name");
    figure->add_option("--config", figure_config, "JSON config file (mode: preset)");
    auto* figure_engine_opt =
        figure->add_option("--engine", figure_engine, "engine: analytic or oracle");
    figure->add_option("--deltas", figure_deltas, "fig5 detuning list (gamma units)")
        ->delimiter(',');
    figure_window.add(figure);
    figure_output.add(figure);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "reduce concurrence over a parameter grid");
    ModelFlags sweep_model;
    WindowFlags sweep_window;
    OutputFlags sweep_output;
    std::string sweep_config, sweep_engine, sweep_reduce;
    std::vector<std::string> sweep_axes;
    sweep_model.add(sweep);
    sweep_window.add(sweep);
    sweep_output.add(sweep);
    sweep->add_option("--config", sweep_config, "JSON config file (mode: sweep)");
    auto* sweep_engine_opt =
        sweep->add_option("--engine", sweep_engine, "engine: analytic or oracle");
    auto* sweep_axis_opt =
        sweep->add_option("--axis", sweep_axes, "axis spec name=v1,v2,... (up to 2)");
    auto* sweep_reduce_opt =
        sweep->add_option("--reduce", sweep_reduce, "statistic: min, final or time-average");

    // validate
    auto* validate_cmd =
        app.add_subcommand("validate", "certify the closed form against the oracle");
    std::vector<double> validate_deltas;
    oracle::OracleConfig validate_cfg;
    validate_cfg.rel_tol = 1e-10;
    validate_cfg.abs_tol = 1e-13;
    validate_cmd->add_option("--deltas", validate_deltas, "fig5 detuning list")->delimiter(',');
    validate_cmd->add_option("--rel-tol", validate_cfg.rel_tol, "oracle relative tolerance");
    validate_cmd->add_option("--abs-tol", validate_cfg.abs_tol, "oracle absolute tolerance");
    validate_cmd->add_option("--max-step", validate_cfg.max_step, "oracle max step");

    // presets
    auto* presets_cmd = app.add_subcommand("presets", "list built-in presets");
    std::vector<double> presets_deltas;
    presets_cmd->add_option("--deltas", presets_deltas, "fig5 detuning list")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) {
            io::RunConfig rc;
            if (!solve_config.empty()) {
                rc = io::parse_config(read_file(solve_config));
                if (rc.mode != io::RunMode::single)
                    throw std::invalid_argument(
                        "config selects a preset or sweep; use the matching subcommand");
            }
            solve_model.apply(rc.model);
            solve_window.apply(rc.window);
            solve_output.apply(rc.output);
            if (solve_engine_opt->count()) rc.engine = engine_from_name(solve_engine);
            validate(rc.model);
            const CurveSet cs = run_single(rc.model, rc.window, rc.engine);
            return write_outputs(cs, rc.output);
        }

        if (figure->parsed()) {
            io::RunConfig rc;
            if (!figure_config.empty()) {
                rc = io::parse_config(read_file(figure_config));
                if (rc.mode != io::RunMode::preset)
                    throw std::invalid_argument("config does not select a preset");
                if (!figure_name.empty() && figure_name != rc.preset)
                    throw std::invalid_argument("preset name on the command line (" + figure_name +
                                                ") conflicts with the config (" + rc.preset + ")");
            } else {
                if (figure_name.empty())
                    throw std::invalid_argument("figure needs a preset name or --config");
                rc.mode = io::RunMode::preset;
                rc.preset = figure_name;
            }
            if (figure_engine_opt->count()) rc.engine = engine_from_name(figure_engine);
            figure_output.apply(rc.output);
            Preset p = find_preset(rc.preset, deltas_or_default(figure_deltas));
            if (rc.window_set) p.window = rc.window;
            figure_window.apply(p.window);
            const CurveSet cs = run_preset(p, rc.engine);
            return write_outputs(cs, rc.output);
        }

        if (sweep->parsed()) {
            io::RunConfig rc;
            if (!sweep_config.empty()) {
                if (sweep_axis_opt->count() || sweep_reduce_opt->count())
                    throw std::invalid_argument("--config cannot be combined with --axis/--reduce");
                rc = io::parse_config(read_file(sweep_config));
                if (rc.mode != io::RunMode::sweep)
                    throw std::invalid_argument("config does not define a sweep");
            } else {
                if (!sweep_axis_opt->count())
                    throw std::invalid_argument("sweep needs --axis or --config");
                rc.mode = io::RunMode::sweep;
                for (const auto& a : sweep_axes) rc.sweep.axes.push_back(parse_axis_flag(a));
                if (rc.sweep.axes.size() > 2)
                    throw std::invalid_argument("sweep supports at most 2 axes");
                if (sweep_reduce_opt->count()) rc.sweep.reduce = reduce_from_name(sweep_reduce);
            }
            sweep_model.apply(rc.model);
            sweep_window.apply(rc.window);
            sweep_output.apply(rc.output);
            if (sweep_engine_opt->count()) rc.engine = engine_from_name(sweep_engine);
            validate(rc.model);

            const SweepTable table = run_sweep(rc.sweep, rc.model, rc.window, rc.engine);
            const std::string json =
                io::emit_sweep_json(table, rc.model, rc.window, rc.engine, {});
            const fs::path dir = fs::path(rc.output.dir) / io::content_hash(json);
            fs::create_directories(dir);
            for (const auto& f : rc.output.formats) {
                if (f == "svg") continue;  // no plot for reduced tables
                const fs::path p = dir / ("sweep." + f);
                write_file(p, f == "csv" ? io::emit_sweep_csv(table) : json);
                std::cout << "wrote " << p.string() << "\n";
            }
            int bad = 0;
            for (const auto& row : table.rows)
                if (!row.ok) {
                    std::cerr << "warning: sweep point failed: " << row.error << "\n";
                    ++bad;
                }
            return (bad == static_cast<int>(table.rows.size())) ? 1 : 0;
        }

        if (validate_cmd->parsed())
            return run_validate(deltas_or_default(validate_deltas), validate_cfg);

        if (presets_cmd->parsed()) {
            print_presets(deltas_or_default(presets_deltas));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace entsim
