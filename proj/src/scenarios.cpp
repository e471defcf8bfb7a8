#include "entsim/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "entsim/analytic.hpp"
#include "entsim/density.hpp"

namespace entsim {

std::string_view engine_name(Engine e) { return e == Engine::analytic ? "analytic" : "oracle"; }

Engine engine_from_name(std::string_view name) {
    if (name == "analytic") return Engine::analytic;
    if (name == "oracle") return Engine::oracle;
    throw std::invalid_argument("engine must be \"analytic\" or \"oracle\"");
}

std::string_view reduce_name(Reduce r) {
    switch (r) {
        case Reduce::min: return "min";
        case Reduce::final: return "final";
        case Reduce::time_average: return "time-average";
    }
    return "min";
}

Reduce reduce_from_name(std::string_view name) {
    if (name == "min") return Reduce::min;
    if (name == "final") return Reduce::final;
    if (name == "time-average") return Reduce::time_average;
    throw std::invalid_argument("reduce must be \"min\", \"final\" or \"time-average\"");
}

std::vector<double> make_grid(const TimeWindow& w) {
    if (!(w.end > w.start)) throw std::invalid_argument("time window must satisfy end > start");
    if (w.samples < 2) throw std::invalid_argument("time window needs at least 2 samples");
    std::vector<double> t(w.samples);
    const double dt = (w.end - w.start) / static_cast<double>(w.samples - 1);
    for (std::size_t i = 0; i < w.samples; ++i) t[i] = w.start + dt * static_cast<double>(i);
    t.back() = w.end;
    return t;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

namespace {

ModelParams figure_base(double lambda, double omega_drive, double beta, double delta, double r1) {
    ModelParams p;  // omega0 = 1.5e9, gamma = 1, eta = pi/2, phi = 0 defaults
    p.lambda = lambda;
    p.omega_drive = omega_drive;
    p.beta = beta;
    p.delta = delta;
    p.r1 = r1;
    return p;
}

const std::vector<double> kBetaList = {0.0, 1e-9, 3e-9};
const std::vector<double> kR1List = {1.0 / std::numbers::sqrt2, 0.5, 0.0};

constexpr TimeWindow kShortWindow{0.0, 50.0, 2001};
constexpr TimeWindow kLongWindow{0.0, 100.0, 4001};

}  // namespace

std::vector<Preset> builtin_presets(std::span<const double> fig5_deltas) {
    if (fig5_deltas.empty()) throw std::invalid_argument("fig5 detuning list must be non-empty");
    std::set<double> uniq(fig5_deltas.begin(), fig5_deltas.end());
    if (uniq.size() != fig5_deltas.size())
        throw std::invalid_argument("fig5 detuning list must be distinct");
    const std::vector<double> deltas(fig5_deltas.begin(), fig5_deltas.end());

    std::vector<Preset> out;
    out.push_back({"fig2a", figure_base(4.0, 0.0, 0.0, 0.0, 0.5), "r1", kR1List, kShortWindow});
    out.push_back({"fig2b", figure_base(0.04, 0.0, 0.0, 0.0, 0.5), "r1", kR1List, kLongWindow});
    out.push_back({"fig3a", figure_base(4.0, 0.0, 0.0, 0.0, 0.5), "beta", kBetaList, kShortWindow});
    out.push_back({"fig3b", figure_base(4.0, 1.6, 0.0, 0.0, 0.5), "beta", kBetaList, kShortWindow});
    out.push_back({"fig4a", figure_base(0.1, 0.0, 0.0, 0.0, 0.5), "beta", kBetaList, kLongWindow});
    out.push_back({"fig4b", figure_base(0.1, 4.0, 0.0, 0.0, 0.5), "beta", kBetaList, kLongWindow});
    out.push_back({"fig5a", figure_base(0.1, 0.5, 0.0, 0.0, 0.5), "delta", deltas, kLongWindow});
    out.push_back({"fig5b", figure_base(0.1, 1.6, 0.0, 0.0, 0.5), "delta", deltas, kLongWindow});
    out.push_back({"fig5c", figure_base(0.1, 0.5, 1e-9, 0.0, 0.5), "delta", deltas, kLongWindow});
    out.push_back({"fig5d", figure_base(0.1, 4.0, 1e-9, 0.0, 0.5), "delta", deltas, kLongWindow});

    for (const auto& p : out)
        for (double v : p.values) {
            ModelParams m = p.base;
            set_param(m, p.varied, v);
            validate(m);
        }
    return out;
}

Preset find_preset(std::string_view name, std::span<const double> fig5_deltas) {
    auto all = builtin_presets(fig5_deltas);
    for (auto& p : all)
        if (p.name == name) return p;
    std::string names;
    for (const auto& p : all) names += (names.empty() ? "" : ", ") + p.name;
    throw std::invalid_argument("unknown preset \"" + std::string(name) + "\" (known: " + names + ")");
}

namespace {

Curve evaluate_curve(const ModelParams& m, std::span<const double> grid, Engine engine,
                     const oracle::OracleConfig& cfg) {
    Curve c;
    try {
        Trajectory tr = (engine == Engine::analytic)
                            ? amplitudes(grid, m)
                            : oracle::integrate_volterra(m, grid, cfg);
        c.concurrence.reserve(tr.c1.size());
        for (std::size_t i = 0; i < tr.c1.size(); ++i)
            c.concurrence.push_back(concurrence_x(tr.c1[i], tr.c2[i]));
        c.traj = std::move(tr);
    } catch (const std::exception& e) {
        c.error = e.what();
    }
    return c;
}

}  // namespace

CurveSet run_preset(const Preset& p, Engine engine, const oracle::OracleConfig& cfg) {
    CurveSet cs;
    cs.name = p.name;
    cs.engine = engine;
    cs.base = p.base;
    cs.varied = p.varied;
    cs.window = p.window;
    cs.solver = cfg;
    cs.times = make_grid(p.window);
    for (double v : p.values) {
        ModelParams m = p.base;
        set_param(m, p.varied, v);
        Curve c = evaluate_curve(m, cs.times, engine, cfg);
        c.label = p.varied + "=" + format_value(v);
        c.value = v;
        cs.curves.push_back(std::move(c));
    }
    return cs;
}

CurveSet run_single(const ModelParams& p, const TimeWindow& w, Engine engine,
                    const oracle::OracleConfig& cfg) {
    validate(p);
    CurveSet cs;
    cs.name = "solve";
    cs.engine = engine;
    cs.base = p;
    cs.window = w;
    cs.solver = cfg;
    cs.times = make_grid(w);
    Curve c = evaluate_curve(p, cs.times, engine, cfg);
    c.label = "run";
    cs.curves.push_back(std::move(c));
    return cs;
}

namespace {

double reduce_curve(Reduce r, std::span<const double> concurrence) {
    switch (r) {
        case Reduce::min: {
            double m = concurrence.front();
            for (double v : concurrence) m = std::min(m, v);
            return m;
        }
        case Reduce::final:
            return concurrence.back();
        case Reduce::time_average: {
            double s = 0.0;
            for (double v : concurrence) s += v;
            return s / static_cast<double>(concurrence.size());
        }
    }
    return 0.0;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, const ModelParams& base, const TimeWindow& w,
                     Engine engine, const oracle::OracleConfig& cfg) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("sweep needs 1 or 2 axes");
    for (const auto& ax : spec.axes) {
        if (!is_param_name(ax.name))
            throw std::invalid_argument("unknown sweep axis \"" + ax.name + "\"");
        if (ax.values.empty())
            throw std::invalid_argument("sweep axis \"" + ax.name + "\" has no values");
    }
    const auto grid = make_grid(w);

    SweepTable table;
    table.reduce = spec.reduce;
    for (const auto& ax : spec.axes) table.axis_names.push_back(ax.name);

    const std::vector<double> inner =
        spec.axes.size() == 2 ? spec.axes[1].values : std::vector<double>{0.0};
    for (double a : spec.axes[0].values) {
        for (double b : inner) {
            SweepRow row;
            row.coords.push_back(a);
            if (spec.axes.size() == 2) row.coords.push_back(b);
            try {
                ModelParams m = base;
                set_param(m, spec.axes[0].name, a);
                if (spec.axes.size() == 2) set_param(m, spec.axes[1].name, b);
                Curve c = evaluate_curve(m, grid, engine, cfg);
                if (!c.error.empty()) throw std::runtime_error(c.error);
                row.value = reduce_curve(spec.reduce, c.concurrence);
                row.ok = true;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace entsim
