// scenarios.hpp: the built-in figure regimes as named presets, preset runs
// producing concurrence curves, and reduced parameter sweeps.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entsim/model.hpp"
#include "entsim/oracle.hpp"

namespace entsim {

enum class Engine { analytic, oracle };

std::string_view engine_name(Engine e);
Engine engine_from_name(std::string_view name);  // throws on unknown names

struct TimeWindow {
    double start = 0.0;
    double end = 50.0;
    std::size_t samples = 2001;
};

// Uniform inclusive grid; requires end > start and samples >= 2.
std::vector<double> make_grid(const TimeWindow& w);

struct Preset {
    std::string name;
    ModelParams base;
    std::string varied;           // parameter name swept across curves
    std::vector<double> values;   // one curve per value
    TimeWindow window;
};

inline constexpr double kDefaultFig5Deltas[] = {0.0, 1.0, 2.0};

// The ten presets fig2a..fig5d. The fig5 detuning list is not part of the
// regime definition and stays configurable; outputs carry the values used.
std::vector<Preset> builtin_presets(std::span<const double> fig5_deltas = kDefaultFig5Deltas);

// Throws std::invalid_argument listing valid names on a miss.
Preset find_preset(std::string_view name, std::span<const double> fig5_deltas = kDefaultFig5Deltas);

struct Curve {
    std::string label;   // "<varied>=<value>", e.g. "r1=0.7071"
    double value = 0.0;
    Trajectory traj;
    std::vector<double> concurrence;
    std::string error;   // non-empty when this curve failed; siblings still run
};

struct CurveSet {
    std::string name;    // preset name, or "solve" for single runs
    Engine engine = Engine::analytic;
    ModelParams base;
    std::string varied;  // empty for single runs
    TimeWindow window;
    oracle::OracleConfig solver;
    std::vector<double> times;
    std::vector<Curve> curves;
};

CurveSet run_preset(const Preset& p, Engine engine, const oracle::OracleConfig& cfg = {});

// Single parameter set run through the chosen engine, as one labeled curve.
CurveSet run_single(const ModelParams& p, const TimeWindow& w, Engine engine,
                    const oracle::OracleConfig& cfg = {});

enum class Reduce { min, final, time_average };
std::string_view reduce_name(Reduce r);
Reduce reduce_from_name(std::string_view name);

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // 1 or 2 axes
    Reduce reduce = Reduce::min;
};

struct SweepRow {
    std::vector<double> coords;   // one entry per axis, outer axis first
    double value = 0.0;
    bool ok = false;
    std::string error;            // reason when !ok
};

struct SweepTable {
    std::vector<std::string> axis_names;
    Reduce reduce = Reduce::min;
    std::vector<SweepRow> rows;   // lexicographic over the axes, in given value order
};

SweepTable run_sweep(const SweepSpec& spec, const ModelParams& base, const TimeWindow& w = {},
                     Engine engine = Engine::analytic, const oracle::OracleConfig& cfg = {});

// Compact value formatting used in labels and legends: %.4g.
std::string format_value(double v);

}  // namespace entsim
