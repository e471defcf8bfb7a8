// io.hpp: run configuration (JSON document) and the output serializers.
// All numbers are written with 17 significant digits so doubles round-trip
// exactly; identical inputs always produce identical bytes.
#pragma once

#include <string>
#include <vector>

#include "entsim/scenarios.hpp"

namespace entsim::io {

inline constexpr const char* kVersion = "0.1.0";

enum class RunMode { single, preset, sweep };

struct OutputOptions {
    std::string dir = "out";
    std::vector<std::string> formats = {"csv", "svg"};  // subset of csv, json, svg
};

struct RunConfig {
    ModelParams model;
    RunMode mode = RunMode::single;
    std::string preset;            // set when mode == preset
    Engine engine = Engine::analytic;
    TimeWindow window;
    bool window_set = false;       // true when the document overrides the window
    SweepSpec sweep;
    OutputOptions output;
};

// Parses and validates a JSON configuration document. Top-level keys:
// model{omega0,gamma,lambda,delta,omega_drive,beta,r1,eta,phi},
// run{mode,preset,engine,t_start,t_end,samples}, sweep{axes,reduce},
// output{dir,formats}. Unknown keys are rejected by path; exactly one of
// single / preset / sweep may be selected.
RunConfig parse_config(const std::string& text);

std::string emit_table_csv(const CurveSet& cs);
std::string emit_table_json(const CurveSet& cs);
std::string emit_plot_svg(const CurveSet& cs);

std::string emit_sweep_csv(const SweepTable& t);
std::string emit_sweep_json(const SweepTable& t, const ModelParams& base, const TimeWindow& w,
                            Engine engine, const oracle::OracleConfig& solver);

// %.17g, the shortest representation that is still exact for IEEE doubles.
std::string format_full(double v);

// 16-hex FNV-1a digest, used to name output directories of unnamed runs.
std::string content_hash(const std::string& bytes);

}  // namespace entsim::io
