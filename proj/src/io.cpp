#include "entsim/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace entsim::io {

using nlohmann::json;

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

void append_escaped(std::string& out, std::string_view s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void append_array(std::string& out, std::span<const double> v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_full(v[i]);
    }
    out += ']';
}

void append_array(std::string& out, std::span<const cplx> v, bool imag_part) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_full(imag_part ? std::imag(v[i]) : std::real(v[i]));
    }
    out += ']';
}

void append_model(std::string& out, const ModelParams& m) {
    out += "{\"omega0\":" + format_full(m.omega0);
    out += ",\"gamma\":" + format_full(m.gamma);
    out += ",\"lambda\":" + format_full(m.lambda);
    out += ",\"delta\":" + format_full(m.delta);
    out += ",\"omega_drive\":" + format_full(m.omega_drive);
    out += ",\"beta\":" + format_full(m.beta);
    out += ",\"r1\":" + format_full(m.r1);
    out += ",\"eta\":" + format_full(m.eta);
    out += ",\"phi\":" + format_full(m.phi);
    out += '}';
}

void append_window(std::string& out, const TimeWindow& w) {
    out += "{\"t_start\":" + format_full(w.start);
    out += ",\"t_end\":" + format_full(w.end);
    out += ",\"samples\":" + std::to_string(w.samples);
    out += '}';
}

// Everything needed to reproduce the numbers: the oracle stepping parameters
// and the fixed constants of the analytic fallback path.
void append_solver(std::string& out, const oracle::OracleConfig& cfg) {
    out += "{\"rel_tol\":" + format_full(cfg.rel_tol);
    out += ",\"abs_tol\":" + format_full(cfg.abs_tol);
    out += ",\"max_step\":" + format_full(cfg.max_step);
    out += ",\"method_order\":" + std::to_string(cfg.method_order);
    out += ",\"degenerate_separation\":" + format_full(1e-6);
    out += ",\"fallback_rel_tol\":" + format_full(1e-11);
    out += ",\"fallback_abs_tol\":" + format_full(1e-13);
    out += '}';
}

std::string metadata_json(const CurveSet& cs) {
    std::string out = "{\"version\":\"";
    out += kVersion;
    out += "\",\"kind\":\"curves\",\"name\":";
    append_escaped(out, cs.name);
    out += ",\"engine\":\"" + std::string(engine_name(cs.engine)) + "\"";
    out += ",\"varied\":";
    append_escaped(out, cs.varied);
    out += ",\"model\":";
    append_model(out, cs.base);
    out += ",\"window\":";
    append_window(out, cs.window);
    out += ",\"solver\":";
    append_solver(out, cs.solver);
    out += '}';
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

}  // namespace

std::string emit_table_csv(const CurveSet& cs) {
    if (cs.curves.empty()) throw std::invalid_argument("curve set is empty");
    std::string out = "t";
    for (const auto& c : cs.curves) {
        if (!c.error.empty()) continue;  // failed curves are reported in the JSON output
        for (const char* col : {"re_c1", "im_c1", "re_c2", "im_c2", "concurrence"})
            out += "," + c.label + ":" + col;
    }
    out += '\n';
    for (std::size_t i = 0; i < cs.times.size(); ++i) {
        out += format_full(cs.times[i]);
        for (const auto& c : cs.curves) {
            if (!c.error.empty()) continue;
            out += ',' + format_full(std::real(c.traj.c1[i]));
            out += ',' + format_full(std::imag(c.traj.c1[i]));
            out += ',' + format_full(std::real(c.traj.c2[i]));
            out += ',' + format_full(std::imag(c.traj.c2[i]));
            out += ',' + format_full(c.concurrence[i]);
        }
        out += '\n';
    }
    return out;
}

std::string emit_table_json(const CurveSet& cs) {
    if (cs.curves.empty()) throw std::invalid_argument("curve set is empty");
    std::string meta = metadata_json(cs);
    meta.pop_back();  // reopen the object to append the data fields
    std::string out = std::move(meta);
    out += ",\n\"times\":";
    append_array(out, cs.times);
    out += ",\n\"curves\":[";
    for (std::size_t k = 0; k < cs.curves.size(); ++k) {
        const auto& c = cs.curves[k];
        if (k) out += ',';
        out += "\n{\"label\":";
        append_escaped(out, c.label);
        out += ",\"value\":" + format_full(c.value);
        out += ",\"error\":";
        append_escaped(out, c.error);
        out += ",\"re_c1\":";
        append_array(out, c.traj.c1, false);
        out += ",\"im_c1\":";
        append_array(out, c.traj.c1, true);
        out += ",\"re_c2\":";
        append_array(out, c.traj.c2, false);
        out += ",\"im_c2\":";
        append_array(out, c.traj.c2, true);
        out += ",\"concurrence\":";
        append_array(out, c.concurrence);
        out += '}';
    }
    out += "\n]}\n";
    return out;
}

std::string emit_sweep_csv(const SweepTable& t) {
    std::string out;
    for (const auto& n : t.axis_names) out += n + ",";
    out += std::string(reduce_name(t.reduce)) + ",error\n";
    for (const auto& row : t.rows) {
        for (double c : row.coords) out += format_full(c) + ",";
        out += row.ok ? format_full(row.value) : "";
        out += "," + csv_quote(row.error) + "\n";
    }
    return out;
}

std::string emit_sweep_json(const SweepTable& t, const ModelParams& base, const TimeWindow& w,
                            Engine engine, const oracle::OracleConfig& solver) {
    std::string out = "{\"version\":\"";
    out += kVersion;
    out += "\",\"kind\":\"sweep\",\"engine\":\"" + std::string(engine_name(engine)) + "\"";
    out += ",\"model\":";
    append_model(out, base);
    out += ",\"window\":";
    append_window(out, w);
    out += ",\"solver\":";
    append_solver(out, solver);
    out += ",\"axes\":[";
    for (std::size_t i = 0; i < t.axis_names.size(); ++i) {
        if (i) out += ',';
        append_escaped(out, t.axis_names[i]);
    }
    out += "],\"reduce\":\"" + std::string(reduce_name(t.reduce)) + "\"";
    out += ",\"rows\":[";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        if (i) out += ',';
        out += "\n{\"coords\":";
        append_array(out, row.coords);
        out += ",\"ok\":";
        out += row.ok ? "true" : "false";
        out += ",\"value\":";
        out += row.ok ? format_full(row.value) : "null";
        out += ",\"error\":";
        append_escaped(out, row.error);
        out += '}';
    }
    out += "\n]}\n";
    return out;
}

namespace {

constexpr const char* kPalette[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr const char* kDashes[] = {"", "9,5", "2,4", "7,3,2,3"};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void append_xml_escaped(std::string& out, std::string_view s) {
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
}

}  // namespace

std::string emit_plot_svg(const CurveSet& cs) {
    if (cs.curves.empty()) throw std::invalid_argument("curve set is empty");
    if (!(cs.window.end > cs.window.start))
        throw std::invalid_argument("plot window is empty (t_end must exceed t_start)");
    if (cs.times.size() < 2) throw std::invalid_argument("plot needs at least two samples");

    const double width = 840, height = 560;
    const double ml = 70, mr = 190, mt = 42, mb = 58;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const double t0 = cs.window.start, t1 = cs.window.end;

    auto xpos = [&](double t) { return ml + (t - t0) / (t1 - t0) * pw; };
    auto ypos = [&](double c) { return mt + (1.0 - std::min(1.0, std::max(0.0, c))) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"560\" "
         "viewBox=\"0 0 840 560\" font-family=\"Helvetica,Arial,sans-serif\">\n";
    s += "<metadata>";
    append_xml_escaped(s, metadata_json(cs));
    s += "</metadata>\n";
    s += "<rect x=\"0\" y=\"0\" width=\"840\" height=\"560\" fill=\"#ffffff\"/>\n";

    // title
    s += "<text x=\"" + fmt2(ml + pw / 2) + "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">";
    append_xml_escaped(s, cs.name + " (" + std::string(engine_name(cs.engine)) + ")");
    s += "</text>\n";

    // grid and ticks
    for (int i = 0; i <= 5; ++i) {
        const double tv = t0 + (t1 - t0) * i / 5.0;
        const double x = xpos(tv);
        s += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(mt) + "\" x2=\"" + fmt2(x) + "\" y2=\"" +
             fmt2(mt + ph) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(mt + ph + 20) +
             "\" font-size=\"12\" text-anchor=\"middle\">" + format_value(tv) + "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double cv = i / 5.0;
        const double y = ypos(cv);
        s += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(ml + pw) +
             "\" y2=\"" + fmt2(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + fmt2(ml - 8) + "\" y=\"" + fmt2(y + 4) +
             "\" font-size=\"12\" text-anchor=\"end\">" + format_value(cv) + "</text>\n";
    }
    s += "<rect x=\"" + fmt2(ml) + "\" y=\"" + fmt2(mt) + "\" width=\"" + fmt2(pw) +
         "\" height=\"" + fmt2(ph) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

    // axis labels
    s += "<text x=\"" + fmt2(ml + pw / 2) + "\" y=\"" + fmt2(height - 16) +
         "\" font-size=\"14\" text-anchor=\"middle\">\xCE\xB3t</text>\n";
    s += "<text x=\"20\" y=\"" + fmt2(mt + ph / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         fmt2(mt + ph / 2) + ")\">Concurrence</text>\n";

    // curves
    for (std::size_t k = 0; k < cs.curves.size(); ++k) {
        const auto& c = cs.curves[k];
        if (!c.error.empty()) continue;
        const char* color = kPalette[k % std::size(kPalette)];
        const char* dash = kDashes[k % std::size(kDashes)];
        s += "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\"";
        if (dash[0]) {
            s += " stroke-dasharray=\"";
            s += dash;
            s += "\"";
        }
        s += " points=\"";
        for (std::size_t i = 0; i < cs.times.size(); ++i) {
            if (i) s += ' ';
            s += fmt2(xpos(cs.times[i])) + "," + fmt2(ypos(c.concurrence[i]));
        }
        s += "\"/>\n";
    }

    // legend
    const double lx = ml + pw + 14;
    for (std::size_t k = 0; k < cs.curves.size(); ++k) {
        const auto& c = cs.curves[k];
        const double ly = mt + 14 + 24.0 * static_cast<double>(k);
        const char* color = kPalette[k % std::size(kPalette)];
        const char* dash = kDashes[k % std::size(kDashes)];
        s += "<line x1=\"" + fmt2(lx) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" + fmt2(lx + 28) +
             "\" y2=\"" + fmt2(ly) + "\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\"";
        if (dash[0]) {
            s += " stroke-dasharray=\"";
            s += dash;
            s += "\"";
        }
        s += "/>\n";
        s += "<text x=\"" + fmt2(lx + 34) + "\" y=\"" + fmt2(ly + 4) + "\" font-size=\"12\">";
        append_xml_escaped(s, c.error.empty() ? c.label : c.label + " (failed)");
        s += "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

namespace {

[[noreturn]] void bad_key(const std::string& path) {
    throw std::invalid_argument("config: " + path + ": unknown key");
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw std::invalid_argument("config: " + path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw std::invalid_argument("config: " + path + ": must be finite");
    return v;
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw std::invalid_argument("config: " + path + ": expected a string");
    return j.get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

    RunConfig rc;
    bool has_preset = false, has_sweep = false, has_mode = false;
    std::string mode_str;

    for (const auto& [key, value] : doc.items()) {
        if (key == "model") {
            if (!value.is_object()) throw std::invalid_argument("config: model: expected an object");
            for (const auto& [mk, mv] : value.items()) {
                if (!is_param_name(mk)) bad_key("model." + mk);
                set_param(rc.model, mk, get_number(mv, "model." + mk));
            }
        } else if (key == "run") {
            if (!value.is_object()) throw std::invalid_argument("config: run: expected an object");
            for (const auto& [rk, rv] : value.items()) {
                const std::string path = "run." + rk;
                if (rk == "mode") {
                    has_mode = true;
                    mode_str = get_string(rv, path);
                } else if (rk == "preset") {
                    has_preset = true;
                    rc.preset = get_string(rv, path);
                } else if (rk == "engine") {
                    try {
                        rc.engine = engine_from_name(get_string(rv, path));
                    } catch (const std::invalid_argument& e) {
                        throw std::invalid_argument("config: " + path + ": " + e.what());
                    }
                } else if (rk == "t_start") {
                    rc.window.start = get_number(rv, path);
                    rc.window_set = true;
                } else if (rk == "t_end") {
                    rc.window.end = get_number(rv, path);
                    rc.window_set = true;
                } else if (rk == "samples") {
                    if (!rv.is_number_unsigned() || rv.get<std::uint64_t>() < 2)
                        throw std::invalid_argument("config: " + path +
                                                    ": expected an integer >= 2");
                    rc.window.samples = rv.get<std::uint64_t>();
                    rc.window_set = true;
                } else {
                    bad_key(path);
                }
            }
        } else if (key == "sweep") {
            if (!value.is_object()) throw std::invalid_argument("config: sweep: expected an object");
            has_sweep = true;
            for (const auto& [sk, sv] : value.items()) {
                const std::string path = "sweep." + sk;
                if (sk == "axes") {
                    if (!sv.is_array() || sv.empty() || sv.size() > 2)
                        throw std::invalid_argument("config: " + path +
                                                    ": expected an array of 1 or 2 axes");
                    for (std::size_t i = 0; i < sv.size(); ++i) {
                        const auto& ax = sv[i];
                        const std::string apath = path + "[" + std::to_string(i) + "]";
                        if (!ax.is_object())
                            throw std::invalid_argument("config: " + apath + ": expected an object");
                        SweepAxis axis;
                        for (const auto& [ak, av] : ax.items()) {
                            if (ak == "name") {
                                axis.name = get_string(av, apath + ".name");
                                if (!is_param_name(axis.name))
                                    throw std::invalid_argument("config: " + apath +
                                                                ".name: unknown parameter \"" +
                                                                axis.name + "\"");
                            } else if (ak == "values") {
                                if (!av.is_array() || av.empty())
                                    throw std::invalid_argument("config: " + apath +
                                                                ".values: expected a non-empty array");
                                for (std::size_t v2 = 0; v2 < av.size(); ++v2)
                                    axis.values.push_back(get_number(
                                        av[v2], apath + ".values[" + std::to_string(v2) + "]"));
                            } else {
                                bad_key(apath + "." + ak);
                            }
                        }
                        if (axis.name.empty() || axis.values.empty())
                            throw std::invalid_argument("config: " + apath +
                                                        ": axis needs name and values");
                        rc.sweep.axes.push_back(std::move(axis));
                    }
                } else if (sk == "reduce") {
                    try {
                        rc.sweep.reduce = reduce_from_name(get_string(sv, path));
                    } catch (const std::invalid_argument& e) {
                        throw std::invalid_argument("config: " + path + ": " + e.what());
                    }
                } else {
                    bad_key(path);
                }
            }
            if (rc.sweep.axes.empty())
                throw std::invalid_argument("config: sweep.axes: required for a sweep");
        } else if (key == "output") {
            if (!value.is_object())
                throw std::invalid_argument("config: output: expected an object");
            for (const auto& [ok, ov] : value.items()) {
                const std::string path = "output." + ok;
                if (ok == "dir") {
                    rc.output.dir = get_string(ov, path);
                } else if (ok == "formats") {
                    if (!ov.is_array() || ov.empty())
                        throw std::invalid_argument("config: " + path +
                                                    ": expected a non-empty array");
                    rc.output.formats.clear();
                    for (const auto& f : ov) {
                        const std::string fs = get_string(f, path);
                        if (fs != "csv" && fs != "json" && fs != "svg")
                            throw std::invalid_argument("config: " + path +
                                                        ": formats are csv, json, svg");
                        if (std::find(rc.output.formats.begin(), rc.output.formats.end(), fs) ==
                            rc.output.formats.end())
                            rc.output.formats.push_back(fs);
                    }
                } else {
                    bad_key(path);
                }
            }
        } else {
            bad_key(key);
        }
    }

    if (has_preset && has_sweep)
        throw std::invalid_argument("config: run.preset and sweep are mutually exclusive");

    if (has_mode) {
        if (mode_str == "single") rc.mode = RunMode::single;
        else if (mode_str == "preset") rc.mode = RunMode::preset;
        else if (mode_str == "sweep") rc.mode = RunMode::sweep;
        else throw std::invalid_argument("config: run.mode: must be single, preset or sweep");
        if (rc.mode == RunMode::preset && !has_preset)
            throw std::invalid_argument("config: run.mode is preset but run.preset is missing");
        if (rc.mode == RunMode::sweep && !has_sweep)
            throw std::invalid_argument("config: run.mode is sweep but no sweep section given");
        if (rc.mode == RunMode::single && (has_preset || has_sweep))
            throw std::invalid_argument(
                "config: run.mode is single but a preset or sweep is also given");
    } else {
        rc.mode = has_preset ? RunMode::preset : (has_sweep ? RunMode::sweep : RunMode::single);
    }

    try {
        validate(rc.model);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("config: model: ") + e.what());
    }
    if (rc.window_set) {
        if (!(rc.window.end > rc.window.start))
            throw std::invalid_argument("config: run: t_end must exceed t_start");
    }
    if (rc.mode == RunMode::preset) {
        find_preset(rc.preset);  // throws with the list of valid names
    }
    return rc;
}

}  // namespace entsim::io
