#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <sstream>

#include "entsim/io.hpp"

using namespace entsim;
using nlohmann::json;

namespace {

CurveSet tiny_curveset() {
    ModelParams p;
    p.lambda = 4.0;
    return run_single(p, {0.0, 1.0, 3}, Engine::analytic);
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

}  // namespace

TEST_CASE("minimal preset config applies defaults") {
    const auto rc = io::parse_config(R"({"run":{"preset":"fig2a"}})");
    CHECK(rc.mode == io::RunMode::preset);
    CHECK(rc.preset == "fig2a");
    CHECK(rc.engine == Engine::analytic);
    CHECK(rc.output.dir == "out");
    CHECK(rc.output.formats == std::vector<std::string>{"csv", "svg"});
    CHECK(!rc.window_set);
    CHECK(rc.model.omega0 == 1.5e9);
    CHECK(rc.model.gamma == 1.0);
}

TEST_CASE("full config document") {
    const auto rc = io::parse_config(R"({
      "model": {"lambda": 0.1, "omega_drive": 4, "beta": 1e-9, "r1": 0.5},
      "run": {"mode": "single", "engine": "oracle", "t_start": 0, "t_end": 25, "samples": 501},
      "output": {"dir": "results", "formats": ["json"]}
    })");
    CHECK(rc.mode == io::RunMode::single);
    CHECK(rc.engine == Engine::oracle);
    CHECK(rc.model.lambda == 0.1);
    CHECK(rc.model.beta == 1e-9);
    CHECK(rc.window.end == 25.0);
    CHECK(rc.window.samples == 501);
    CHECK(rc.window_set);
    CHECK(rc.output.dir == "results");
}

TEST_CASE("config validation errors name the key and constraint") {
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"model":{"beta":1.5}})"),
                         doctest::Contains("beta must satisfy 0 <= beta < 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"model":{"betta":0.5}})"),
                         doctest::Contains("model.betta"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"run":{"modee":"x"}})"),
                         doctest::Contains("run.modee"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"frobnicate":{}})"),
                         doctest::Contains("frobnicate"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"model":{"lambda":"four"}})"),
                         doctest::Contains("expected a number"), std::invalid_argument);
}

TEST_CASE("preset and sweep are mutually exclusive") {
    const char* doc = R"({
      "run": {"preset": "fig2a"},
      "sweep": {"axes": [{"name": "r1", "values": [0.5]}]}
    })";
    CHECK_THROWS_WITH_AS(io::parse_config(doc), doctest::Contains("mutually exclusive"),
                         std::invalid_argument);
}

TEST_CASE("mode declarations must match the sections present") {
    CHECK_THROWS_AS(io::parse_config(R"({"run":{"mode":"preset"}})"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config(R"({"run":{"mode":"sweep"}})"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config(R"({"run":{"mode":"single","preset":"fig2a"}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config(R"({"run":{"mode":"banana"}})"), std::invalid_argument);
}

TEST_CASE("syntax errors carry a position") {
    try {
        io::parse_config("{\"run\": {\"preset\" \"fig2a\"}}");
        FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("syntax error") != std::string::npos);
        // nlohmann reports the byte offset of the failure
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
}

TEST_CASE("unknown presets and bad windows are rejected at parse time") {
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"run":{"preset":"fig9x"}})"),
                         doctest::Contains("unknown preset"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config(R"({"run":{"t_start":5,"t_end":1}})"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config(R"({"run":{"samples":1}})"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config(R"({"output":{"formats":["pdf"]}})"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config(R"({"sweep":{"reduce":"median"}})"), std::invalid_argument);
}

TEST_CASE("single-curve CSV is header plus one row per sample") {
    const CurveSet cs = tiny_curveset();
    const std::string csv = io::emit_table_csv(cs);
    CHECK(count_lines(csv) == 4);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "t,run:re_c1,run:im_c1,run:re_c2,run:im_c2,run:concurrence");
    std::string row;
    std::getline(in, row);
    CHECK(row.substr(0, 2) == "0,");
}

TEST_CASE("fig2a CSV keeps the documented curve order") {
    const CurveSet cs = run_preset(find_preset("fig2a"), Engine::analytic);
    const std::string csv = io::emit_table_csv(cs);
    const auto p1 = csv.find("r1=0.7071:re_c1");
    const auto p2 = csv.find("r1=0.5:re_c1");
    const auto p3 = csv.find("r1=0:re_c1");
    REQUIRE(p1 != std::string::npos);
    REQUIRE(p2 != std::string::npos);
    REQUIRE(p3 != std::string::npos);
    CHECK(p1 < p2);
    CHECK(p2 < p3);
}

TEST_CASE("JSON output round-trips bit-for-bit") {
    const CurveSet cs = run_preset(find_preset("fig2a"), Engine::analytic);
    const std::string text = io::emit_table_json(cs);
    const json doc = json::parse(text);
    CHECK(doc.at("name") == "fig2a");
    CHECK(doc.at("engine") == "analytic");
    CHECK(doc.at("varied") == "r1");
    CHECK(doc.at("model").at("omega0").get<double>() == 1.5e9);
    CHECK(doc.at("model").at("eta").get<double>() == cs.base.eta);
    CHECK(doc.at("window").at("samples").get<std::size_t>() == 2001);
    CHECK(doc.at("solver").at("rel_tol").get<double>() == cs.solver.rel_tol);
    REQUIRE(doc.at("times").size() == cs.times.size());
    REQUIRE(doc.at("curves").size() == cs.curves.size());
    for (std::size_t k = 0; k < cs.curves.size(); ++k) {
        const auto& jc = doc.at("curves")[k];
        CHECK(jc.at("label") == cs.curves[k].label);
        for (std::size_t i = 0; i < cs.times.size(); ++i) {
            CHECK(jc.at("re_c1")[i].get<double>() == std::real(cs.curves[k].traj.c1[i]));
            CHECK(jc.at("im_c1")[i].get<double>() == std::imag(cs.curves[k].traj.c1[i]));
            CHECK(jc.at("re_c2")[i].get<double>() == std::real(cs.curves[k].traj.c2[i]));
            CHECK(jc.at("im_c2")[i].get<double>() == std::imag(cs.curves[k].traj.c2[i]));
            CHECK(jc.at("concurrence")[i].get<double>() == cs.curves[k].concurrence[i]);
        }
    }
    for (std::size_t i = 0; i < cs.times.size(); ++i)
        CHECK(doc.at("times")[i].get<double>() == cs.times[i]);
}

TEST_CASE("CSV and JSON encode identical values") {
    const CurveSet cs = tiny_curveset();
    const json doc = json::parse(io::emit_table_json(cs));
    const std::string csv = io::emit_table_csv(cs);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    for (std::size_t i = 0; std::getline(in, line); ++i) {
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        CHECK(std::stod(cell) == doc.at("times")[i].get<double>());
        std::getline(row, cell, ',');
        CHECK(std::stod(cell) == doc.at("curves")[0].at("re_c1")[i].get<double>());
        std::getline(row, cell, ',');
        CHECK(std::stod(cell) == doc.at("curves")[0].at("im_c1")[i].get<double>());
        std::getline(row, cell, ',');
        CHECK(std::stod(cell) == doc.at("curves")[0].at("re_c2")[i].get<double>());
        std::getline(row, cell, ',');
        CHECK(std::stod(cell) == doc.at("curves")[0].at("im_c2")[i].get<double>());
        std::getline(row, cell, ',');
        CHECK(std::stod(cell) == doc.at("curves")[0].at("concurrence")[i].get<double>());
    }
}

TEST_CASE("SVG carries one polyline per curve and the legend labels") {
    const CurveSet cs = run_preset(find_preset("fig2a"), Engine::analytic);
    const std::string svg = io::emit_plot_svg(cs);
    CHECK(count_occurrences(svg, "<polyline") == 3);
    CHECK(svg.find("r1=0.7071") != std::string::npos);
    CHECK(svg.find("r1=0.5") != std::string::npos);
    CHECK(svg.find("r1=0<") != std::string::npos);
    CHECK(svg.find("\xCE\xB3t") != std::string::npos);
    CHECK(svg.find("Concurrence") != std::string::npos);
    CHECK(svg.find("<metadata>") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("emitters are deterministic") {
    const CurveSet a = run_preset(find_preset("fig3a"), Engine::analytic);
    const CurveSet b = run_preset(find_preset("fig3a"), Engine::analytic);
    CHECK(io::emit_table_csv(a) == io::emit_table_csv(b));
    CHECK(io::emit_table_json(a) == io::emit_table_json(b));
    CHECK(io::emit_plot_svg(a) == io::emit_plot_svg(b));
}

TEST_CASE("degenerate plot windows are rejected") {
    CurveSet cs = tiny_curveset();
    cs.window.end = cs.window.start;
    CHECK_THROWS_AS(io::emit_plot_svg(cs), std::invalid_argument);
    CurveSet empty;
    CHECK_THROWS_AS(io::emit_plot_svg(empty), std::invalid_argument);
    CHECK_THROWS_AS(io::emit_table_csv(empty), std::invalid_argument);
}

TEST_CASE("sweep serialization keeps rows and errors") {
    ModelParams base;
    base.lambda = 4.0;
    SweepSpec spec;
    spec.axes = {{"beta", {0.0, 2.0}}};
    const SweepTable t = run_sweep(spec, base, {0.0, 5.0, 51});
    const std::string csv = io::emit_sweep_csv(t);
    CHECK(count_lines(csv) == 3);
    CHECK(csv.substr(0, 15) == "beta,min,error\n");
    const std::string js = io::emit_sweep_json(t, base, {0.0, 5.0, 51}, Engine::analytic, {});
    const json doc = json::parse(js);
    CHECK(doc.at("rows").size() == 2);
    CHECK(doc.at("rows")[0].at("ok") == true);
    CHECK(doc.at("rows")[1].at("ok") == false);
    CHECK(doc.at("rows")[1].at("value").is_null());
    CHECK(doc.at("rows")[0].at("value").get<double>() == t.rows[0].value);
}

TEST_CASE("17 significant digits survive a parse round-trip") {
    CHECK(io::format_full(1.0 / 3.0) == "0.33333333333333331");
    CHECK(std::stod(io::format_full(0.1 + 0.2)) == 0.1 + 0.2);
    CHECK(std::stod(io::format_full(1.0 / std::numbers::sqrt2)) == 1.0 / std::numbers::sqrt2);
    CHECK(io::content_hash("abc") == io::content_hash("abc"));
    CHECK(io::content_hash("abc") != io::content_hash("abd"));
    CHECK(io::content_hash("x").size() == 16);
}
