#include "doctest.h"

#include <cmath>
#include <string>

#include "qhe/cycle.hpp"
#include "qhe/errors.hpp"
#include "qhe/scan.hpp"
#include "qhe/three_level.hpp"

using namespace qhe;
using namespace qhe::scan;

namespace {

ScanConfig config(const char* text, RunOptions options = {}) {
    return resolve_config(Json::parse(text), options);
}

double num(const Table& t, std::size_t row, const char* col) { return std::get<double>(t.rows[row][t.column(col)]); }
bool flag(const Table& t, std::size_t row, const char* col) { return std::get<bool>(t.rows[row][t.column(col)]); }
std::string str(const Table& t, std::size_t row, const char* col) {
    return std::get<std::string>(t.rows[row][t.column(col)]);
}
bool empty(const Table& t, std::size_t row, const char* col) {
    return std::holds_alternative<std::monostate>(t.rows[row][t.column(col)]);
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected qhe::Error");
    return Errc::NumericFailure;
}

}  // namespace

TEST_CASE("scan: commands") {
    for (Command c : {Command::ScanRegion3, Command::ScanDark, Command::WorkCurve, Command::LimitStudy,
                      Command::CycleReport}) {
        CHECK(parse_command(to_string(c)) == c);
    }
    CHECK(parse_command("scan-region3") == Command::ScanRegion3);
    CHECK_FALSE(parse_command("scan").has_value());
}

TEST_CASE("scan: axes") {
    const Axis a = parse_axis(Json::parse(R"({"min": 0, "max": 1, "steps": 5})"), "x");
    CHECK(a.steps == 5);
    CHECK(a.at(0) == 0.0);
    CHECK(a.at(2) == 0.5);
    CHECK(a.at(4) == 1.0);
    const Axis fixed = parse_axis(Json(0.25), "x");
    CHECK(fixed.steps == 1);
    CHECK(fixed.at(0) == 0.25);

    CHECK(code_of([] { parse_axis(Json::parse(R"({"min": 0, "max": 1, "steps": 1})"), "x"); }) == Errc::ConfigError);
    CHECK(code_of([] { parse_axis(Json::parse(R"({"min": 1, "max": 1, "steps": 4})"), "x"); }) == Errc::ConfigError);
    CHECK(code_of([] { parse_axis(Json::parse(R"({"min": 0, "steps": 4})"), "x"); }) == Errc::ConfigError);
    CHECK(code_of([] { parse_axis(Json("wide"), "x"); }) == Errc::ConfigError);
}

TEST_CASE("scan: config resolution and overrides") {
    const ScanConfig plain = config("{}");
    CHECK(plain.seed == kDefaultSeed);
    CHECK(plain.format == OutputFormat::Csv);
    CHECK_FALSE(plain.format_explicit);

    const ScanConfig doc = config(R"({"format": "json", "seed": 7, "output": "x.json"})");
    CHECK(doc.format == OutputFormat::Json);
    CHECK(doc.seed == 7);
    CHECK(doc.output == "x.json");

    RunOptions o;
    o.format = OutputFormat::Csv;
    o.seed = 9;
    const ScanConfig flags = config(R"({"format": "json", "seed": 7})", o);
    CHECK(flags.format == OutputFormat::Csv);
    CHECK(flags.seed == 9);

    CHECK(code_of([] { config(R"({"format": "xml"})"); }) == Errc::ConfigError);
    CHECK(code_of([] { config(R"({"seed": -1})"); }) == Errc::ConfigError);

    Json j = Json::parse(R"({"hot": {"delta": 2.0}})");
    apply_override(j, "hot.delta=3.5");
    apply_override(j, "temperatures.t_h=10");
    apply_override(j, "output=out.csv");
    CHECK(j["hot"]["delta"] == 3.5);
    CHECK(j["temperatures"]["t_h"] == 10);
    CHECK(j["output"] == "out.csv");
    CHECK(code_of([&] { apply_override(j, "novalue"); }) == Errc::ConfigError);
    CHECK(code_of([&] { apply_override(j, "hot.delta.x=1"); }) == Errc::ConfigError);
}

TEST_CASE("scan: number and table serialisation") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);

    Table t;
    t.columns = {"a", "b", "c", "d"};
    t.rows = {{1.5, true, Cell{}, std::string("ok")}};
    CHECK(to_csv(t) == "a,b,c,d\n1.5,true,,ok\n");
    const Json j = Json::parse(to_json(t, Command::WorkCurve, 42));
    CHECK(j["command"] == "work-curve");
    CHECK(j["seed"] == 42);
    CHECK(j["rows"][0]["c"].is_null());
    CHECK(j["rows"][0]["b"] == true);
    CHECK_THROWS_AS(t.column("zzz"), std::out_of_range);
}

TEST_CASE("scan-region3: single cells") {
    const Table a = run_scan_region3(config(R"({"grid": {"r1l": 0.5, "r2l": 0.8, "r2h": 1.5}})"));
    REQUIRE(a.rows.size() == 1);
    CHECK(str(a, 0, "region") == "SolutionI");
    CHECK(flag(a, 0, "looser"));
    CHECK(num(a, 0, "kappa_high_t") == doctest::Approx(1.919831223628692).epsilon(1e-14));

    const Table b = run_scan_region3(config(R"({"grid": {"r1l": 0.78, "r2l": 0.7, "r2h": 0.9}})"));
    CHECK(str(b, 0, "region") == "SolutionII");
    CHECK_FALSE(flag(b, 0, "looser"));

    const Table c = run_scan_region3(config(R"({"grid": {"r1l": 1.2, "r2l": 0.8, "r2h": 1.5}})"));
    CHECK(str(c, 0, "region") == "Neither");
    CHECK_FALSE(flag(c, 0, "case_one_presupposition"));
    CHECK(empty(c, 0, "kappa_high_t"));
    CHECK(str(c, 0, "status") == "not_case_I");

    CHECK(code_of([] { run_scan_region3(config(R"({"grid": {"r1l": 0.5, "r2l": 0.8}})")); }) == Errc::ConfigError);
    CHECK(code_of([] { run_scan_region3(config(R"({"grid": {"r1l": 0, "r2l": 0.8, "r2h": 1}})")); }) ==
          Errc::ConfigError);
}

TEST_CASE("scan-region3: grid order and label boundaries") {
    const char* text = R"({"grid": {"r1l": {"min": 0.1, "max": 0.9, "steps": 2},
                                     "r2l": {"min": 0.2, "max": 1.2, "steps": 3},
                                     "r2h": {"min": 0.3, "max": 2.7, "steps": 4}}})";
    const Table t = run_scan_region3(config(text));
    REQUIRE(t.rows.size() == 24);
    std::size_t i = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int c = 0; c < 4; ++c, ++i) {
                CHECK(num(t, i, "r1l") == doctest::Approx(0.1 + 0.8 * a));
                CHECK(num(t, i, "r2l") == doctest::Approx(0.2 + 0.5 * b));
                CHECK(num(t, i, "r2h") == doctest::Approx(0.3 + 0.8 * c));
            }
        }
    }
    CHECK(validate(Command::ScanRegion3, t).empty());

    // Solution I edges: r2l = r1l r2h and r2h = 1 - r1l + r2l
    const Table fine = run_scan_region3(config(R"({"grid": {"r1l": 0.5, "r2l": {"min": 0.01, "max": 2, "steps": 200},
                                                            "r2h": 1.5}})"));
    for (std::size_t k = 0; k < fine.rows.size(); ++k) {
        const double r2l = num(fine, k, "r2l");
        const bool inside = r2l > 0.75 && r2l < 1.0;
        CHECK((str(fine, k, "region") == "SolutionI") == inside);
    }
}

TEST_CASE("scan-dark: cells and degenerate rows") {
    const char* text = R"({"hot": {"delta": 2.0, "omega": 2.0},
                           "grid": {"delta_l": {"min": -1, "max": 1, "steps": 2},
                                    "omega_l": {"min": 0, "max": 0.5, "steps": 2}},
                           "temperatures": {"t_h": 100.0, "t_l": 10.0}})";
    const Table t = run_scan_dark(config(text));
    REQUIRE(t.rows.size() == 4);
    CHECK(str(t, 0, "status") == "degenerate");
    CHECK_FALSE(flag(t, 1, "in_solution1"));  // (-1, 0.5)
    CHECK(str(t, 2, "status") == "degenerate");
    CHECK(flag(t, 3, "in_solution1"));        // (1, 0.5)
    CHECK(str(t, 3, "case_label") == "I");
    CHECK(str(t, 3, "region") == "SolutionI");
    CHECK(flag(t, 3, "pwc") == (num(t, 3, "net_work") > 0.0));

    const Table edge = run_scan_dark(config(R"({"hot": {"delta": 2, "omega": 2},
                                                 "grid": {"delta_l": 1, "omega_l": 1.999}})"));
    CHECK_FALSE(flag(edge, 0, "in_solution1"));
    CHECK(empty(edge, 0, "net_work"));

    CHECK(code_of([] { run_scan_dark(config(R"({"hot": {"delta": 2, "omega": 0},
                                                  "grid": {"delta_l": 1, "omega_l": 1}})")); }) == Errc::ConfigError);
}

TEST_CASE("scan-dark: Solution I triangle") {
    const char* text = R"({"hot": {"delta": 2.0, "omega": 2.0},
                           "grid": {"delta_l": {"min": -3, "max": 3, "steps": 301},
                                    "omega_l": {"min": 0.01, "max": 3, "steps": 300}}})";
    const Table t = run_scan_dark(config(text));
    REQUIRE(t.rows.size() == 301 * 300);
    CHECK(validate(Command::ScanDark, t).empty());
    const double d_omega = (3.0 - 0.01) / 299.0;
    for (std::size_t col = 0; col < 301; ++col) {
        const double delta = num(t, col * 300, "delta_l");
        double top = -1.0;
        bool any = false;
        for (std::size_t k = 0; k < 300; ++k) {
            if (flag(t, col * 300 + k, "in_solution1")) {
                any = true;
                top = num(t, col * 300 + k, "omega_l");
            }
        }
        if (delta <= 0.0 || delta >= 2.0) {
            CHECK_FALSE(any);
        } else if (delta > 0.01 + d_omega) {
            REQUIRE(any);
            CHECK(std::abs(top - delta) <= d_omega * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("work-curve") {
    const Table two = run_work_curve(config(R"({"hot": {"energies": [0, 2]}, "cold": {"energies": [0, 1]},
                                                 "t_l": 1, "grid": {"t_h": {"min": 0.5, "max": 4, "steps": 36}}})"));
    REQUIRE(two.rows.size() == 36);
    int changes = 0;
    for (std::size_t i = 1; i < two.rows.size(); ++i) {
        if (flag(two, i, "pwc") != flag(two, i - 1, "pwc")) {
            ++changes;
            CHECK(num(two, i - 1, "t_h") <= 2.0);
            CHECK(num(two, i, "t_h") > 2.0);
        }
    }
    CHECK(changes == 1);

    const Table same = run_work_curve(config(R"({"hot": {"harmonic": {"frequency": 1, "levels": 4}},
                                                  "cold": {"harmonic": {"frequency": 1, "levels": 4}},
                                                  "t_l": 1, "grid": {"t_h": {"min": 0.5, "max": 4, "steps": 8}}})"));
    for (std::size_t i = 0; i < same.rows.size(); ++i) {
        CHECK(num(same, i, "net_work") == 0.0);
        CHECK(str(same, i, "status") == "efficiency_undefined");
    }

    const Table c1 = run_work_curve(config(R"({"hot": {"spacings": [1, 1.5]}, "cold": {"spacings": [0.5, 0.8]},
                                                "t_l": 1, "grid": {"t_h": {"min": 1.5, "max": 2.5, "steps": 101}}})"));
    const auto crit = critical_hot_temperature(LevelSpectrum({0, 1, 2.5}), LevelSpectrum({0, 0.5, 1.3}), 1.0);
    for (std::size_t i = 0; i < c1.rows.size(); ++i) {
        CHECK(flag(c1, i, "pwc") == (num(c1, i, "t_h") > crit.t_hot));
    }

    CHECK(code_of([] { run_work_curve(config(R"({"hot": {"energies": [0, 2]}, "cold": {"energies": [0, 1, 2]},
                                                  "t_l": 1, "grid": {"t_h": 2}})")); }) == Errc::ConfigError);
    CHECK(code_of([] { run_work_curve(config(R"({"hot": {"energies": [0, 2]}, "cold": {"energies": [0, 1]},
                                                  "t_l": 1})")); }) == Errc::ConfigError);
    CHECK(code_of([] { run_work_curve(config(R"({"hot": {"energies": [0, 0]}, "cold": {"energies": [0, 1]},
                                                  "t_l": 1, "grid": {"t_h": 2}})")); }) == Errc::ConfigError);
}

TEST_CASE("limit-study") {
    const Table prop = run_limit_study(config(R"({"endpoints": {"d1h": 2, "d2h": 4, "d1l": 1, "d2l": 2},
                                                   "ladder": {"start": 10, "factor": 10, "count": 4}})"));
    for (std::size_t i = 0; i < prop.rows.size(); ++i) {
        CHECK(num(prop, i, "relative_gap") <= 1e-9);
        CHECK(num(prop, i, "kappa_high_t") == doctest::Approx(2.0));
    }

    const Table w = run_limit_study(config(R"({"endpoints": {"d1h": 1, "d2h": 1.5, "d1l": 0.5, "d2l": 0.8},
                                                "ladder": {"start": 10, "factor": 10, "count": 4}})"));
    REQUIRE(w.rows.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) CHECK(num(w, i, "relative_gap") < num(w, i - 1, "relative_gap"));
    CHECK(num(w, 3, "relative_gap") < 1e-2);
    CHECK(num(w, 3, "t_l") == doctest::Approx(2.5e4));
    CHECK(validate(Command::LimitStudy, w).empty());

    const Table c3 = run_limit_study(config(R"({"hot": {"spacings": [0.5, 3]}, "cold": {"spacings": [1, 1]},
                                                 "ladder": {"start": 10, "factor": 10, "count": 2}})"));
    for (std::size_t i = 0; i < c3.rows.size(); ++i) {
        CHECK(str(c3, i, "case_label") == "III");
        CHECK(empty(c3, i, "kappa_high_t"));
        CHECK_FALSE(empty(c3, i, "kappa_exact"));
    }

    CHECK(code_of([] { run_limit_study(config(R"({"endpoints": {"d1h": 1, "d2h": 1, "d1l": 1, "d2l": 1},
                                                   "ladder": {"start": 1, "factor": 1, "count": 2}})")); }) ==
          Errc::ConfigError);
}

TEST_CASE("cycle-report") {
    const auto r = run_cycle_report(config(R"({"hot": {"spacings": [1, 1.5]}, "cold": {"spacings": [0.5, 0.8]},
                                                "t_h": 10, "t_l": 1})"));
    CHECK(r["status"] == "ok");
    CHECK(r["net_work"].get<double>() == doctest::Approx(0.18139301678807206).epsilon(1e-14));
    CHECK(r["heat_in"].get<double>() == doctest::Approx(0.3773027632386679).epsilon(1e-14));
    CHECK(r["pwc"] == true);
    CHECK(r["three_level"]["case_label"] == "I");
    CHECK(r["three_level"]["region"] == "SolutionI");
    CHECK(r["three_level"]["looser"] == true);
    CHECK(r["three_level"]["theta"].get<double>() == doctest::Approx(0.99831223628691983).epsilon(1e-14));
    CHECK(r["critical_hot_temperature"]["t_h"].get<double>() == doctest::Approx(1.9337420737329241).epsilon(1e-9));

    const auto idle = run_cycle_report(config(R"({"hot": {"energies": [0, 1]}, "cold": {"energies": [0, 1]},
                                                   "t_h": 2, "t_l": 1})"));
    CHECK(idle["net_work"] == 0.0);
    CHECK(idle["efficiency"].is_null());
    CHECK(idle["critical_hot_temperature"]["status"] == "not_found");
    CHECK_FALSE(idle.contains("three_level"));

    const auto dark = run_cycle_report(config(R"({"hot": {"dark_state": {"delta": 2, "omega": 2}},
                                                   "cold": {"dark_state": {"delta": 1, "omega": 0.5}},
                                                   "t_h": 100, "t_l": 10})"));
    CHECK(dark["three_level"]["case_label"] == "I");
    CHECK(dark["three_level"]["region"] == "SolutionI");
    CHECK(dark["three_level"]["looser"] == true);
    CHECK(dark["dark_state"]["in_solution1"] == true);

    const auto degenerate = run_cycle_report(config(R"({"hot": {"dark_state": {"delta": 2, "omega": 2}},
                                                         "cold": {"dark_state": {"delta": 1, "omega": 0}},
                                                         "t_h": 100, "t_l": 10})"));
    CHECK(degenerate["status"] == "degenerate_spacing");

    CHECK(code_of([] { run(Command::CycleReport, config(R"({"format": "csv", "hot": {"energies": [0, 1]},
                          "cold": {"energies": [0, 1]}, "t_h": 2, "t_l": 1})")); }) == Errc::ConfigError);
    CHECK(code_of([] { run_cycle_report(config(R"({"hot": {"energies": [0, 1]}, "cold": {"energies": [0, 1]},
                                                    "t_h": 2})")); }) == Errc::ConfigError);
}

TEST_CASE("scan: output independent of thread count") {
    const char* text = R"({"hot": {"delta": 2.0, "omega": 2.0},
                           "grid": {"delta_l": {"min": -3, "max": 3, "steps": 31},
                                    "omega_l": {"min": 0, "max": 3, "steps": 30}},
                           "temperatures": {"t_h": 100.0, "t_l": 10.0}})";
    const ScanConfig cfg = config(text);
    const std::string one = run(Command::ScanDark, cfg, 1);
    CHECK(one == run(Command::ScanDark, cfg, 3));
    CHECK(one == run(Command::ScanDark, cfg, 8));
}

TEST_CASE("scan: validator flags inconsistent rows") {
    Table t;
    t.columns = {"t_h", "net_work", "heat_in", "efficiency", "pwc", "status"};
    t.rows = {{1.0, -0.5, 0.1, 0.3, true, std::string("ok")}};
    CHECK(validate(Command::WorkCurve, t).size() == 2);

    Table l;
    l.columns = {"scale", "t_l", "kappa_exact", "kappa_high_t", "relative_gap", "case_label", "status"};
    l.rows = {{10.0, 10.0, 2.0, 2.0, 1e-3, std::string("I"), std::string("ok")},
              {100.0, 100.0, 2.0, 2.0, 1e-2, std::string("I"), std::string("ok")}};
    CHECK(validate(Command::LimitStudy, l).size() == 1);
}
