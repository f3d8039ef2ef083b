#include "qhe/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qhe/cycle.hpp"
#include "qhe/dark_state.hpp"
#include "qhe/errors.hpp"
#include "qhe/spectrum.hpp"
#include "qhe/three_level.hpp"

namespace qhe::scan {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::ConfigError, what); }

const Json& require(const Json& node, const char* key, const std::string& where) {
    if (!node.is_object() || !node.contains(key)) config_error(where + ": missing \"" + key + "\"");
    return node.at(key);
}

double number(const Json& node, const std::string& where) {
    if (!node.is_number()) config_error(where + ": expected a number");
    const double x = node.get<double>();
    if (!std::isfinite(x)) config_error(where + ": expected a finite number");
    return x;
}

double number_at(const Json& node, const char* key, const std::string& where) {
    return number(require(node, key, where), where + "." + key);
}

double positive_at(const Json& node, const char* key, const std::string& where) {
    const double x = number_at(node, key, where);
    if (!(x > 0.0)) config_error(where + "." + key + ": must be positive");
    return x;
}

std::size_t count_at(const Json& node, const char* key, const std::string& where) {
    const Json& v = require(node, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        config_error(where + "." + key + ": expected a positive integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

// Evaluates fn(i) for i in [0, n) across threads; results land in index order.
template <class Fn>
std::vector<std::vector<Cell>> evaluate_rows(std::size_t n, std::size_t threads, Fn fn) {
    std::vector<std::vector<Cell>> rows(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(n, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
        return rows;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) rows[i] = fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

Cell maybe(const std::optional<double>& x) {
    if (x) return *x;
    return std::monostate{};
}

Cell text(std::string_view s) { return std::string(s); }

// Spectrum sources shared by work-curve, limit-study and cycle-report.
LevelSpectrum parse_spectrum(const Json& node, const std::string& where) {
    if (!node.is_object()) config_error(where + ": expected an object");
    try {
        if (node.contains("energies")) {
            return LevelSpectrum(node.at("energies").get<std::vector<double>>());
        }
        if (node.contains("spacings")) {
            const auto d = node.at("spacings").get<std::vector<double>>();
            const double ground = node.contains("ground") ? number_at(node, "ground", where) : 0.0;
            return from_spacings(d, ground);
        }
        if (node.contains("harmonic")) {
            const Json& h = node.at("harmonic");
            return family_spectrum(HarmonicLevels{number_at(h, "frequency", where + ".harmonic"),
                                                  count_at(h, "levels", where + ".harmonic")});
        }
        if (node.contains("box")) {
            const Json& b = node.at("box");
            return family_spectrum(
                BoxLevels{number_at(b, "width", where + ".box"), count_at(b, "levels", where + ".box")});
        }
        if (node.contains("dark_state")) {
            const Json& d = node.at("dark_state");
            const DarkStateParams p(number_at(d, "delta", where + ".dark_state"),
                                    number_at(d, "omega", where + ".dark_state"));
            if (!(p.omega > 0.0)) {
                throw Error(Errc::DegenerateSpacing, where + ": omega = 0 collapses the lower spacing");
            }
            const DarkStateSpectrum s = spectrum_closed_form(p);
            return LevelSpectrum({s.e_minus, s.e_zero, s.e_plus});
        }
    } catch (const Json::exception& ex) {
        config_error(where + ": " + ex.what());
    } catch (const Error& ex) {
        if (ex.code() == Errc::ConfigError || ex.code() == Errc::DegenerateSpacing) throw;
        config_error(where + ": " + ex.what());
    }
    config_error(where + ": expected one of energies, spacings, harmonic, box, dark_state");
}

DarkStateParams parse_dark_point(const Json& node, const std::string& where) {
    try {
        return DarkStateParams(number_at(node, "delta", where), number_at(node, "omega", where));
    } catch (const Error& ex) {
        if (ex.code() == Errc::ConfigError) throw;
        config_error(where + ": " + ex.what());
    }
}

struct ThreeLevelFields {
    std::optional<ShapeParams> shape;
    std::optional<double> theta;
    std::optional<double> kappa;
    CaseLabel label{CaseLabel::Boundary};
    RatioCoords coords;
    SolutionRegion region{SolutionRegion::Neither};
    bool looser{false};
    std::string status{"ok"};
};

ThreeLevelFields analyze(const SpacingEndpoints& e) {
    ThreeLevelFields f;
    f.label = classify_case(e);
    f.coords = ratio_coords(e);
    f.region = solution_region(f.coords);
    try {
        f.shape = shape_params(e);
    } catch (const Error&) {
        f.status = "xi_undefined";
        return f;
    }
    try {
        f.theta = theta(e);
    } catch (const Error&) {
        f.status = "theta_undefined";
        return f;
    }
    if (f.label == CaseLabel::I) {
        f.kappa = kappa_high_t(e);
        f.looser = beats_two_level(e, *f.kappa);
    } else {
        f.status = "not_case_I";
    }
    return f;
}

// Rows this close to a strict region boundary are tagged; the row predicates
// there are decided by rounding and the validator does not cross-check them.
constexpr double kBoundaryBand = 1e-9;

bool near(double a, double b) { return std::abs(a - b) <= kBoundaryBand * std::max({std::abs(a), std::abs(b), 1.0}); }

void tag_near_boundary(std::string& status) { status = status == "ok" ? "near_boundary" : status + ";near_boundary"; }

std::size_t product_of_steps(const std::vector<Axis>& axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.steps;
    return n;
}

// Row-major decomposition: the last axis varies fastest.
std::vector<double> coordinates(const std::vector<Axis>& axes, std::size_t index) {
    std::vector<double> out(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        out[k] = axes[k].at(index % axes[k].steps);
        index /= axes[k].steps;
    }
    return out;
}

std::string cell_string(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return {};
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return v;
            }
        },
        c);
}

OrderedJson cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> OrderedJson {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                return v;
            }
        },
        c);
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) noexcept {
    if (name == "scan-region3") return Command::ScanRegion3;
    if (name == "scan-dark") return Command::ScanDark;
    if (name == "work-curve") return Command::WorkCurve;
    if (name == "limit-study") return Command::LimitStudy;
    if (name == "cycle-report") return Command::CycleReport;
    return std::nullopt;
}

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::ScanRegion3: return "scan-region3";
        case Command::ScanDark: return "scan-dark";
        case Command::WorkCurve: return "work-curve";
        case Command::LimitStudy: return "limit-study";
        case Command::CycleReport: return "cycle-report";
    }
    return "?";
}

double Axis::at(std::size_t i) const noexcept {
    if (steps <= 1) return min;
    if (i + 1 == steps) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

Axis parse_axis(const Json& node, std::string name) {
    Axis a;
    a.name = std::move(name);
    if (node.is_number()) {
        a.min = a.max = number(node, a.name);
        a.steps = 1;
        return a;
    }
    a.min = number_at(node, "min", a.name);
    a.max = number_at(node, "max", a.name);
    a.steps = count_at(node, "steps", a.name);
    if (a.steps < 2) config_error(a.name + ": steps must be >= 2");
    if (!(a.min < a.max)) config_error(a.name + ": min must be < max");
    return a;
}

std::size_t Table::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("no column " + std::string(name));
    return static_cast<std::size_t>(it - columns.begin());
}

ScanConfig resolve_config(Json doc, const RunOptions& options) {
    if (!doc.is_object()) config_error("config: top level must be an object");
    ScanConfig cfg;
    if (doc.contains("format")) {
        const Json& f = doc.at("format");
        if (f == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (f == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            config_error("config.format: expected \"csv\" or \"json\"");
        }
    }
    if (doc.contains("seed")) {
        const Json& s = doc.at("seed");
        if (!s.is_number_unsigned()) config_error("config.seed: expected an unsigned integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("output")) {
        if (!doc.at("output").is_string()) config_error("config.output: expected a path string");
        cfg.output = doc.at("output").get<std::string>();
    }
    if (options.format) cfg.format = *options.format;
    cfg.format_explicit = doc.contains("format") || options.format.has_value();
    if (options.seed) cfg.seed = *options.seed;
    cfg.doc = std::move(doc);
    return cfg;
}

void apply_override(Json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) config_error("override: expected key=value");
    const std::string path(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));

    Json value = Json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    Json* node = &doc;
    std::stringstream keys(path);
    std::string key;
    std::vector<std::string> parts;
    while (std::getline(keys, key, '.')) parts.push_back(key);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object()) config_error("override: " + path + " crosses a non-object");
        node = &(*node)[parts[i]];
    }
    if (!node->is_object() && !node->is_null()) config_error("override: " + path + " crosses a non-object");
    (*node)[parts.back()] = std::move(value);
}

Table run_scan_region3(const ScanConfig& cfg, std::size_t threads) {
    const Json& grid = require(cfg.doc, "grid", "config");
    std::vector<Axis> axes{parse_axis(require(grid, "r1l", "grid"), "r1l"),
                           parse_axis(require(grid, "r2l", "grid"), "r2l"),
                           parse_axis(require(grid, "r2h", "grid"), "r2h")};
    for (const auto& a : axes) {
        if (!(a.min > 0.0)) config_error("grid." + a.name + ": ratios must be positive");
    }

    Table t;
    t.columns = {"r1l", "r2l", "r2h", "case_label", "case_one_presupposition", "region", "xi", "eta", "lam",
                 "theta", "kappa_high_t", "two_level_full", "two_level_sub", "looser", "status"};
    t.rows = evaluate_rows(product_of_steps(axes), threads, [&](std::size_t i) {
        const auto x = coordinates(axes, i);
        const SpacingEndpoints e(1.0, x[2], x[0], x[1]);
        ThreeLevelFields f = analyze(e);
        const RatioCoords rc{x[0], x[1], x[2]};
        if (near(rc.r1l, 1.0) || near(rc.r2h, rc.r2l) || near(rc.r2h + rc.r1l - rc.r2l, 1.0) ||
            near(rc.r2l, rc.r1l * rc.r2h)) {
            tag_near_boundary(f.status);
        }
        return std::vector<Cell>{
            x[0],
            x[1],
            x[2],
            text(to_string(f.label)),
            case_one_presupposition(rc),
            text(to_string(solution_region(rc))),
            f.shape ? Cell(f.shape->xi) : Cell{},
            f.shape ? Cell(f.shape->eta) : Cell(e.d1l() / e.dl()),
            f.shape ? Cell(f.shape->lam) : Cell(e.d1h() / e.dh()),
            maybe(f.theta),
            maybe(f.kappa),
            e.full_gap_ratio(),
            e.lower_gap_ratio(),
            f.looser,
            f.status,
        };
    });
    return t;
}

Table run_scan_dark(const ScanConfig& cfg, std::size_t threads) {
    const DarkStateParams hot = parse_dark_point(require(cfg.doc, "hot", "config"), "hot");
    if (!(hot.omega > 0.0)) config_error("hot.omega: must be positive");
    const Json& grid = require(cfg.doc, "grid", "config");
    std::vector<Axis> axes{parse_axis(require(grid, "delta_l", "grid"), "delta_l"),
                           parse_axis(require(grid, "omega_l", "grid"), "omega_l")};
    if (axes[1].min < 0.0) config_error("grid.omega_l: must be nonnegative");

    std::optional<std::pair<double, double>> temps;
    if (cfg.doc.contains("temperatures")) {
        const Json& tj = cfg.doc.at("temperatures");
        temps = {positive_at(tj, "t_h", "temperatures"), positive_at(tj, "t_l", "temperatures")};
    }

    Table t;
    t.columns = {"delta_l", "omega_l", "d1l", "d2l", "case_label", "case1_constraints", "in_solution1",
                 "in_solution2", "region", "kappa_high_t", "looser", "net_work", "pwc", "status"};
    t.rows = evaluate_rows(product_of_steps(axes), threads, [&](std::size_t i) {
        const auto x = coordinates(axes, i);
        const DarkStateParams cold(x[0], x[1]);
        const DarkStateSpectrum cs = spectrum_closed_form(cold);
        std::vector<Cell> row{x[0], x[1], cs.lower_gap(), cs.upper_gap()};
        if (!(cold.omega > 0.0)) {
            row.insert(row.end(), {text("Boundary"), false, false, false, text("Neither"), Cell{}, false,
                                   Cell{}, Cell{}, text("degenerate")});
            return row;
        }
        const SpacingEndpoints e = to_endpoints(hot, cold);
        ThreeLevelFields f = analyze(e);
        if (near(cold.delta, 0.0) || near(cold.delta, hot.delta) ||
            near(cold.omega * std::abs(hot.delta), hot.omega * std::abs(cold.delta))) {
            tag_near_boundary(f.status);
        }
        row.push_back(text(to_string(f.label)));
        row.push_back(case1_constraints(hot, cold));
        row.push_back(solution1_region(hot, cold));
        row.push_back(solution2_region(hot, cold));
        row.push_back(text(to_string(f.region)));
        row.push_back(maybe(f.kappa));
        row.push_back(f.looser);
        if (temps) {
            const double w = net_work(e.cycle(temps->first, temps->second));
            row.push_back(w);
            row.push_back(w > 0.0);
        } else {
            row.push_back(Cell{});
            row.push_back(Cell{});
        }
        row.push_back(f.status);
        return row;
    });
    return t;
}

Table run_work_curve(const ScanConfig& cfg, std::size_t threads) {
    const LevelSpectrum hot = parse_spectrum(require(cfg.doc, "hot", "config"), "hot");
    const LevelSpectrum cold = parse_spectrum(require(cfg.doc, "cold", "config"), "cold");
    if (hot.size() != cold.size()) config_error("hot/cold: spectra must have the same number of levels");
    const double t_cold = positive_at(cfg.doc, "t_l", "config");
    const Axis th = parse_axis(require(require(cfg.doc, "grid", "config"), "t_h", "grid"), "t_h");
    if (!(th.min > 0.0)) config_error("grid.t_h: temperatures must be positive");

    Table t;
    t.columns = {"t_h", "net_work", "heat_in", "efficiency", "pwc", "status"};
    t.rows = evaluate_rows(th.steps, threads, [&](std::size_t i) {
        const double t_hot = th.at(i);
        const CycleReport r = cycle_report(OttoCycle(hot, cold, t_hot, t_cold));
        return std::vector<Cell>{t_hot, r.net_work, r.heat_in, maybe(r.efficiency), r.pwc,
                                 text(r.efficiency ? "ok" : "efficiency_undefined")};
    });
    return t;
}

namespace {

SpacingEndpoints parse_endpoints(const Json& doc) {
    if (doc.contains("endpoints")) {
        const Json& e = doc.at("endpoints");
        try {
            return SpacingEndpoints(number_at(e, "d1h", "endpoints"), number_at(e, "d2h", "endpoints"),
                                    number_at(e, "d1l", "endpoints"), number_at(e, "d2l", "endpoints"));
        } catch (const Error& ex) {
            if (ex.code() == Errc::ConfigError) throw;
            config_error(std::string("endpoints: ") + ex.what());
        }
    }
    const LevelSpectrum hot = parse_spectrum(require(doc, "hot", "config"), "hot");
    const LevelSpectrum cold = parse_spectrum(require(doc, "cold", "config"), "cold");
    if (hot.size() != 3 || cold.size() != 3) config_error("hot/cold: limit-study needs 3-level spectra");
    return SpacingEndpoints::from_spectra(hot, cold);
}

}  // namespace

Table run_limit_study(const ScanConfig& cfg, std::size_t threads) {
    const SpacingEndpoints e = parse_endpoints(cfg.doc);
    const Json& ladder = require(cfg.doc, "ladder", "config");
    const double start = positive_at(ladder, "start", "ladder");
    const double factor = positive_at(ladder, "factor", "ladder");
    const std::size_t count = count_at(ladder, "count", "ladder");
    if (!(factor > 1.0)) config_error("ladder.factor: must exceed 1");

    const CaseLabel label = classify_case(e);
    std::optional<double> kappa_ht;
    if (label == CaseLabel::I) kappa_ht = kappa_high_t(e);

    Table t;
    t.columns = {"scale", "t_l", "kappa_exact", "kappa_high_t", "relative_gap", "case_label", "status"};
    t.rows = evaluate_rows(count, threads, [&](std::size_t i) {
        const double scale = start * std::pow(factor, static_cast<double>(i));
        const double t_cold = scale * e.dh();
        const ExactCriticalRatio exact = exact_critical_ratio(e, t_cold);
        if (exact.root.status == RootStatus::MultipleRoots) {
            throw Error(Errc::NumericFailure, "limit-study: multiple roots at T_l = " + format_number(t_cold));
        }
        std::vector<Cell> row{scale, t_cold};
        std::string status = "ok";
        if (exact.root.found()) {
            row.push_back(exact.ratio);
        } else {
            row.push_back(Cell{});
            status = "not_found";
        }
        row.push_back(maybe(kappa_ht));
        if (kappa_ht && exact.root.found()) {
            row.push_back(std::abs(exact.ratio - *kappa_ht) / *kappa_ht);
        } else {
            row.push_back(Cell{});
            if (!kappa_ht) status = status == "ok" ? "not_case_I" : status + ";not_case_I";
        }
        row.push_back(text(to_string(label)));
        row.push_back(status);
        return row;
    });
    return t;
}

OrderedJson run_cycle_report(const ScanConfig& cfg) {
    OrderedJson doc;
    doc["command"] = "cycle-report";
    doc["seed"] = cfg.seed;

    const double t_hot = positive_at(cfg.doc, "t_h", "config");
    const double t_cold = positive_at(cfg.doc, "t_l", "config");
    std::optional<LevelSpectrum> hot, cold;
    try {
        hot = parse_spectrum(require(cfg.doc, "hot", "config"), "hot");
        cold = parse_spectrum(require(cfg.doc, "cold", "config"), "cold");
    } catch (const Error& ex) {
        if (ex.code() != Errc::DegenerateSpacing) throw;
        doc["status"] = "degenerate_spacing";
        doc["message"] = ex.what();
        return doc;
    }
    if (hot->size() != cold->size()) config_error("hot/cold: spectra must have the same number of levels");

    const OttoCycle c(*hot, *cold, t_hot, t_cold);
    const CycleReport r = cycle_report(c);
    doc["status"] = "ok";
    doc["levels"] = c.levels();
    doc["t_h"] = t_hot;
    doc["t_l"] = t_cold;
    doc["hot_energies"] = std::vector<double>(hot->energies().begin(), hot->energies().end());
    doc["cold_energies"] = std::vector<double>(cold->energies().begin(), cold->energies().end());
    doc["net_work"] = r.net_work;
    doc["heat_in"] = r.heat_in;
    doc["heat_out"] = r.heat_out;
    doc["efficiency"] = r.efficiency ? OrderedJson(*r.efficiency) : OrderedJson(nullptr);
    doc["pwc"] = r.pwc;
    doc["entropy_hot"] = r.entropy_hot;
    doc["entropy_cold"] = r.entropy_cold;

    const CriticalTemperature crit = critical_hot_temperature(*hot, *cold, t_cold);
    OrderedJson cj;
    switch (crit.status) {
        case RootStatus::Found:
            cj["status"] = "found";
            cj["t_h"] = crit.t_hot;
            cj["ratio"] = crit.t_hot / t_cold;
            cj["direction"] = crit.direction == RootDirection::Rising ? "rising" : "falling";
            break;
        case RootStatus::NotFound: cj["status"] = "not_found"; break;
        case RootStatus::MultipleRoots: cj["status"] = "multiple_roots"; break;
    }
    doc["critical_hot_temperature"] = cj;

    const HighTThreshold ht = high_t_threshold(*hot, *cold);
    OrderedJson hj;
    hj["kind"] = to_string(ht.kind);
    if (ht.kind == ThresholdKind::Above || ht.kind == ThresholdKind::Below) hj["ratio"] = ht.ratio;
    doc["high_t_threshold"] = hj;

    if (c.levels() == 3) {
        const SpacingEndpoints e = SpacingEndpoints::from_spectra(*hot, *cold);
        const ThreeLevelFields f = analyze(e);
        OrderedJson tl;
        tl["spacings"] = {{"d1h", e.d1h()}, {"d2h", e.d2h()}, {"d1l", e.d1l()}, {"d2l", e.d2l()}};
        tl["case_label"] = to_string(f.label);
        if (f.shape) {
            tl["xi"] = f.shape->xi;
            tl["eta"] = f.shape->eta;
            tl["lam"] = f.shape->lam;
        } else {
            tl["xi"] = nullptr;
            tl["eta"] = e.d1l() / e.dl();
            tl["lam"] = e.d1h() / e.dh();
        }
        tl["theta"] = f.theta ? OrderedJson(*f.theta) : OrderedJson(nullptr);
        tl["kappa_high_t"] = f.kappa ? OrderedJson(*f.kappa) : OrderedJson(nullptr);
        tl["ratio_coords"] = {{"r1l", f.coords.r1l}, {"r2l", f.coords.r2l}, {"r2h", f.coords.r2h}};
        tl["region"] = to_string(f.region);
        tl["two_level_full"] = e.full_gap_ratio();
        tl["two_level_sub"] = e.lower_gap_ratio();
        tl["looser"] = f.looser;
        if (f.label == CaseLabel::II) {
            try {
                tl["case2_subcase"] = to_string(case2_subcase(e));
            } catch (const Error&) {
                tl["case2_subcase"] = "boundary";
            }
        }
        tl["status"] = f.status;
        doc["three_level"] = tl;
    }

    if (cfg.doc.at("hot").contains("dark_state") && cfg.doc.at("cold").contains("dark_state")) {
        const DarkStateParams hp = parse_dark_point(cfg.doc.at("hot").at("dark_state"), "hot.dark_state");
        const DarkStateParams cp = parse_dark_point(cfg.doc.at("cold").at("dark_state"), "cold.dark_state");
        doc["dark_state"] = {{"case1_constraints", case1_constraints(hp, cp)},
                             {"in_solution1", solution1_region(hp, cp)},
                             {"in_solution2", solution2_region(hp, cp)}};
    }
    return doc;
}

std::vector<std::string> validate(Command command, const Table& table) {
    std::vector<std::string> issues;
    auto flag = [&](std::size_t row, const std::string& what) {
        issues.push_back("row " + std::to_string(row) + ": " + what);
    };
    auto as_bool = [](const Cell& c) { return std::holds_alternative<bool>(c) && std::get<bool>(c); };
    auto as_text = [](const Cell& c) { return std::holds_alternative<std::string>(c) ? std::get<std::string>(c) : ""; };
    auto near_boundary = [&](const Cell& c) { return as_text(c).find("near_boundary") != std::string::npos; };

    switch (command) {
        case Command::ScanRegion3: {
            const auto region = table.column("region"), presup = table.column("case_one_presupposition"),
                       label = table.column("case_label"), looser = table.column("looser"),
                       th = table.column("theta"), status = table.column("status");
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                const auto& r = table.rows[i];
                if (near_boundary(r[status])) continue;
                const std::string reg = as_text(r[region]);
                if (reg != "Neither" && !as_bool(r[presup])) flag(i, "region without Case-I presupposition");
                if (as_bool(r[presup]) != (as_text(r[label]) == "I")) flag(i, "presupposition disagrees with case");
                if (as_bool(r[looser]) && reg != "SolutionI") flag(i, "looser outside Solution I");
                if (reg != "Neither" && std::holds_alternative<double>(r[th]) && !(std::get<double>(r[th]) < 1.0)) {
                    flag(i, "solution region with theta >= 1");
                }
            }
            break;
        }
        case Command::ScanDark: {
            const auto s1 = table.column("in_solution1"), s2 = table.column("in_solution2"),
                       c1 = table.column("case1_constraints"), label = table.column("case_label"),
                       region = table.column("region"), status = table.column("status");
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                const auto& r = table.rows[i];
                if (near_boundary(r[status])) continue;
                const bool case_one = as_text(r[label]) == "I";
                if (as_bool(r[c1]) != case_one) flag(i, "case1_constraints disagrees with case label");
                if (as_bool(r[s1]) && (!case_one || as_text(r[region]) != "SolutionI")) {
                    flag(i, "in_solution1 without Case I / Solution I");
                }
                if (as_bool(r[s2]) && (!case_one || as_text(r[region]) != "SolutionII")) {
                    flag(i, "in_solution2 without Case I / Solution II");
                }
                if (as_bool(r[s1]) && as_bool(r[s2])) flag(i, "both solution regions");
            }
            break;
        }
        case Command::WorkCurve: {
            const auto w = table.column("net_work"), pwc = table.column("pwc"), eff = table.column("efficiency");
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                const auto& r = table.rows[i];
                const bool positive = std::get<double>(r[w]) > 0.0;
                if (as_bool(r[pwc]) != positive) flag(i, "pwc disagrees with net_work sign");
                if (std::holds_alternative<double>(r[eff]) && !positive) flag(i, "efficiency without positive work");
            }
            break;
        }
        case Command::LimitStudy: {
            const auto gap = table.column("relative_gap"), label = table.column("case_label");
            std::optional<double> previous;
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                const auto& r = table.rows[i];
                if (as_text(r[label]) != "I" || !std::holds_alternative<double>(r[gap])) continue;
                const double g = std::get<double>(r[gap]);
                // Gaps at the bisection floor carry no ordering information.
                if (previous && g > *previous && g > 1e-9) flag(i, "relative gap increased along the ladder");
                previous = g;
            }
            break;
        }
        case Command::CycleReport: break;
    }
    return issues;
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        if (k) out += ',';
        out += table.columns[k];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += cell_string(row[k]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table, Command command, std::uint64_t seed) {
    OrderedJson doc;
    doc["command"] = to_string(command);
    doc["seed"] = seed;
    doc["columns"] = table.columns;
    OrderedJson rows = OrderedJson::array();
    for (const auto& row : table.rows) {
        OrderedJson obj = OrderedJson::object();
        for (std::size_t k = 0; k < row.size(); ++k) obj[table.columns[k]] = cell_json(row[k]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string run(Command command, const ScanConfig& cfg, std::size_t threads) {
    if (command == Command::CycleReport) {
        if (cfg.format == OutputFormat::Csv && cfg.format_explicit) {
            config_error("cycle-report: output is a single JSON document");
        }
        return run_cycle_report(cfg).dump(2) + "\n";
    }
    Table table;
    switch (command) {
        case Command::ScanRegion3: table = run_scan_region3(cfg, threads); break;
        case Command::ScanDark: table = run_scan_dark(cfg, threads); break;
        case Command::WorkCurve: table = run_work_curve(cfg, threads); break;
        case Command::LimitStudy: table = run_limit_study(cfg, threads); break;
        case Command::CycleReport: break;
    }
    if (const auto issues = validate(command, table); !issues.empty()) {
        throw Error(Errc::NumericFailure, "validator: " + issues.front());
    }
    return cfg.format == OutputFormat::Csv ? to_csv(table) : to_json(table, command, cfg.seed);
}

}  // namespace qhe::scan
