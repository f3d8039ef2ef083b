// scan.hpp - config-driven parameter sweeps and their CSV/JSON emitters.
//
// Every command takes one JSON config document and produces either a table
// (one row per grid cell, row-major in declared axis order) or, for
// cycle-report, a single JSON document. Cells are evaluated in parallel and
// buffered, so output bytes never depend on the thread count.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qhe::scan {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

enum class Command { ScanRegion3, ScanDark, WorkCurve, LimitStudy, CycleReport };
enum class OutputFormat { Csv, Json };

std::optional<Command> parse_command(std::string_view name) noexcept;
std::string_view to_string(Command c) noexcept;

inline constexpr std::uint64_t kDefaultSeed = 42;

// A swept axis: steps >= 2 and min < max, or a single fixed value.
struct Axis {
    std::string name;
    double min{};
    double max{};
    std::size_t steps{1};

    double at(std::size_t i) const noexcept;
};

// Accepts {"min": a, "max": b, "steps": n} or a bare number.
Axis parse_axis(const Json& node, std::string name);

// Empty cell = undefined numeric.
using Cell = std::variant<std::monostate, double, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column(std::string_view name) const;  // throws std::out_of_range
};

struct RunOptions {
    std::optional<OutputFormat> format;  // overrides config "format"
    std::optional<std::uint64_t> seed;   // overrides config "seed"
    std::size_t threads{0};              // 0 = hardware concurrency
};

struct ScanConfig {
    Json doc;
    OutputFormat format{OutputFormat::Csv};
    bool format_explicit{false};
    std::uint64_t seed{kDefaultSeed};
    std::optional<std::string> output;  // config "output"
};

// Reads format/seed/output from the document and applies overrides.
// Throws Error{ConfigError} on malformed values.
ScanConfig resolve_config(Json doc, const RunOptions& options);

// Applies "a.b.c=value" overrides; value is parsed as JSON, else kept as a string.
void apply_override(Json& doc, std::string_view assignment);

Table run_scan_region3(const ScanConfig& cfg, std::size_t threads = 0);
Table run_scan_dark(const ScanConfig& cfg, std::size_t threads = 0);
Table run_work_curve(const ScanConfig& cfg, std::size_t threads = 0);
Table run_limit_study(const ScanConfig& cfg, std::size_t threads = 0);
OrderedJson run_cycle_report(const ScanConfig& cfg);

// Consistency of categorical labels within each row; one message per violation.
std::vector<std::string> validate(Command command, const Table& table);

std::string format_number(double x);
std::string to_csv(const Table& table);
std::string to_json(const Table& table, Command command, std::uint64_t seed);

// Runs a command end to end and returns the serialized document. Throws
// Error{ConfigError} for bad configs, Error{NumericFailure} when a root
// search is ambiguous or a validator check fails.
std::string run(Command command, const ScanConfig& cfg, std::size_t threads = 0);

}  // namespace qhe::scan
