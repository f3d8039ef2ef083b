// qhe - command-line front end for the Otto-cycle sweeps.
//
//   qhe <command> --config <path> [--out <path>] [--format csv|json] [--seed <u64>]
//
// Exit codes: 0 success, 2 config error, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhe/errors.hpp"
#include "qhe/scan.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

qhe::scan::Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qhe::Error(qhe::Errc::ConfigError, "cannot open config " + path);
    auto doc = qhe::scan::Json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw qhe::Error(qhe::Errc::ConfigError, "config " + path + " is not valid JSON");
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-level quantum Otto engine sweeps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::vector<std::string> overrides;

    const std::vector<std::pair<const char*, const char*>> commands{
        {"scan-region3", "Rasterize Case-I solution regions over ratio coordinates"},
        {"scan-dark", "Rasterize dark-state solution regions over the cold control point"},
        {"work-curve", "Net work, heat and efficiency along a hot-temperature grid"},
        {"limit-study", "Exact vs high-temperature critical ratio along a T_l ladder"},
        {"cycle-report", "Full report for a single cycle (JSON)"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON config document")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "Output path (default: config \"output\" or stdout)");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "Seed recorded with the output");
        sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
        sub->add_option("--set", overrides, "Override a config field: key.path=value");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    std::string name;
    for (CLI::App* sub : subs) {
        if (sub->parsed()) name = sub->get_name();
    }
    const auto command = qhe::scan::parse_command(name);
    const CLI::App* sub = app.get_subcommand(name);

    try {
        auto doc = load_config(config_path);
        for (const auto& o : overrides) qhe::scan::apply_override(doc, o);

        qhe::scan::RunOptions options;
        if (!format.empty()) {
            options.format = format == "csv" ? qhe::scan::OutputFormat::Csv : qhe::scan::OutputFormat::Json;
        }
        if (sub->count("--seed") > 0) options.seed = seed;
        const auto cfg = qhe::scan::resolve_config(std::move(doc), options);
        const std::string text = qhe::scan::run(*command, cfg, threads);

        const std::string target = !out_path.empty() ? out_path : cfg.output.value_or("");
        if (target.empty() || target == "-") {
            std::cout << text;
        } else {
            std::ofstream out(target, std::ios::binary);
            if (!out) throw qhe::Error(qhe::Errc::ConfigError, "cannot write " + target);
            out << text;
        }
    } catch (const qhe::Error& e) {
        std::cerr << "qhe " << name << ": " << qhe::to_string(e.code()) << ": " << e.what() << '\n';
        return e.code() == qhe::Errc::NumericFailure ? kExitNumeric : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "qhe " << name << ": internal error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}
