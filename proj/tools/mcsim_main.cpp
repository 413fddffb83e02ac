// mcsim command line: run scenarios, validate configs, audit traces.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcsim/scenario.hpp"
#include "mcsim/simulator.hpp"
#include "mcsim/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;
constexpr int kExitAuditViolations = 3;

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            std::optional<std::int64_t> duration_ms,
            std::optional<std::string> trace_path, const std::string& summary_format) {
    mcsim::ScenarioConfig config;
    try {
        config = mcsim::load_scenario_file(scenario_path);
    } catch (const mcsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    if (seed) config.seed = *seed;
    if (duration_ms) config.sim_duration = mcsim::ms_to_us(*duration_ms);
    if (trace_path) config.trace_path = *trace_path;

    try {
        const mcsim::RunSummary summary = mcsim::build_and_run(config);
        if (summary_format == "json-lines") {
            std::cout << mcsim::summary_to_json_lines(summary);
        } else {
            std::cout << mcsim::summary_to_text(summary);
        }
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
    try {
        mcsim::load_scenario_file(scenario_path);
    } catch (const mcsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    std::cout << "ok\n";
    return kExitOk;
}

int cmd_audit(const std::string& trace_path) {
    const mcsim::AuditReport report = mcsim::audit_trace_file(trace_path);
    for (const auto& v : report.violations) {
        std::cout << "line " << v.line_no << ": " << v.message << '\n';
    }
    std::cout << report.lines << " lines, " << report.violations.size()
              << " violations\n";
    return report.clean() ? kExitOk : kExitAuditViolations;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-channel multi-interface wireless network simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> duration_ms;
    std::optional<std::string> trace_path;
    std::string summary_format = "text";

    auto* run = app.add_subcommand("run", "run a scenario");
    run->add_option("scenario", scenario_path, "scenario file (JSON)")->required();
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--duration", duration_ms, "override sim duration (ms)");
    run->add_option("--trace", trace_path, "override the trace output path");
    run->add_option("--summary", summary_format, "summary format")
        ->check(CLI::IsMember({"text", "json-lines"}));

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "validate a scenario file");
    validate->add_option("scenario", validate_path, "scenario file (JSON)")->required();

    std::string audit_path;
    auto* audit = app.add_subcommand("audit", "audit a trace file");
    audit->add_option("trace", audit_path, "trace file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        return cmd_run(scenario_path, seed, duration_ms, trace_path, summary_format);
    }
    if (validate->parsed()) return cmd_validate(validate_path);
    if (audit->parsed()) return cmd_audit(audit_path);
    return kExitOk;
}
