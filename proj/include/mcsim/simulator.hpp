#pragma once

#include <memory>
#include <ostream>

#include "mcsim/engine.hpp"
#include "mcsim/hello.hpp"
#include "mcsim/radio.hpp"
#include "mcsim/scenario.hpp"
#include "mcsim/stats.hpp"
#include "mcsim/trace.hpp"

namespace mcsim {

/// Wires a scenario into a runnable simulation: engine, medium, policy,
/// hello protocol, trace and stats. One instance per run.
class Simulator {
public:
    /// Trace goes to config.trace_path (discarded when empty).
    explicit Simulator(const ScenarioConfig& config);
    /// Trace goes to an externally owned stream.
    Simulator(const ScenarioConfig& config, std::ostream& trace_sink);

    /// Runs to config.sim_duration and returns the summary. Call once.
    RunSummary run();

    EventQueue& engine() { return engine_; }
    Medium& medium() { return *medium_; }
    HelloProtocol& hello() { return *hello_; }
    StatsCollector& stats() { return stats_; }

private:
    void build(const ScenarioConfig& config);

    ScenarioConfig config_;
    EventQueue engine_;
    StatsCollector stats_;
    std::unique_ptr<TraceWriter> trace_;
    std::unique_ptr<Medium> medium_;
    std::unique_ptr<HelloProtocol> hello_;
};

} // namespace mcsim
