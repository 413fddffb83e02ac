#include "mcsim/simulator.hpp"

#include <chrono>

namespace mcsim {

Simulator::Simulator(const ScenarioConfig& config) : config_(config) {
    if (config_.trace_path.empty()) {
        trace_ = std::make_unique<TraceWriter>();
    } else {
        trace_ = std::make_unique<TraceWriter>(config_.trace_path);
    }
    build(config_);
}

Simulator::Simulator(const ScenarioConfig& config, std::ostream& trace_sink)
    : config_(config), trace_(std::make_unique<TraceWriter>(trace_sink)) {
    build(config_);
}

void Simulator::build(const ScenarioConfig& config) {
    stats_.init(config.num_nodes, config.num_interfaces);

    RadioParams params;
    params.radio_range_m = config.radio_range_m;
    params.bitrate_bps = config.bitrate_bps;
    params.num_channels = config.num_channels;
    medium_ = std::make_unique<Medium>(engine_, *trace_, stats_, params);

    const auto positions = resolve_positions(config);
    const auto tuning = initial_tuning(config);
    for (NodeId n = 0; n < config.num_nodes; ++n) {
        medium_->add_node(positions[n], tuning[n]);
    }
    // t=0 tuning snapshot, so the trace is auditable without the config
    medium_->snapshot_tuning();

    hello_ = std::make_unique<HelloProtocol>(engine_, *medium_, config_.policy,
                                             stats_, config.hello, config.seed);
    medium_->on_received = [this](NodeId node, IfaceId iface, const Packet& pkt) {
        hello_->handle_received(node, iface, pkt);
    };

    hello_->start();
    for (const auto& b : config.data_broadcasts) {
        engine_.schedule(b.at, [this, b] {
            hello_->broadcast_all_channels(b.node, b.size_bytes);
        });
    }
}

RunSummary Simulator::run() {
    const auto wall_start = std::chrono::steady_clock::now();
    const std::uint64_t executed = engine_.run_until(config_.sim_duration);
    trace_->flush();

    RunSummary summary = make_summary(stats_);
    summary.sim_end = engine_.now();
    summary.executed_events = executed;
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
            .count();
    for (NodeId n = 0; n < config_.num_nodes; ++n) {
        for (const auto& [id, entry] : hello_->neighbors(n)) {
            summary.neighbors[n].push_back({entry.neighbor, entry.last_heard,
                                            entry.heard_on_iface,
                                            entry.heard_on_channel});
        }
    }
    return summary;
}

RunSummary build_and_run(const ScenarioConfig& config) {
    Simulator sim(config);
    return sim.run();
}

} // namespace mcsim
