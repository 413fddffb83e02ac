#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcsim/hello.hpp"
#include "mcsim/policy.hpp"
#include "mcsim/stats.hpp"
#include "mcsim/types.hpp"

namespace mcsim {

/// A scenario document failed validation; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PositionSpec {
    enum class Layout { Explicit, Grid, Random };
    Layout layout = Layout::Grid;
    std::vector<Position> coords; // Explicit
    double spacing_m = 100.0;     // Grid: square grid, row-major from (0,0)
    double width_m = 500.0;       // Random: uniform in [0,width] x [0,height]
    double height_m = 500.0;

    bool operator==(const PositionSpec&) const = default;
};

struct InitialChannels {
    ChannelId default_channel = 0;
    // per-node override, one channel per interface
    std::map<NodeId, std::vector<ChannelId>> overrides;

    bool operator==(const InitialChannels&) const = default;
};

struct DataBroadcastSpec {
    NodeId node = 0;
    SimTime at = 0; // us
    std::uint32_t size_bytes = 64;

    bool operator==(const DataBroadcastSpec&) const = default;
};

/// Full description of one run. Defaults follow the simulated system:
/// 3 interfaces per node, 16 channels, 250 m range, 2 Mb/s.
struct ScenarioConfig {
    int num_nodes = 1;
    int num_interfaces = 3;
    ChannelId num_channels = 16;
    double radio_range_m = 250.0;
    std::int64_t bitrate_bps = 2'000'000;
    SimTime sim_duration = 10'000'000; // us
    std::uint64_t seed = 0;
    PositionSpec positions;
    HelloConfig hello;
    ChannelPolicy policy;
    InitialChannels initial_channels;
    std::vector<DataBroadcastSpec> data_broadcasts;
    std::string trace_path; // empty = discard

    bool operator==(const ScenarioConfig&) const = default;
};

/// Parses and validates a scenario document (JSON). Strict: unknown keys
/// are errors. Throws ConfigError.
ScenarioConfig load_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);

/// Inverse of load_scenario: load(serialize(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

/// Concrete node positions (grid/random specs expanded; random uses a
/// dedicated substream of the config seed).
std::vector<Position> resolve_positions(const ScenarioConfig& config);

/// Per-node, per-interface tuning at t=0: configured initial channels with
/// the static-map policy assignment applied on top.
std::vector<std::vector<ChannelId>> initial_tuning(const ScenarioConfig& config);

/// Channel-aware ideal neighbor relation: (listener, heard) is ideal iff
/// the pair is in range and some transmit channel of `heard` matches some
/// t=0 tuned channel of `listener`. Header-driven scenarios are judged by
/// their t=0 tuning.
NeighborRelation ideal_neighbor_relation(const ScenarioConfig& config);

/// Builds a simulator from the config, runs it to sim_duration, flushes
/// the trace, and returns the summary. Throws std::runtime_error on
/// runtime failures (for example an unwritable trace path).
RunSummary build_and_run(const ScenarioConfig& config);

} // namespace mcsim
