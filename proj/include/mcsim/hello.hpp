#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mcsim/engine.hpp"
#include "mcsim/policy.hpp"
#include "mcsim/radio.hpp"
#include "mcsim/rng.hpp"
#include "mcsim/stats.hpp"

namespace mcsim {

struct HelloConfig {
    bool enabled = true;
    SimTime interval = 1'000'000;   // us
    SimTime jitter_max = 100'000;   // us, uniform [0, jitter_max]
    int allowed_hello_loss = 3;
    std::uint32_t hello_size_bytes = 64;

    bool operator==(const HelloConfig&) const = default;

    SimTime expiry_window() const { return interval * allowed_hello_loss; }
};

struct NeighborEntry {
    NodeId neighbor = 0;
    SimTime last_heard = 0;
    IfaceId heard_on_iface = 0;
    ChannelId heard_on_channel = 0;
    std::uint32_t last_seq = 0;
    EventQueue::Handle expiry;
};

/// Periodic Hello beaconing replicated over every interface of a node,
/// reception handling with duplicate suppression, neighbor-table expiry,
/// and the all-channel broadcast.
class HelloProtocol {
public:
    HelloProtocol(EventQueue& engine, Medium& medium, const ChannelPolicy& policy,
                  StatsCollector& stats, HelloConfig config, std::uint64_t seed);

    /// Schedules the first Hello timer for every node at t = jitter.
    /// No-op when hellos are disabled.
    void start();

    /// One Hello firing: exactly one copy per interface, channel chosen by
    /// the active policy, copies spaced one transmission apart so copies of
    /// the same beacon cannot destroy each other on a shared channel. A copy
    /// whose interface is busy waits for it to go idle instead of being
    /// dropped. Returns false without transmitting when hellos are disabled.
    bool send_hello(NodeId node);

    /// Transmits one copy of a data payload on every channel, assigned to
    /// interfaces round-robin in ceil(num_channels / num_interfaces) rounds.
    void broadcast_all_channels(NodeId node, std::uint32_t payload_bytes);

    /// Wired to Medium::on_received by the simulator.
    void handle_received(NodeId node, IfaceId iface, const Packet& pkt);

    const std::map<NodeId, NeighborEntry>& neighbors(NodeId node) const {
        return per_node_.at(node).table;
    }
    std::uint64_t timer_firings(NodeId node) const {
        return per_node_.at(node).firings;
    }
    const HelloConfig& config() const { return config_; }

private:
    struct NodeState {
        NodeRng rng;
        std::uint32_t next_hello_seq = 0;
        std::uint32_t next_data_seq = 0;
        std::uint64_t firings = 0;
        std::map<NodeId, NeighborEntry> table;
    };

    void on_timer(NodeId node);
    void transmit_when_idle(NodeId node, IfaceId iface, Packet pkt,
                            ChannelId channel, SimTime not_before);
    void refresh_neighbor(NodeId node, IfaceId iface, const Packet& pkt);

    EventQueue& engine_;
    Medium& medium_;
    const ChannelPolicy& policy_;
    StatsCollector& stats_;
    HelloConfig config_;
    std::vector<NodeState> per_node_;
};

} // namespace mcsim
