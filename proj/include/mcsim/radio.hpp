#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mcsim/engine.hpp"
#include "mcsim/packet.hpp"
#include "mcsim/stats.hpp"
#include "mcsim/trace.hpp"
#include "mcsim/types.hpp"

namespace mcsim {

struct RadioParams {
    double radio_range_m = 250.0;      // closed disk
    std::int64_t bitrate_bps = 2'000'000;
    SimTime propagation_delay = 1;     // us, all in-range pairs
    ChannelId num_channels = 16;
};

/// The shared medium: node positions, interfaces, propagation, the
/// channel-match reception rule, the collision model, and retuning.
///
/// Reception rule: an interface receives a frame iff it is tuned to the
/// frame's channel for the whole transmission, was idle at delivery start,
/// and no other audible same-channel transmission overlaps it. Overlapping
/// same-channel frames destroy each other at the receiver (no capture).
/// Interfaces are half-duplex. A node never hears its own broadcasts.
class Medium {
public:
    Medium(EventQueue& engine, TraceWriter& trace, StatsCollector& stats,
           RadioParams params);

    /// Nodes must be added before the run starts.
    NodeId add_node(Position pos, const std::vector<ChannelId>& initial_channels);

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_ifaces(NodeId node) const;
    ChannelId num_channels() const { return params_.num_channels; }
    const Position& position(NodeId node) const { return nodes_.at(node).pos; }
    const RadioParams& params() const { return params_; }

    ChannelId tuned_channel(NodeId node, IfaceId iface) const;
    bool is_idle(NodeId node, IfaceId iface) const;
    /// Earliest time (>= now) the interface can be idle given what is
    /// already on the air; later arrivals can extend it.
    SimTime busy_until(NodeId node, IfaceId iface) const;

    static bool in_range(const Position& a, const Position& b, double range_m);
    bool in_range(NodeId a, NodeId b) const;

    SimTime tx_duration(std::uint32_t size_bytes) const;

    /// Broadcasts one frame on `channel`. Returns false (and records a
    /// BUSY drop) if the interface is already transmitting or receiving.
    /// Deliveries are scheduled for every other node's in-range interface
    /// currently tuned to `channel`.
    bool transmit(NodeId node, IfaceId iface, Packet pkt, ChannelId channel);

    /// Tunes the interface; any in-flight reception on it is corrupted if
    /// the channel actually changes. Emits a "tune" trace line.
    void retune(NodeId node, IfaceId iface, ChannelId channel);

    /// One "tune" line per interface recording the current tuning; emitted
    /// at t=0 so a trace is auditable on its own.
    void snapshot_tuning();

    /// Called for every successfully received packet.
    std::function<void(NodeId, IfaceId, const Packet&)> on_received;

private:
    struct Reception {
        std::uint64_t id;
        Packet pkt;
        ChannelId channel;
        SimTime start;
        SimTime end;
        bool corrupted = false;
        DropReason reason = DropReason::Collision;
    };
    struct Iface {
        ChannelId tuned = 0;
        SimTime tx_until = 0; // transmitting while now < tx_until
        std::vector<Reception> in_flight;
    };
    struct Node {
        Position pos;
        std::vector<Iface> ifaces;
    };

    void deliver_start(NodeId node, IfaceId iface, Packet pkt, ChannelId channel,
                       SimTime duration);
    void deliver_end(NodeId node, IfaceId iface, std::uint64_t rx_id);
    void trace_pkt(TraceOp op, NodeId node, IfaceId iface, ChannelId channel,
                   const Packet& pkt, std::optional<DropReason> reason = {});

    EventQueue& engine_;
    TraceWriter& trace_;
    StatsCollector& stats_;
    RadioParams params_;
    std::vector<Node> nodes_;
    std::uint64_t next_rx_id_ = 0;
};

} // namespace mcsim
