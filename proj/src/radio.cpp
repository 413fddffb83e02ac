#include "mcsim/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcsim {

Medium::Medium(EventQueue& engine, TraceWriter& trace, StatsCollector& stats,
               RadioParams params)
    : engine_(engine), trace_(trace), stats_(stats), params_(params) {
    if (params_.num_channels < 1) throw std::invalid_argument("num_channels < 1");
    if (params_.bitrate_bps <= 0) throw std::invalid_argument("bitrate <= 0");
}

NodeId Medium::add_node(Position pos, const std::vector<ChannelId>& initial_channels) {
    Node n;
    n.pos = pos;
    for (ChannelId ch : initial_channels) {
        if (ch < 0 || ch >= params_.num_channels) {
            throw std::invalid_argument("initial channel out of range");
        }
        Iface ifc;
        ifc.tuned = ch;
        n.ifaces.push_back(ifc);
    }
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
}

int Medium::num_ifaces(NodeId node) const {
    return static_cast<int>(nodes_.at(node).ifaces.size());
}

ChannelId Medium::tuned_channel(NodeId node, IfaceId iface) const {
    return nodes_.at(node).ifaces.at(iface).tuned;
}

bool Medium::is_idle(NodeId node, IfaceId iface) const {
    return busy_until(node, iface) <= engine_.now();
}

SimTime Medium::busy_until(NodeId node, IfaceId iface) const {
    const Iface& ifc = nodes_.at(node).ifaces.at(iface);
    SimTime t = ifc.tx_until;
    for (const Reception& rx : ifc.in_flight) t = std::max(t, rx.end);
    return t;
}

bool Medium::in_range(const Position& a, const Position& b, double range_m) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy <= range_m * range_m; // closed disk
}

bool Medium::in_range(NodeId a, NodeId b) const {
    return in_range(nodes_.at(a).pos, nodes_.at(b).pos, params_.radio_range_m);
}

SimTime Medium::tx_duration(std::uint32_t size_bytes) const {
    const std::int64_t bits = static_cast<std::int64_t>(size_bytes) * 8;
    return (bits * 1'000'000 + params_.bitrate_bps - 1) / params_.bitrate_bps;
}

void Medium::trace_pkt(TraceOp op, NodeId node, IfaceId iface, ChannelId channel,
                       const Packet& pkt, std::optional<DropReason> reason) {
    TraceRecord rec;
    rec.op = op;
    rec.time = engine_.now();
    rec.node = node;
    rec.iface = iface;
    rec.channel = channel;
    rec.pkt_type = pkt.type;
    rec.src = pkt.src;
    rec.seq = pkt.seq;
    rec.reason = reason;
    trace_.emit(rec);
}

bool Medium::transmit(NodeId node, IfaceId iface, Packet pkt, ChannelId channel) {
    if (channel < 0 || channel >= params_.num_channels) {
        throw std::invalid_argument("transmit channel out of range");
    }
    const SimTime now = engine_.now();
    Iface& tx_ifc = nodes_.at(node).ifaces.at(iface);

    pkt.sent_at = now;
    if (busy_until(node, iface) > now) {
        // half-duplex: the new transmission is dropped, not queued
        trace_pkt(TraceOp::Drop, node, iface, channel, pkt, DropReason::Busy);
        stats_.at(node, iface).tx_drops_busy++;
        return false;
    }

    const SimTime duration = tx_duration(pkt.size_bytes);
    tx_ifc.tx_until = now + duration;
    trace_pkt(TraceOp::Send, node, iface, channel, pkt);
    stats_.at(node, iface).sends++;

    for (NodeId rx_node = 0; rx_node < num_nodes(); ++rx_node) {
        if (rx_node == node) continue; // no self-delivery of broadcasts
        if (!in_range(node, rx_node)) continue;
        const Node& rn = nodes_[rx_node];
        for (IfaceId rx_iface = 0; rx_iface < static_cast<IfaceId>(rn.ifaces.size());
             ++rx_iface) {
            if (rn.ifaces[rx_iface].tuned != channel) continue;
            engine_.schedule(now + params_.propagation_delay,
                             [this, rx_node, rx_iface, pkt, channel, duration] {
                                 deliver_start(rx_node, rx_iface, pkt, channel,
                                               duration);
                             });
        }
    }
    return true;
}

void Medium::deliver_start(NodeId node, IfaceId iface, Packet pkt, ChannelId channel,
                           SimTime duration) {
    const SimTime now = engine_.now();
    Iface& ifc = nodes_.at(node).ifaces.at(iface);
    stats_.at(node, iface).deliver_starts++;

    if (ifc.tuned != channel) {
        // retuned away between send and arrival
        trace_pkt(TraceOp::Drop, node, iface, channel, pkt, DropReason::Mismatch);
        stats_.at(node, iface).drops_mismatch++;
        return;
    }
    if (ifc.tx_until > now) {
        trace_pkt(TraceOp::Drop, node, iface, channel, pkt, DropReason::Busy);
        stats_.at(node, iface).drops_busy++;
        return;
    }

    Reception rx;
    rx.id = next_rx_id_++;
    rx.pkt = pkt;
    rx.channel = channel;
    rx.start = now;
    rx.end = now + duration;
    // intervals are half-open: a frame ending exactly now does not overlap
    for (Reception& other : ifc.in_flight) {
        if (other.end <= now) continue;
        other.corrupted = true;
        other.reason = DropReason::Collision;
        rx.corrupted = true;
        rx.reason = DropReason::Collision;
    }
    const std::uint64_t id = rx.id;
    ifc.in_flight.push_back(rx);
    engine_.schedule(rx.end, [this, node, iface, id] { deliver_end(node, iface, id); });
}

void Medium::deliver_end(NodeId node, IfaceId iface, std::uint64_t rx_id) {
    Iface& ifc = nodes_.at(node).ifaces.at(iface);
    auto it = std::find_if(ifc.in_flight.begin(), ifc.in_flight.end(),
                           [rx_id](const Reception& r) { return r.id == rx_id; });
    if (it == ifc.in_flight.end()) return;
    Reception rx = *it;
    ifc.in_flight.erase(it);

    if (rx.corrupted) {
        trace_pkt(TraceOp::Drop, node, iface, rx.channel, rx.pkt, rx.reason);
        if (rx.reason == DropReason::Collision) {
            stats_.at(node, iface).drops_collision++;
        } else {
            stats_.at(node, iface).drops_mismatch++;
        }
        return;
    }
    trace_pkt(TraceOp::Recv, node, iface, rx.channel, rx.pkt);
    stats_.at(node, iface).receptions++;
    if (on_received) on_received(node, iface, rx.pkt);
}

void Medium::retune(NodeId node, IfaceId iface, ChannelId channel) {
    if (channel < 0 || channel >= params_.num_channels) {
        throw std::invalid_argument("retune channel out of range");
    }
    Iface& ifc = nodes_.at(node).ifaces.at(iface);
    if (ifc.tuned != channel) {
        ifc.tuned = channel;
        // a partial channel match is not a match
        for (Reception& rx : ifc.in_flight) {
            if (rx.end <= engine_.now()) continue;
            rx.corrupted = true;
            rx.reason = DropReason::Mismatch;
        }
    }
    TraceRecord rec;
    rec.op = TraceOp::Tune;
    rec.time = engine_.now();
    rec.node = node;
    rec.iface = iface;
    rec.channel = channel;
    rec.pkt_type = PacketType::Hello;
    rec.src = node; // sentinel packet fields
    rec.seq = 0;
    trace_.emit(rec);
    stats_.at(node, iface).retunes++;
}

void Medium::snapshot_tuning() {
    for (NodeId n = 0; n < num_nodes(); ++n) {
        for (IfaceId i = 0; i < num_ifaces(n); ++i) {
            TraceRecord rec;
            rec.op = TraceOp::Tune;
            rec.time = engine_.now();
            rec.node = n;
            rec.iface = i;
            rec.channel = nodes_[n].ifaces[i].tuned;
            rec.pkt_type = PacketType::Hello;
            rec.src = n;
            rec.seq = 0;
            trace_.emit(rec);
        }
    }
}

} // namespace mcsim
