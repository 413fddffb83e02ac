#include "mcsim/hello.hpp"

#include <stdexcept>

namespace mcsim {

HelloProtocol::HelloProtocol(EventQueue& engine, Medium& medium,
                             const ChannelPolicy& policy, StatsCollector& stats,
                             HelloConfig config, std::uint64_t seed)
    : engine_(engine), medium_(medium), policy_(policy), stats_(stats),
      config_(config) {
    if (config_.interval <= 0) throw std::invalid_argument("hello interval <= 0");
    if (config_.allowed_hello_loss < 1) {
        throw std::invalid_argument("allowed_hello_loss < 1");
    }
    per_node_.reserve(medium_.num_nodes());
    for (NodeId n = 0; n < medium_.num_nodes(); ++n) {
        per_node_.push_back(NodeState{NodeRng(seed, static_cast<std::uint64_t>(n)),
                                      0, 0, 0, {}});
    }
}

void HelloProtocol::start() {
    if (!config_.enabled) return;
    for (NodeId n = 0; n < medium_.num_nodes(); ++n) {
        const SimTime jitter = per_node_[n].rng.uniform_int(0, config_.jitter_max);
        engine_.schedule(engine_.now() + jitter, [this, n] { on_timer(n); });
    }
}

void HelloProtocol::on_timer(NodeId node) {
    per_node_[node].firings++;
    send_hello(node);
    const SimTime jitter = per_node_[node].rng.uniform_int(0, config_.jitter_max);
    engine_.schedule(engine_.now() + config_.interval + jitter,
                     [this, node] { on_timer(node); });
}

bool HelloProtocol::send_hello(NodeId node) {
    if (!config_.enabled) return false;
    NodeState& st = per_node_[node];
    const std::uint32_t seq = st.next_hello_seq++;
    const SimTime now = engine_.now();
    const SimTime slot = medium_.tx_duration(config_.hello_size_bytes);
    for (IfaceId i = 0; i < medium_.num_ifaces(node); ++i) {
        const ChannelId tuned = medium_.tuned_channel(node, i);
        const ChannelId tx_ch = policy_.select_tx_channel(node, tuned);
        Packet pkt;
        pkt.type = PacketType::Hello;
        pkt.src = node;
        pkt.seq = seq;
        pkt.channel_index = policy_.stamp_channel(node, tx_ch);
        pkt.size_bytes = config_.hello_size_bytes;
        transmit_when_idle(node, i, pkt, tx_ch, now + i * slot);
    }
    return true;
}

void HelloProtocol::transmit_when_idle(NodeId node, IfaceId iface, Packet pkt,
                                       ChannelId channel, SimTime not_before) {
    engine_.schedule(not_before, [this, node, iface, pkt, channel] {
        const SimTime free_at = medium_.busy_until(node, iface);
        if (free_at > engine_.now()) {
            transmit_when_idle(node, iface, pkt, channel, free_at);
            return;
        }
        medium_.transmit(node, iface, pkt, channel);
    });
}

void HelloProtocol::broadcast_all_channels(NodeId node, std::uint32_t payload_bytes) {
    NodeState& st = per_node_[node];
    const std::uint32_t seq = st.next_data_seq++;
    const SimTime now = engine_.now();
    const SimTime slot = medium_.tx_duration(payload_bytes);
    const int ni = medium_.num_ifaces(node);
    for (ChannelId ch = 0; ch < medium_.num_channels(); ++ch) {
        const IfaceId iface = ch % ni;
        const ChannelId round = ch / ni;
        Packet pkt;
        pkt.type = PacketType::Data;
        pkt.src = node;
        pkt.seq = seq;
        pkt.channel_index = ch;
        pkt.size_bytes = payload_bytes;
        transmit_when_idle(node, iface, pkt, ch, now + round * slot);
    }
}

void HelloProtocol::refresh_neighbor(NodeId node, IfaceId iface, const Packet& pkt) {
    NodeState& st = per_node_[node];
    const SimTime now = engine_.now();
    auto it = st.table.find(pkt.src);
    if (it != st.table.end() && it->second.last_seq == pkt.seq) {
        // same beacon heard again on another interface
        stats_.at(node, iface).duplicates++;
        return;
    }
    if (it == st.table.end()) {
        it = st.table.emplace(pkt.src, NeighborEntry{}).first;
        it->second.neighbor = pkt.src;
    } else {
        engine_.cancel(it->second.expiry);
    }
    NeighborEntry& entry = it->second;
    entry.last_heard = now;
    entry.heard_on_iface = iface;
    entry.heard_on_channel = medium_.tuned_channel(node, iface);
    entry.last_seq = pkt.seq;
    const NodeId src = pkt.src;
    entry.expiry = engine_.schedule(now + config_.expiry_window(), [this, node, src] {
        per_node_[node].table.erase(src);
    });
}

void HelloProtocol::handle_received(NodeId node, IfaceId iface, const Packet& pkt) {
    if (pkt.type == PacketType::Hello) {
        refresh_neighbor(node, iface, pkt);
        if (auto target = policy_.rx_retune(pkt)) {
            medium_.retune(node, iface, *target);
        }
    }
}

} // namespace mcsim
