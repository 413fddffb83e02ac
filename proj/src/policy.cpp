#include "mcsim/policy.hpp"

namespace mcsim {

ChannelId ChannelPolicy::select_tx_channel(NodeId node, ChannelId iface_tuned) const {
    switch (kind) {
    case PolicyKind::Default:
        return iface_tuned;
    case PolicyKind::ExplicitStamp:
        return explicit_channel;
    case PolicyKind::StaticMap: {
        auto it = node_map.find(node);
        return it != node_map.end() ? it->second : fallback;
    }
    case PolicyKind::HeaderDriven:
        // the mechanism acts on receivers; the transmit side is unchanged
        return iface_tuned;
    }
    return iface_tuned;
}

ChannelId ChannelPolicy::stamp_channel(NodeId node, ChannelId tx_channel) const {
    if (kind == PolicyKind::HeaderDriven) {
        auto it = stamps.find(node);
        if (it != stamps.end()) return it->second;
    }
    return tx_channel;
}

std::optional<ChannelId> ChannelPolicy::static_assignment(NodeId node) const {
    if (kind != PolicyKind::StaticMap) return std::nullopt;
    auto it = node_map.find(node);
    return it != node_map.end() ? it->second : fallback;
}

std::optional<ChannelId> ChannelPolicy::rx_retune(const Packet& pkt) const {
    if (kind == PolicyKind::HeaderDriven && pkt.type == PacketType::Hello) {
        return pkt.channel_index;
    }
    return std::nullopt;
}

} // namespace mcsim
