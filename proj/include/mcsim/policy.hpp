#pragma once

#include <map>
#include <optional>

#include "mcsim/packet.hpp"
#include "mcsim/types.hpp"

namespace mcsim {

enum class PolicyKind {
    Default,      // transmit on whatever the interface is tuned to
    ExplicitStamp,// every transmission forced onto one channel
    StaticMap,    // fixed node -> channel assignment installed at t=0
    HeaderDriven  // receivers adopt the channel named in the packet header
};

/// Channel-selection strategy, global for a scenario.
struct ChannelPolicy {
    PolicyKind kind = PolicyKind::Default;
    ChannelId explicit_channel = 0;          // ExplicitStamp
    std::map<NodeId, ChannelId> node_map;    // StaticMap
    ChannelId fallback = 0;                  // StaticMap
    // HeaderDriven: nodes listed here stamp this channel into their Hello
    // headers; unlisted nodes stamp the channel they transmit on.
    std::map<NodeId, ChannelId> stamps;

    bool operator==(const ChannelPolicy&) const = default;

    ChannelId select_tx_channel(NodeId node, ChannelId iface_tuned) const;

    /// Value written into the packet's channel_index field.
    ChannelId stamp_channel(NodeId node, ChannelId tx_channel) const;

    /// StaticMap: the channel every interface of `node` is tuned to at t=0.
    std::optional<ChannelId> static_assignment(NodeId node) const;

    /// Retune action for the interface that just received `pkt`.
    std::optional<ChannelId> rx_retune(const Packet& pkt) const;
};

} // namespace mcsim
