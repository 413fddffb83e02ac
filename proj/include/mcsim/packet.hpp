#pragma once

#include <cstdint>

#include "mcsim/types.hpp"

namespace mcsim {

enum class PacketType { Hello, Data };

/// Broadcast frame. channel_index carries the routing layer's channel
/// decision inside the header; receivers under the header-driven policy
/// retune to it.
struct Packet {
    PacketType type = PacketType::Hello;
    NodeId src = 0;
    std::uint32_t seq = 0;
    ChannelId channel_index = 0;
    SimTime sent_at = 0;
    std::uint32_t size_bytes = 64;
};

} // namespace mcsim
