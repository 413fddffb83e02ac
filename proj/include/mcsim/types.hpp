#pragma once

#include <cstdint>

namespace mcsim {

using NodeId = std::int32_t;
using IfaceId = std::int32_t;
using ChannelId = std::int32_t;

// Virtual time in integer microseconds. Integer arithmetic keeps runs
// bit-identical across platforms.
using SimTime = std::int64_t;

inline constexpr SimTime ms_to_us(std::int64_t ms) { return ms * 1000; }
inline constexpr SimTime s_to_us(std::int64_t s) { return s * 1'000'000; }

struct Position {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Position&) const = default;
};

} // namespace mcsim
