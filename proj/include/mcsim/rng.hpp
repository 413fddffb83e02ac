#pragma once

#include <cstdint>
#include <random>

#include "mcsim/types.hpp"

namespace mcsim {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seedable generator with independent substreams. Each node gets its own
/// stream so adding a node does not perturb the draws of the others.
class NodeRng {
public:
    NodeRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t state = seed;
        std::uint64_t a = splitmix64(state);
        state ^= 0xD1B54A32D192ED03ULL * (stream + 1);
        std::uint64_t b = splitmix64(state);
        gen_.seed(a ^ (b << 1));
    }

    // inclusive bounds
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo >= hi) return lo;
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }

    double uniform_real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

private:
    std::mt19937_64 gen_;
};

// Stream ids: streams [0, num_nodes) are per-node Hello jitter; the
// position generator uses a stream outside the node range.
inline constexpr std::uint64_t kPositionStream = 0x100000000ULL;

} // namespace mcsim
