#pragma once

#include <cstdint>

namespace branchstop {

/// Counter-based pseudo-random stream (splitmix64). Each draw hashes an
/// internal counter, so streams keyed by (seed, stream_id) are independent
/// and reproducible regardless of execution order.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : state_(mix(seed + 0x9e3779b97f4a7c15ull * (stream_id + 1)) ^ mix(stream_id + 0x2545f4914f6cdd1dull)) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double next_uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace branchstop
