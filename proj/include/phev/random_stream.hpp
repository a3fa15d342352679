#pragma once

#include <cstdint>
#include <random>

namespace phev {

/// A reproducible random number stream identified by (seed, stream_id).
///
/// Each stream owns a Mersenne Twister whose state is derived from both
/// words through std::seed_seq, so Monte Carlo workers can open streams by
/// index without coordinating.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform01() noexcept
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double standard_normal() { return normal_(engine_); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace phev
