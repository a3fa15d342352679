#include "phev/random_stream.hpp"

namespace phev {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id)
{
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream_id), hi(stream_id), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id))
{
}

}  // namespace phev
