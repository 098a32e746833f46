#pragma once

#include <array>
#include <cstdint>

namespace srheat {

// The underlying 128-bit counter-based block function (10-round Philox-style
// bijection), exposed for the known-answer regression tests.
std::array<std::uint64_t, 2> rng_block(std::uint64_t key, std::uint64_t c0, std::uint64_t c1);

// Counter-based random stream: every output is a pure function of
// (seed, stream, draw index), so any sample can be produced on any worker,
// in any order, on any platform, with identical bits.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();      // [0, 1), 53-bit resolution
    double uniform_pos();  // (0, 1], safe under log
    double gaussian();     // standard normal, Box-Muller pair-cached

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
    std::uint64_t pending_ = 0;
    bool has_pending_ = false;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

}  // namespace srheat
