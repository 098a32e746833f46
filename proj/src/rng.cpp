#include "srheat/rng.hpp"

#include <cmath>
#include <numbers>

namespace srheat {

namespace {

constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ull;
constexpr std::uint64_t kKeyIncrement = 0x9E3779B97F4A7C15ull;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    lo = static_cast<std::uint64_t>(prod);
}

}  // namespace

std::array<std::uint64_t, 2> rng_block(std::uint64_t key, std::uint64_t c0, std::uint64_t c1) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi, lo;
        mul_hi_lo(kMultiplier, c0, hi, lo);
        c0 = hi ^ key ^ c1;
        c1 = lo;
        key += kKeyIncrement;
    }
    return {c0, c1};
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

std::uint64_t RngStream::next_u64() {
    if (has_pending_) {
        has_pending_ = false;
        return pending_;
    }
    std::array<std::uint64_t, 2> block = rng_block(seed_, stream_, index_);
    ++index_;
    pending_ = block[1];
    has_pending_ = true;
    return block[0];
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
    double angle = 2.0 * std::numbers::pi * uniform();
    cached_gaussian_ = radius * std::sin(angle);
    has_cached_gaussian_ = true;
    return radius * std::cos(angle);
}

}  // namespace srheat
