#include "edgeclust/rng.hpp"

#include <bit>
#include <cmath>

namespace edgeclust {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

__extension__ using uint128 = unsigned __int128;

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    std::uint64_t a = seed;
    std::uint64_t b = stream_id ^ 0xD1B54A32D192ED03ULL;
    return splitmix64(a) ^ std::rotl(splitmix64(b), 23);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept : seed_(seed), stream_id_(stream_id) {
    std::uint64_t sm = stream_key(seed, stream_id);
    for (auto& word : state_) {
        word = splitmix64(sm);
    }
    // All-zero state is a fixed point of xoshiro.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = 1;
    }
}

RngStream RngStream::substream(std::uint64_t child) const noexcept {
    return RngStream(stream_key(seed_, stream_id_), child);
}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RngStream::uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) noexcept {
    // 53-bit draw scaled to the closed interval.
    const double u = static_cast<double>(next_u64() >> 11) / static_cast<double>((1ULL << 53) - 1);
    return lo + u * (hi - lo);
}

std::uint64_t RngStream::uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept {
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) {
        return next_u64();
    }
    // Multiply-shift (Lemire) without the rejection step: bias is below 2^-64 * span.
    const uint128 wide = static_cast<uint128>(next_u64()) * (span + 1);
    return lo + static_cast<std::uint64_t>(wide >> 64);
}

bool RngStream::bernoulli(double p) noexcept { return uniform01() < p; }

}  // namespace edgeclust
