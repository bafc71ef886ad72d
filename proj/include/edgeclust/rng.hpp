#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace edgeclust {

/// Reproducible random stream identified by (seed, stream_id).
///
/// The generator is xoshiro256** (Blackman & Vigna). Its 256-bit state is
/// filled by SplitMix64 from a key that mixes the seed and stream id, so the
/// same pair yields the same sequence on every platform. Child streams for
/// independent uses inside one episode come from substream().
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Deterministic child stream; does not advance this stream.
    [[nodiscard]] RngStream substream(std::uint64_t child) const noexcept;

    std::uint64_t next_u64() noexcept;
    result_type operator()() noexcept { return next_u64(); }
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    /// Uniform on [0, 1) with 53 bits of resolution. Consumes one draw.
    double uniform01() noexcept;
    /// Uniform on [lo, hi]. Consumes one draw.
    double uniform(double lo, double hi) noexcept;
    /// Uniform integer on [lo, hi]. Consumes one draw.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;
    /// True with probability p. Consumes one draw.
    bool bernoulli(double p) noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
};

/// SplitMix64 output function applied to `x + golden gamma`.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace edgeclust
