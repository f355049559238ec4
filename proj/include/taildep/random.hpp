// random.hpp
//
// Counter-based random streams built on Philox4x32-10 (Salmon et al., 2011).
// A stream is addressed by a 64-bit key and a 64-bit stream id; the n-th
// draw of a stream is a pure function of (key, stream id, n). Bootstrap
// resamples and generated points each get their own stream, so results do
// not depend on evaluation order or thread count.

#ifndef TAILDEP_RANDOM_HPP
#define TAILDEP_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace taildep {

using PhiloxBlock = std::array<std::uint32_t, 4>;

/// Ten rounds of Philox4x32 on a 128-bit counter with a 64-bit key.
PhiloxBlock philox4x32_10(PhiloxBlock counter, std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to derive stream keys from (seed, tag).
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Key for the family of streams named by `tag` under `seed`.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag) noexcept;

class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t key, std::uint64_t stream) noexcept : key_(key), stream_(stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on (0, 1].
    double uniform_pos() noexcept;
    /// Uniform integer on [0, n) by 128-bit multiply; bias below n / 2^64.
    std::uint64_t below(std::uint64_t n) noexcept;
    /// Standard normal by Box-Muller (one variate per call).
    double normal() noexcept;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
    [[nodiscard]] std::uint64_t stream() const noexcept { return stream_; }
    [[nodiscard]] std::uint64_t position() const noexcept { return draws_; }

private:
    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t draws_{0};
    std::uint64_t buffered_{0};
    bool has_buffer_{false};
};

}  // namespace taildep

#endif  // TAILDEP_RANDOM_HPP
