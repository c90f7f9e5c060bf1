#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace ringlab {

/// Counter-based generator (Philox4x32-10). The 64-bit seed is the key and
/// the 64-bit stream id occupies the upper half of the counter, so every
/// (seed, stream) pair names an independent, reproducible sequence. Campaigns
/// give trial t its own stream, which makes results independent of how trials
/// are scheduled across threads.
class RandomSource {
public:
    using result_type = std::uint64_t;

    RandomSource(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : m_seed(seed), m_stream(stream_id)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t lo = next32();
        return (static_cast<std::uint64_t>(next32()) << 32) | lo;
    }

    std::uint64_t seed() const noexcept { return m_seed; }
    std::uint64_t stream_id() const noexcept { return m_stream; }

    /// Uniform in [0, bound); bound > 0. Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) noexcept;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() noexcept;
    bool bernoulli(double p) noexcept { return uniform01() < p; }

    /// Raw Philox4x32-10 block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) noexcept;

private:
    std::uint32_t next32() noexcept;

    std::uint64_t m_seed;
    std::uint64_t m_stream;
    std::uint64_t m_block = 0;
    std::array<std::uint32_t, 4> m_buffer{};
    unsigned m_pos = 4;
};

/// Uniform k-subset of [0, population), sorted ascending (Floyd's algorithm,
/// complement taken when k > population / 2). Draws nothing when k == 0.
std::vector<std::uint32_t> sample_subset(std::uint32_t population, std::uint32_t k, RandomSource& rng);

/// Binomial(trials, p) by geometric gap skipping; O(trials * min(p, 1-p)) expected.
std::uint32_t sample_binomial(std::uint32_t trials, double p, RandomSource& rng);

} // namespace ringlab
