#include "ringlab/random.hpp"

#include <algorithm>
#include <cmath>

namespace ringlab {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept
{
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

} // namespace

std::array<std::uint32_t, 4> RandomSource::philox(std::array<std::uint32_t, 4> c,
                                                  std::array<std::uint32_t, 2> k) noexcept
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

std::uint32_t RandomSource::next32() noexcept
{
    if (m_pos == 4) {
        m_buffer = philox({static_cast<std::uint32_t>(m_block), static_cast<std::uint32_t>(m_block >> 32),
                           static_cast<std::uint32_t>(m_stream), static_cast<std::uint32_t>(m_stream >> 32)},
                          {static_cast<std::uint32_t>(m_seed), static_cast<std::uint32_t>(m_seed >> 32)});
        ++m_block;
        m_pos = 0;
    }
    return m_buffer[m_pos++];
}

std::uint64_t RandomSource::below(std::uint64_t bound) noexcept
{
    u128 product = static_cast<u128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            product = static_cast<u128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

double RandomSource::uniform01() noexcept
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::vector<std::uint32_t> sample_subset(std::uint32_t population, std::uint32_t k, RandomSource& rng)
{
    std::vector<std::uint32_t> out;
    if (k == 0) return out;
    if (k >= population) {
        out.resize(population);
        for (std::uint32_t i = 0; i < population; ++i) out[i] = i;
        return out;
    }
    const bool complement = k > population / 2;
    const std::uint32_t draw = complement ? population - k : k;

    // Floyd: one draw per element, membership checked against what is chosen.
    std::vector<std::uint32_t> chosen;
    chosen.reserve(draw);
    std::vector<bool> marker;
    const bool use_marker = draw > 32;
    if (use_marker) marker.assign(population, false);
    auto contains = [&](std::uint32_t v) {
        return use_marker ? static_cast<bool>(marker[v])
                          : std::find(chosen.begin(), chosen.end(), v) != chosen.end();
    };
    for (std::uint32_t j = population - draw; j < population; ++j) {
        const auto t = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(j) + 1));
        const std::uint32_t pick = contains(t) ? j : t;
        chosen.push_back(pick);
        if (use_marker) marker[pick] = true;
    }
    std::sort(chosen.begin(), chosen.end());
    if (!complement) return chosen;

    out.reserve(k);
    std::size_t ci = 0;
    for (std::uint32_t v = 0; v < population; ++v) {
        if (ci < chosen.size() && chosen[ci] == v) {
            ++ci;
        } else {
            out.push_back(v);
        }
    }
    return out;
}

std::uint32_t sample_binomial(std::uint32_t trials, double p, RandomSource& rng)
{
    if (trials == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    if (p > 0.5) return trials - sample_binomial(trials, 1.0 - p, rng);

    // Success positions are separated by Geometric(p) gaps.
    const double log_q = std::log1p(-p);
    std::uint32_t count = 0;
    double position = -1.0;
    while (true) {
        const double u = 1.0 - rng.uniform01(); // (0, 1]
        position += 1.0 + std::floor(std::log(u) / log_q);
        if (position >= static_cast<double>(trials)) break;
        ++count;
    }
    return count;
}

} // namespace ringlab
