#include "ringlab/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace ringlab;

TEST(Philox, KnownAnswers)
{
    using Block = std::array<std::uint32_t, 4>;
    EXPECT_EQ(RandomSource::philox({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(RandomSource::philox({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(RandomSource::philox({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomSource, Reproducible)
{
    RandomSource a(42, 7);
    RandomSource b(42, 7);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(a(), b());
}

TEST(RandomSource, StreamsAndSeedsDiffer)
{
    RandomSource base(1, 0);
    RandomSource other_stream(1, 1);
    RandomSource other_seed(2, 0);
    int same_stream = 0;
    int same_seed = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = base();
        same_stream += x == other_stream();
        same_seed += x == other_seed();
    }
    EXPECT_EQ(same_stream, 0);
    EXPECT_EQ(same_seed, 0);
}

TEST(RandomSource, BelowIsUniform)
{
    RandomSource rng(3, 0);
    constexpr int kBins = 7;
    constexpr int kDraws = 70000;
    std::array<int, kBins> counts{};
    for (int i = 0; i < kDraws; ++i) {
        const auto v = rng.below(kBins);
        ASSERT_LT(v, static_cast<std::uint64_t>(kBins));
        ++counts[v];
    }
    // Chi-squared with 6 degrees of freedom; 22.46 is the 0.999 quantile.
    double chi2 = 0.0;
    const double expected = static_cast<double>(kDraws) / kBins;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_LT(chi2, 22.46);
}

TEST(RandomSource, Uniform01Range)
{
    RandomSource rng(4, 0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Mean 1/2, sigma sqrt(1/12 / n).
    EXPECT_NEAR(sum / 100000, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST(SampleSubset, SortedDistinctInRange)
{
    RandomSource rng(5, 0);
    for (std::uint32_t n = 0; n < 20; ++n) {
        for (std::uint32_t k = 0; k <= n; ++k) {
            const auto s = sample_subset(n, k, rng);
            ASSERT_EQ(s.size(), k);
            EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
            EXPECT_EQ(std::set<std::uint32_t>(s.begin(), s.end()).size(), k);
            for (auto v : s) EXPECT_LT(v, n);
        }
    }
}

TEST(SampleSubset, ZeroDrawsNothing)
{
    RandomSource a(6, 0);
    RandomSource b(6, 0);
    EXPECT_TRUE(sample_subset(10, 0, a).empty());
    EXPECT_EQ(a(), b());
}

TEST(SampleSubset, AllSubsetsEquallyLikely)
{
    // Both the direct (k <= n/2) and complemented branches.
    for (std::uint32_t k : {2u, 4u}) {
        RandomSource rng(7, k);
        constexpr std::uint32_t kN = 6;
        constexpr int kDraws = 150000;
        std::map<std::vector<std::uint32_t>, int> counts;
        for (int i = 0; i < kDraws; ++i) ++counts[sample_subset(kN, k, rng)];
        ASSERT_EQ(counts.size(), 15u);
        const double p = 1.0 / 15.0;
        const double sigma = std::sqrt(p * (1 - p) / kDraws);
        for (const auto& [subset, c] : counts) EXPECT_NEAR(static_cast<double>(c) / kDraws, p, 4 * sigma);
    }
}

TEST(SampleBinomial, EdgeCases)
{
    RandomSource rng(8, 0);
    EXPECT_EQ(sample_binomial(10, 0.0, rng), 0u);
    EXPECT_EQ(sample_binomial(10, 1.0, rng), 10u);
    EXPECT_EQ(sample_binomial(0, 0.5, rng), 0u);
}

TEST(SampleBinomial, MeanAndVariance)
{
    for (double p : {0.05, 0.3, 0.5, 0.8}) {
        RandomSource rng(9, static_cast<std::uint64_t>(p * 100));
        constexpr std::uint32_t kTrials = 40;
        constexpr int kDraws = 100000;
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int i = 0; i < kDraws; ++i) {
            const double x = sample_binomial(kTrials, p, rng);
            ASSERT_LE(x, kTrials);
            sum += x;
            sum_sq += x * x;
        }
        const double mean = sum / kDraws;
        const double var = sum_sq / kDraws - mean * mean;
        const double true_var = kTrials * p * (1 - p);
        EXPECT_NEAR(mean, kTrials * p, 4 * std::sqrt(true_var / kDraws));
        EXPECT_NEAR(var, true_var, 0.03 * true_var);
    }
}

TEST(SampleBinomial, ExactDistributionSmall)
{
    RandomSource rng(10, 0);
    constexpr int kDraws = 200000;
    std::array<int, 4> counts{};
    for (int i = 0; i < kDraws; ++i) ++counts[sample_binomial(3, 0.3, rng)];
    const std::array<double, 4> pmf{0.343, 0.441, 0.189, 0.027};
    for (int x = 0; x < 4; ++x) {
        const double sigma = std::sqrt(pmf[x] * (1 - pmf[x]) / kDraws);
        EXPECT_NEAR(static_cast<double>(counts[x]) / kDraws, pmf[x], 4 * sigma);
    }
}
