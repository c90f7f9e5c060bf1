#include "ringlab/core.hpp"
#include "ringlab/error.hpp"
#include "ringlab/samplers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace ringlab;

namespace {

double four_sigma(double p, int n) { return 4.0 * std::sqrt(p * (1 - p) / n); }

} // namespace

TEST(SamplerConfig, Validation)
{
    EXPECT_THROW(SamplerConfig::regular(Partition::equal_chunks(8, 4), 4), Error);
    EXPECT_NO_THROW(SamplerConfig::regular(Partition::equal_chunks(8, 4), 3));
    EXPECT_THROW(SamplerConfig::binomial(Partition::single_chunk(4), 1.5), Error);
    EXPECT_THROW(SamplerConfig::binomial(Partition::single_chunk(4), -0.1), Error);
    try {
        SamplerConfig::regular(Partition::single_chunk(3), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kInvalidConfig);
    }
}

TEST(SampleRing, RegularFullChunk)
{
    const auto config = SamplerConfig::regular(Partition::equal_chunks(12, 4), 3);
    RandomSource rng(1, 0);
    for (Index s = 0; s < 12; ++s) {
        const auto ring = sample_ring(config, s, rng);
        const auto chunk = config.partition().chunk(config.partition().chunk_of(s));
        EXPECT_EQ(ring, std::vector<Index>(chunk.begin(), chunk.end()));
    }
}

TEST(SampleRing, BinomialZeroIsSingleton)
{
    const auto config = SamplerConfig::binomial(Partition::equal_chunks(12, 6), 0.0);
    RandomSource rng(2, 0);
    for (Index s = 0; s < 12; ++s) EXPECT_EQ(sample_ring(config, s, rng), std::vector<Index>{s});
}

TEST(SampleRing, StaysInsideChunkAndContainsSigner)
{
    const auto partition = Partition::create(9, {{0, 4, 8}, {1, 2, 3, 5}, {6, 7}});
    const auto reg = SamplerConfig::regular(partition, 1);
    const auto bin = SamplerConfig::binomial(partition, 0.5);
    RandomSource rng(3, 0);
    for (int trial = 0; trial < 500; ++trial) {
        for (const auto* config : {&reg, &bin}) {
            const Index s = static_cast<Index>(rng.below(9));
            const auto ring = sample_ring(*config, s, rng);
            EXPECT_TRUE(std::is_sorted(ring.begin(), ring.end()));
            EXPECT_TRUE(std::binary_search(ring.begin(), ring.end(), s));
            for (Index u : ring) EXPECT_EQ(partition.chunk_of(u), partition.chunk_of(s));
            if (config == &reg) EXPECT_EQ(ring.size(), 2u);
        }
    }
}

TEST(SampleRing, RegularDecoysUniform)
{
    const auto config = SamplerConfig::regular(Partition::single_chunk(5), 2);
    RandomSource rng(4, 0);
    constexpr int kDraws = 100000;
    // Fixed signer: each of the C(4,2) decoy pairs has probability 1/6.
    std::map<std::vector<Index>, int> fixed;
    // Uniform signer: each of the C(5,2) pairs is the decoy set with
    // probability (3/5)(1/6) = 1/10.
    std::map<std::vector<Index>, int> any;
    for (int i = 0; i < kDraws; ++i) {
        auto ring = sample_ring(config, 2, rng);
        ring.erase(std::find(ring.begin(), ring.end(), 2u));
        ++fixed[ring];
        const auto s = static_cast<Index>(rng.below(5));
        ring = sample_ring(config, s, rng);
        ring.erase(std::find(ring.begin(), ring.end(), s));
        ++any[ring];
    }
    ASSERT_EQ(fixed.size(), 6u);
    for (const auto& [decoys, c] : fixed) {
        EXPECT_NEAR(static_cast<double>(c) / kDraws, 1.0 / 6, four_sigma(1.0 / 6, kDraws));
    }
    ASSERT_EQ(any.size(), 10u);
    for (const auto& [decoys, c] : any) EXPECT_NEAR(static_cast<double>(c) / kDraws, 0.1, four_sigma(0.1, kDraws));
}

TEST(SampleRing, BinomialSizeMoments)
{
    constexpr Index kChunk = 21;
    constexpr double kP = 0.3;
    const auto config = SamplerConfig::binomial(Partition::single_chunk(kChunk), kP);
    RandomSource rng(5, 0);
    constexpr int kDraws = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<int> member(kChunk, 0);
    for (int i = 0; i < kDraws; ++i) {
        const auto ring = sample_ring(config, 0, rng);
        const double d = static_cast<double>(ring.size()) - 1.0;
        sum += d;
        sum_sq += d * d;
        for (Index u : ring) ++member[u];
    }
    const double mean = sum / kDraws;
    const double var = sum_sq / kDraws - mean * mean;
    const double true_var = (kChunk - 1) * kP * (1 - kP);
    EXPECT_NEAR(mean, (kChunk - 1) * kP, 4 * std::sqrt(true_var / kDraws));
    EXPECT_NEAR(var, true_var, 0.03 * true_var);
    EXPECT_EQ(member[0], kDraws);
    for (Index u = 1; u < kChunk; ++u) EXPECT_NEAR(static_cast<double>(member[u]) / kDraws, kP, four_sigma(kP, kDraws));
}

TEST(SampleTransactionGraph, ZeroSigners)
{
    const auto config = SamplerConfig::regular(Partition::single_chunk(5), 2);
    RandomSource rng(6, 0);
    const auto s = sample_transaction_graph(config, 0, rng);
    EXPECT_EQ(s.graph.n_rings(), 0u);
    EXPECT_EQ(s.matching.size(), 0u);
}

TEST(SampleTransactionGraph, BicliquesWhenChunksAreRings)
{
    const auto config = SamplerConfig::regular(Partition::equal_chunks(20, 4), 3);
    RandomSource rng(7, 0);
    const auto s = sample_transaction_graph(config, 20, rng);
    EXPECT_EQ(s.graph.n_edges(), 20u * 4u);
    EXPECT_TRUE(is_core_equal(s.graph));
    for (Index r = 0; r < 20; ++r) {
        const auto members = s.graph.members_of(r);
        const Index c = config.partition().chunk_of(members.front());
        EXPECT_EQ(members.size(), 4u);
        for (Index u : members) EXPECT_EQ(config.partition().chunk_of(u), c);
    }
}

TEST(SampleTransactionGraph, ValidWithDistinctSigners)
{
    const auto config = SamplerConfig::binomial(Partition::equal_chunks(30, 10), 0.2);
    for (std::uint64_t t = 0; t < 200; ++t) {
        RandomSource rng(8, t);
        const Index m = static_cast<Index>(t % 31);
        const auto s = sample_transaction_graph(config, m, rng);
        EXPECT_EQ(s.graph.n_rings(), m);
        EXPECT_EQ(s.matching.size(), m);
        EXPECT_NO_THROW(require_full_matching(s.graph, s.matching));
        std::set<Index> signers;
        for (const Edge& e : s.matching.pairs()) signers.insert(e.user);
        EXPECT_EQ(signers.size(), m);
    }
}

TEST(SampleTransactionGraph, Deterministic)
{
    const auto config = SamplerConfig::regular(Partition::equal_chunks(16, 8), 3);
    RandomSource a(9, 5);
    RandomSource b(9, 5);
    const auto x = sample_transaction_graph(config, 16, a);
    const auto y = sample_transaction_graph(config, 16, b);
    EXPECT_EQ(x.graph, y.graph);
    EXPECT_EQ(x.matching, y.matching);
}

TEST(SampleTransactionGraph, InducedDigraphIsRegularModel)
{
    // Single chunk of 3, k = 1, m = n: the induced digraph should be uniform
    // over the 8 in-neighbour assignments.
    const auto config = SamplerConfig::regular(Partition::single_chunk(3), 1);
    constexpr int kDraws = 80000;
    std::map<std::vector<std::pair<Index, Index>>, int> counts;
    for (int t = 0; t < kDraws; ++t) {
        RandomSource rng(10, static_cast<std::uint64_t>(t));
        const auto s = sample_transaction_graph(config, 3, rng);
        const auto d = induced_digraph(s.graph, s.matching);
        for (Index v : d.in_degrees()) ASSERT_EQ(v, 1u);
        ++counts[d.edge_list()];
    }
    ASSERT_EQ(counts.size(), 8u);
    for (const auto& [edges, c] : counts) EXPECT_NEAR(static_cast<double>(c) / kDraws, 0.125, four_sigma(0.125, kDraws));
}

TEST(RegularDigraph, Examples)
{
    RandomSource rng(11, 0);
    const auto full = sample_regular_digraph(4, 5, rng);
    EXPECT_EQ(full.n_edges(), 20u);
    EXPECT_TRUE(is_strongly_connected(full));
    EXPECT_THROW(sample_regular_digraph(5, 5, rng), Error);
    for (int i = 0; i < 100; ++i) {
        const auto d = sample_regular_digraph(3, 10, rng);
        for (Index v : d.in_degrees()) EXPECT_EQ(v, 3u);
    }
}

TEST(RegularDigraph, UniformOverAssignments)
{
    RandomSource rng(12, 0);
    constexpr int kDraws = 80000;
    std::map<std::vector<std::pair<Index, Index>>, int> counts;
    for (int i = 0; i < kDraws; ++i) ++counts[sample_regular_digraph(1, 3, rng).edge_list()];
    ASSERT_EQ(counts.size(), 8u);
    for (const auto& [edges, c] : counts) EXPECT_NEAR(static_cast<double>(c) / kDraws, 0.125, four_sigma(0.125, kDraws));
}

TEST(BinomialDigraph, Extremes)
{
    RandomSource rng(13, 0);
    EXPECT_EQ(sample_binomial_digraph(1.0, 6, rng).n_edges(), 30u);
    EXPECT_EQ(sample_binomial_digraph(0.0, 6, rng).n_edges(), 0u);
    EXPECT_THROW(sample_binomial_digraph(1.1, 6, rng), Error);
}

TEST(BinomialDigraph, UniformOverAllDigraphsAtHalf)
{
    RandomSource rng(14, 0);
    constexpr int kDraws = 80000;
    std::map<std::vector<std::pair<Index, Index>>, int> counts;
    for (int i = 0; i < kDraws; ++i) ++counts[sample_binomial_digraph(0.5, 3, rng).edge_list()];
    ASSERT_EQ(counts.size(), 64u);
    const double p = 1.0 / 64;
    for (const auto& [edges, c] : counts) EXPECT_NEAR(static_cast<double>(c) / kDraws, p, four_sigma(p, kDraws));
}

TEST(BinomialDigraph, EdgeMarginals)
{
    RandomSource rng(15, 0);
    constexpr int kDraws = 20000;
    constexpr Index kN = 6;
    constexpr double kP = 0.2;
    std::map<std::pair<Index, Index>, int> counts;
    for (int i = 0; i < kDraws; ++i)
        for (auto e : sample_binomial_digraph(kP, kN, rng).edge_list()) ++counts[e];
    EXPECT_EQ(counts.size(), 30u);
    for (const auto& [e, c] : counts) EXPECT_NEAR(static_cast<double>(c) / kDraws, kP, four_sigma(kP, kDraws));
}
