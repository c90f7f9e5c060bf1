#pragma once

#include "ringlab/graph.hpp"
#include "ringlab/random.hpp"

#include <variant>
#include <vector>

namespace ringlab {

/// Fixed-size rings: signer plus a uniform k-subset of the rest of its chunk.
struct RegularSampler {
    Index decoys;
};

/// Every other chunk member joins the ring independently with probability p.
struct BinomialSampler {
    double p;
};

using SamplerKind = std::variant<RegularSampler, BinomialSampler>;

/// A partitioning ring sampler. Immutable; validated on construction.
class SamplerConfig {
public:
    /// Throws kInvalidConfig unless k < |C| for every chunk C.
    static SamplerConfig regular(Partition partition, Index decoys);
    /// Throws kInvalidConfig unless 0 <= p <= 1.
    static SamplerConfig binomial(Partition partition, double p);

    const Partition& partition() const noexcept { return m_partition; }
    const SamplerKind& kind() const noexcept { return m_kind; }
    Index n_users() const noexcept { return m_partition.n_users(); }

private:
    SamplerConfig(Partition partition, SamplerKind kind)
        : m_partition(std::move(partition)), m_kind(kind)
    {
    }

    Partition m_partition;
    SamplerKind m_kind;
};

/// Ring for `signer`, sorted ascending; always contains the signer and lies
/// inside the signer's chunk.
std::vector<Index> sample_ring(const SamplerConfig& config, Index signer, RandomSource& rng);

struct SampledGraph {
    TransactionGraph graph;
    /// The true signer of each ring.
    Matching matching;
};

/// m signers drawn without replacement, each publishing one sampled ring;
/// ring j is signed by matching.user_of_ring(j).
SampledGraph sample_transaction_graph(const SamplerConfig& config, Index m, RandomSource& rng);

/// Uniform k-in-degree regular digraph on n nodes; requires k < n.
Digraph sample_regular_digraph(Index k, Index n, RandomSource& rng);

/// p-binomial digraph on n nodes: per node, in-degree ~ Binomial(n-1, p)
/// followed by a uniform subset of that size, which matches independent
/// per-edge inclusion exactly.
Digraph sample_binomial_digraph(double p, Index n, RandomSource& rng);

} // namespace ringlab
