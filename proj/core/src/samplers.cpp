#include "ringlab/samplers.hpp"

#include "ringlab/error.hpp"

#include <algorithm>
#include <string>

namespace ringlab {

SamplerConfig SamplerConfig::regular(Partition partition, Index decoys)
{
    for (std::size_t c = 0; c < partition.n_chunks(); ++c) {
        if (decoys >= partition.chunk(c).size()) {
            throw Error(ErrorKind::kInvalidConfig,
                        "k=" + std::to_string(decoys) + " must be below every chunk size (chunk " +
                            std::to_string(c) + " has " + std::to_string(partition.chunk(c).size()) + ")");
        }
    }
    return SamplerConfig(std::move(partition), RegularSampler{decoys});
}

SamplerConfig SamplerConfig::binomial(Partition partition, double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kInvalidConfig, "p must lie in [0, 1]");
    return SamplerConfig(std::move(partition), BinomialSampler{p});
}

std::vector<Index> sample_ring(const SamplerConfig& config, Index signer, RandomSource& rng)
{
    const Partition& partition = config.partition();
    if (signer >= partition.n_users()) {
        throw Error(ErrorKind::kIndexOutOfRange, "signer " + std::to_string(signer));
    }
    auto chunk = partition.chunk(partition.chunk_of(signer));
    const Index self = partition.position_in_chunk(signer);
    const auto others = static_cast<Index>(chunk.size() - 1);

    const Index n_decoys = std::visit(
        [&](const auto& kind) -> Index {
            using T = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<T, RegularSampler>) {
                return kind.decoys;
            } else {
                return sample_binomial(others, kind.p, rng);
            }
        },
        config.kind());

    // Positions among the chunk with the signer removed, shifted back past it.
    std::vector<Index> ring;
    ring.reserve(n_decoys + 1);
    bool placed = false;
    for (Index pos : sample_subset(others, n_decoys, rng)) {
        const Index real = pos >= self ? pos + 1 : pos;
        if (!placed && real > self) {
            ring.push_back(signer);
            placed = true;
        }
        ring.push_back(chunk[real]);
    }
    if (!placed) ring.push_back(signer);
    return ring;
}

SampledGraph sample_transaction_graph(const SamplerConfig& config, Index m, RandomSource& rng)
{
    const Index n_users = config.n_users();
    if (m > n_users) throw Error(ErrorKind::kInvalidParams, "more signers than users");

    std::vector<Index> unsigned_users(n_users);
    for (Index u = 0; u < n_users; ++u) unsigned_users[u] = u;
    std::vector<Edge> edges;
    Matching matching(m);
    for (Index j = 0; j < m; ++j) {
        const auto pick = static_cast<std::size_t>(rng.below(unsigned_users.size()));
        const Index signer = unsigned_users[pick];
        unsigned_users[pick] = unsigned_users.back();
        unsigned_users.pop_back();
        for (Index u : sample_ring(config, signer, rng)) edges.push_back({u, j});
        matching.assign(j, signer);
    }
    auto graph = TransactionGraph::create_with_matching(n_users, m, std::move(edges), matching);
    return {std::move(graph), std::move(matching)};
}

Digraph sample_regular_digraph(Index k, Index n, RandomSource& rng)
{
    if (k >= n) throw Error(ErrorKind::kInvalidParams, "regular digraph needs k < n");
    std::vector<std::vector<Index>> in(n);
    for (Index j = 0; j < n; ++j) {
        in[j] = sample_subset(n - 1, k, rng);
        for (Index& i : in[j]) i += i >= j ? 1 : 0;
    }
    return Digraph::from_in_neighbours(in);
}

Digraph sample_binomial_digraph(double p, Index n, RandomSource& rng)
{
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kInvalidParams, "p must lie in [0, 1]");
    std::vector<std::vector<Index>> in(n);
    for (Index j = 0; j < n; ++j) {
        if (n == 1) break;
        const Index degree = sample_binomial(n - 1, p, rng);
        in[j] = sample_subset(n - 1, degree, rng);
        for (Index& i : in[j]) i += i >= j ? 1 : 0;
    }
    return Digraph::from_in_neighbours(in);
}

} // namespace ringlab
