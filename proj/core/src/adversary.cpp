#include "ringlab/adversary.hpp"

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ringlab {

std::string_view to_string(AdversaryKind kind) noexcept
{
    switch (kind) {
    case AdversaryKind::kTrivial: return "trivial";
    case AdversaryKind::kCore: return "core";
    case AdversaryKind::kMatchingCount: return "matching_count";
    }
    return "unknown";
}

std::optional<AdversaryKind> parse_adversary(std::string_view name) noexcept
{
    if (name == "trivial") return AdversaryKind::kTrivial;
    if (name == "core") return AdversaryKind::kCore;
    if (name == "matching_count") return AdversaryKind::kMatchingCount;
    return std::nullopt;
}

namespace {

__extension__ using u128 = unsigned __int128;

void require_rings(const TransactionGraph& graph)
{
    if (graph.n_rings() == 0) throw Error(ErrorKind::kInvalidParams, "graph has no rings to attack");
}

} // namespace

Edge adversary_trivial(const TransactionGraph& graph, RandomSource& rng)
{
    require_rings(graph);
    Index best = 0;
    for (Index r = 1; r < graph.n_rings(); ++r) {
        if (graph.members_of(r).size() < graph.members_of(best).size()) best = r;
    }
    auto members = graph.members_of(best);
    return {members[rng.below(members.size())], best};
}

Edge adversary_core(const TransactionGraph& graph, RandomSource& rng)
{
    require_rings(graph);
    const CoreReport report = core_report(graph);
    Index best = 0;
    for (Index r = 1; r < graph.n_rings(); ++r) {
        if (report.per_ring_core_degree[r] < report.per_ring_core_degree[best]) best = r;
    }
    std::vector<Index> candidates;
    for (const Edge& e : report.core_edges) {
        if (e.ring == best) candidates.push_back(e.user);
    }
    return {candidates[rng.below(candidates.size())], best};
}

Edge adversary_matching_count(const TransactionGraph& graph, Index cap)
{
    require_rings(graph);
    // Best edge so far, scored by the fraction local_count / component_total.
    Edge best{};
    std::uint64_t best_num = 0;
    std::uint64_t best_den = 1;
    bool have = false;

    for (const Component& comp : connected_components(graph)) {
        if (comp.rings.empty()) continue;
        if (comp.users.size() > cap) {
            throw Error(ErrorKind::kInstanceTooLarge,
                        "component with " + std::to_string(comp.users.size()) +
                            " users exceeds the exhaustive cap of " + std::to_string(cap));
        }
        const TransactionGraph sub = induced_subgraph(graph, comp.users, comp.rings);
        const std::vector<Matching> all = enumerate_maximum_matchings(sub, cap);
        const std::uint64_t total = all.size();

        auto local_edges = sub.edges();
        std::vector<std::uint64_t> count(local_edges.size(), 0);
        for (const Matching& m : all) {
            for (const Edge& e : m.pairs()) {
                const auto it = std::lower_bound(local_edges.begin(), local_edges.end(), e);
                ++count[static_cast<std::size_t>(it - local_edges.begin())];
            }
        }
        for (std::size_t i = 0; i < local_edges.size(); ++i) {
            const Edge parent{comp.users[local_edges[i].user], comp.rings[local_edges[i].ring]};
            const auto lhs = static_cast<u128>(count[i]) * best_den;
            const auto rhs = static_cast<u128>(best_num) * total;
            if (!have || lhs > rhs || (lhs == rhs && parent < best)) {
                best = parent;
                best_num = count[i];
                best_den = total;
                have = true;
            }
        }
    }
    return best;
}

Edge run_adversary(AdversaryKind kind, const TransactionGraph& graph, RandomSource& rng, Index cap)
{
    switch (kind) {
    case AdversaryKind::kTrivial: return adversary_trivial(graph, rng);
    case AdversaryKind::kCore: return adversary_core(graph, rng);
    case AdversaryKind::kMatchingCount: return adversary_matching_count(graph, cap);
    }
    throw Error(ErrorKind::kInvalidParams, "unknown adversary");
}

void validate(const BlackMarbleConfig& marble)
{
    if (!(marble.beta >= 0.0 && marble.beta < 1.0)) {
        throw Error(ErrorKind::kInvalidBeta, "beta must lie in [0, 1)");
    }
}

namespace {

Index marble_budget(double beta, std::size_t chunk_size)
{
    return static_cast<Index>(std::floor(beta * static_cast<double>(chunk_size)));
}

} // namespace

std::vector<Index> corrupt_users(const Partition& partition, const BlackMarbleConfig& marble, RandomSource& rng)
{
    validate(marble);
    std::vector<Index> corrupted;
    for (std::size_t c = 0; c < partition.n_chunks(); ++c) {
        auto chunk = partition.chunk(c);
        const Index budget = marble_budget(marble.beta, chunk.size());
        for (Index pos : sample_subset(static_cast<Index>(chunk.size()), budget, rng)) {
            corrupted.push_back(chunk[pos]);
        }
    }
    std::sort(corrupted.begin(), corrupted.end());
    return corrupted;
}

bool marble_admissible(const Partition& partition, const BlackMarbleConfig& marble,
                       const std::vector<Index>& corrupted)
{
    std::vector<std::size_t> per_chunk(partition.n_chunks(), 0);
    for (Index u : corrupted) ++per_chunk[partition.chunk_of(u)];
    for (std::size_t c = 0; c < partition.n_chunks(); ++c) {
        if (static_cast<double>(per_chunk[c]) > marble.beta * static_cast<double>(partition.chunk(c).size())) {
            return false;
        }
    }
    return true;
}

ReducedGraph remove_corrupted(const SampledGraph& sample, const std::vector<Index>& corrupted)
{
    const TransactionGraph& g = sample.graph;
    constexpr Index kGone = Matching::kUnmatched;
    std::vector<Index> local_user(g.n_users(), 0);
    for (Index u : corrupted) local_user.at(u) = kGone;

    ReducedGraph out{TransactionGraph::create(0, 0, {}), {}, {}};
    for (Index u = 0; u < g.n_users(); ++u) {
        if (local_user[u] == kGone) continue;
        local_user[u] = static_cast<Index>(out.parent_user.size());
        out.parent_user.push_back(u);
    }
    std::vector<Edge> edges;
    std::vector<Edge> witness;
    for (Index r = 0; r < g.n_rings(); ++r) {
        const Index signer = sample.matching.user_of_ring(r);
        if (local_user[signer] == kGone) continue;
        const auto local_ring = static_cast<Index>(out.parent_ring.size());
        out.parent_ring.push_back(r);
        witness.push_back({local_user[signer], local_ring});
        for (Index u : g.members_of(r)) {
            if (local_user[u] != kGone) edges.push_back({local_user[u], local_ring});
        }
    }
    const auto n_rings = static_cast<Index>(out.parent_ring.size());
    out.graph = TransactionGraph::create_with_matching(static_cast<Index>(out.parent_user.size()), n_rings,
                                                       std::move(edges), Matching::from_pairs(n_rings, witness));
    return out;
}

ExperimentOutcome run_experiment(const SamplerConfig& config, AdversaryKind adversary, RandomSource& rng,
                                 Index cap)
{
    const SampledGraph sample = sample_transaction_graph(config, config.n_users(), rng);
    ExperimentOutcome out;
    out.guessed_edge = run_adversary(adversary, sample.graph, rng, cap);
    out.success = sample.matching.contains(out.guessed_edge);
    out.graph_was_core_equal = is_core_equal(sample.graph);
    return out;
}

ExperimentOutcome run_experiment_black_marble(const SamplerConfig& config, const BlackMarbleConfig& marble,
                                              AdversaryKind adversary, RandomSource& rng, Index cap)
{
    const std::vector<Index> corrupted = corrupt_users(config.partition(), marble, rng);
    const SampledGraph sample = sample_transaction_graph(config, config.n_users(), rng);
    const ReducedGraph reduced = remove_corrupted(sample, corrupted);

    const Edge local = run_adversary(adversary, reduced.graph, rng, cap);
    ExperimentOutcome out;
    out.guessed_edge = {reduced.parent_user[local.user], reduced.parent_ring[local.ring]};
    out.success = sample.matching.contains(out.guessed_edge) &&
                  marble_admissible(config.partition(), marble, corrupted);
    out.graph_was_core_equal = is_core_equal(reduced.graph);
    return out;
}

namespace {

struct CampaignCounts {
    std::uint64_t successes = 0;
    std::uint64_t mismatches = 0;

    CampaignCounts& operator+=(const CampaignCounts& o)
    {
        successes += o.successes;
        mismatches += o.mismatches;
        return *this;
    }
};

} // namespace

CampaignResult run_campaign(const SamplerConfig& config, AdversaryKind adversary, const CampaignOptions& options)
{
    if (options.trials == 0) throw Error(ErrorKind::kInvalidParams, "campaign needs at least one trial");
    if (options.marble) validate(*options.marble);
    const auto counts = parallel_accumulate<CampaignCounts>(
        options.trials, options.threads, [&](std::uint64_t t, CampaignCounts& acc) {
            RandomSource rng(options.seed, t);
            const ExperimentOutcome o =
                options.marble ? run_experiment_black_marble(config, *options.marble, adversary, rng, options.cap)
                               : run_experiment(config, adversary, rng, options.cap);
            acc.successes += o.success ? 1 : 0;
            acc.mismatches += o.graph_was_core_equal ? 0 : 1;
        });
    return {make_estimate(counts.successes, options.trials), make_estimate(counts.mismatches, options.trials)};
}

EstimateResult estimate_success(const SamplerConfig& config, AdversaryKind adversary, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads)
{
    CampaignOptions options;
    options.trials = trials;
    options.seed = seed;
    options.threads = threads;
    return run_campaign(config, adversary, options).success;
}

} // namespace ringlab
