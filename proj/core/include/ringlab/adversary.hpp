#pragma once

#include "ringlab/core.hpp"
#include "ringlab/graph.hpp"
#include "ringlab/random.hpp"
#include "ringlab/samplers.hpp"
#include "ringlab/stats.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace ringlab {

enum class AdversaryKind { kTrivial, kCore, kMatchingCount };

std::string_view to_string(AdversaryKind kind) noexcept;
/// Accepts "trivial", "core", "matching_count".
std::optional<AdversaryKind> parse_adversary(std::string_view name) noexcept;

// Adversaries see the published graph only; the true matching is never passed in.

/// Smallest ring (lowest index on ties), uniformly random member.
Edge adversary_trivial(const TransactionGraph& graph, RandomSource& rng);

/// Ring with the fewest core members (lowest index on ties), uniformly
/// random member among its core edges.
Edge adversary_core(const TransactionGraph& graph, RandomSource& rng);

/// Edge contained in the most maximum matchings, lexicographically first
/// (user, ring) on ties. Exact per connected component: an edge's global count
/// is its component-local count times the other components' totals. Throws
/// kInstanceTooLarge when a component has more than `cap` users.
Edge adversary_matching_count(const TransactionGraph& graph, Index cap = kDefaultBruteForceCap);

Edge run_adversary(AdversaryKind kind, const TransactionGraph& graph, RandomSource& rng,
                   Index cap = kDefaultBruteForceCap);

struct ExperimentOutcome {
    Edge guessed_edge;
    bool success = false;
    bool graph_was_core_equal = false;
};

/// Corruption budget: floor(beta * |C|) uniformly chosen users per chunk.
struct BlackMarbleConfig {
    double beta = 0.0;
};

/// Throws kInvalidBeta unless 0 <= beta < 1.
void validate(const BlackMarbleConfig& marble);

/// Corrupted users, sorted. Consumes no randomness for chunks with a zero budget.
std::vector<Index> corrupt_users(const Partition& partition, const BlackMarbleConfig& marble,
                                 RandomSource& rng);

/// The admissibility predicate: |B ∩ C| <= beta * |C| for every chunk.
bool marble_admissible(const Partition& partition, const BlackMarbleConfig& marble,
                       const std::vector<Index>& corrupted);

/// Published graph with the corrupted users and the rings they signed
/// removed, plus index maps back to the full graph.
struct ReducedGraph {
    TransactionGraph graph;
    std::vector<Index> parent_user;
    std::vector<Index> parent_ring;
};

ReducedGraph remove_corrupted(const SampledGraph& sample, const std::vector<Index>& corrupted);

/// Passive experiment: all users sign, the adversary guesses one
/// signer-ring pair from the graph alone.
ExperimentOutcome run_experiment(const SamplerConfig& config, AdversaryKind adversary, RandomSource& rng,
                                 Index cap = kDefaultBruteForceCap);

/// Active variant: corrupt, sample over all users, then attack the graph
/// left after removing the corrupted users.
ExperimentOutcome run_experiment_black_marble(const SamplerConfig& config, const BlackMarbleConfig& marble,
                                              AdversaryKind adversary, RandomSource& rng,
                                              Index cap = kDefaultBruteForceCap);

struct CampaignResult {
    EstimateResult success;
    /// Fraction of attacked graphs that differ from their core.
    EstimateResult core_mismatch;
};

struct CampaignOptions {
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::optional<BlackMarbleConfig> marble;
    Index cap = kDefaultBruteForceCap;
};

/// Trial t draws from RandomSource(seed, t); results do not depend on threads.
CampaignResult run_campaign(const SamplerConfig& config, AdversaryKind adversary, const CampaignOptions& options);

EstimateResult estimate_success(const SamplerConfig& config, AdversaryKind adversary, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads = 1);

} // namespace ringlab
