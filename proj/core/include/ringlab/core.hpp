#pragma once

#include "ringlab/graph.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ringlab {

/// Default user cap for the exhaustive routines below.
inline constexpr Index kDefaultBruteForceCap = 10;

/// Dulmage-Mendelsohn core: the subgraph formed by the union of all maximum
/// matchings. Computed from one maximum matching M via the induced digraph
/// id_M(G): an edge (u_i, r_j) survives iff it is in M, its endpoints i and j
/// share an SCC, or node i is reachable from an unmatched user's node.
TransactionGraph core(const TransactionGraph& graph,
                      MatchingStrategy strategy = MatchingStrategy::kAugmentingPath);

/// Per-edge core membership, aligned with `graph.edges()`.
std::vector<bool> core_edge_mask(const TransactionGraph& graph,
                                 MatchingStrategy strategy = MatchingStrategy::kAugmentingPath);

bool is_core_equal(const TransactionGraph& graph);

struct CoreReport {
    std::vector<Edge> core_edges;
    std::vector<Edge> removed_edges;
    /// (ring, sole user left in the core), ascending by ring.
    std::vector<Edge> deanonymised_rings;
    std::vector<std::size_t> per_ring_core_degree;
};

CoreReport core_report(const TransactionGraph& graph);

/// All maximum matchings by exhaustive backtracking; rings ascending, users
/// ascending. Throws kInstanceTooLarge when n_users exceeds `cap`.
std::vector<Matching> enumerate_maximum_matchings(const TransactionGraph& graph,
                                                  Index cap = kDefaultBruteForceCap);

/// Reference core: union of every enumerated maximum matching.
TransactionGraph core_bruteforce_oracle(const TransactionGraph& graph, Index cap = kDefaultBruteForceCap);

} // namespace ringlab
