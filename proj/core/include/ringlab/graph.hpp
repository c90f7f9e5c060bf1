#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace ringlab {

using Index = std::uint32_t;

/// A membership edge between a user and a ring.
struct Edge {
    Index user;
    Index ring;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Injective user <-> ring assignment, stored as one matched user per ring
/// slot. Rings without a partner hold `kUnmatched`.
class Matching {
public:
    static constexpr Index kUnmatched = ~Index{0};

    Matching() = default;
    explicit Matching(Index n_rings) : m_user_of_ring(n_rings, kUnmatched) {}

    /// Builds from explicit pairs; throws kIndexOutOfRange / kInvalidParams
    /// when a ring or user appears twice.
    static Matching from_pairs(Index n_rings, std::span<const Edge> pairs);

    Index n_rings() const noexcept { return static_cast<Index>(m_user_of_ring.size()); }
    Index user_of_ring(Index ring) const { return m_user_of_ring.at(ring); }
    void assign(Index ring, Index user) { m_user_of_ring.at(ring) = user; }

    /// Number of matched rings.
    Index size() const noexcept;
    /// Matched pairs sorted by ring index.
    std::vector<Edge> pairs() const;
    bool contains(Edge e) const noexcept
    {
        return e.ring < m_user_of_ring.size() && m_user_of_ring[e.ring] == e.user;
    }

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<Index> m_user_of_ring;
};

/// Bipartite users x rings graph admitting a matching that covers every ring.
///
/// Instances are immutable and always valid: every factory checks index
/// ranges, duplicate edges, empty rings and the existence of a ring-covering
/// matching, throwing `Error` otherwise.
class TransactionGraph {
public:
    /// Full validation (structure plus a maximum-matching check).
    static TransactionGraph create(Index n_users, Index n_rings, std::vector<Edge> edges);

    /// Validation when a ring-covering matching is already known, e.g. from a
    /// sampler. Runs in O(|E|); throws kNotATransactionGraph if `witness` is
    /// not a matching of this graph covering all rings.
    static TransactionGraph create_with_matching(Index n_users, Index n_rings,
                                                 std::vector<Edge> edges, const Matching& witness);

    Index n_users() const noexcept { return m_n_users; }
    Index n_rings() const noexcept { return m_n_rings; }
    std::size_t n_edges() const noexcept { return m_edges.size(); }
    bool balanced() const noexcept { return m_n_users == m_n_rings; }

    /// Sorted by (user, ring).
    std::span<const Edge> edges() const noexcept { return m_edges; }
    /// Sorted ring indices containing `user`.
    std::span<const Index> rings_of(Index user) const;
    /// Sorted user indices that are members of `ring`.
    std::span<const Index> members_of(Index ring) const;
    bool has_edge(Edge e) const noexcept;

    friend bool operator==(const TransactionGraph& a, const TransactionGraph& b)
    {
        return a.m_n_users == b.m_n_users && a.m_n_rings == b.m_n_rings && a.m_edges == b.m_edges;
    }

private:
    TransactionGraph(Index n_users, Index n_rings, std::vector<Edge> edges);

    Index m_n_users = 0;
    Index m_n_rings = 0;
    std::vector<Edge> m_edges;
    std::vector<std::size_t> m_user_offsets;
    std::vector<Index> m_user_rings;
    std::vector<std::size_t> m_ring_offsets;
    std::vector<Index> m_ring_users;
};

enum class MatchingStrategy {
    /// Single augmenting-path search per ring, rings ascending, members ascending.
    kAugmentingPath,
    /// Hopcroft-Karp phases of shortest augmenting paths.
    kHopcroftKarp,
};

/// A maximum-cardinality matching; deterministic for a fixed input and strategy.
Matching maximum_matching(const TransactionGraph& graph,
                          MatchingStrategy strategy = MatchingStrategy::kAugmentingPath);

/// Throws kMatchingNotMaximum unless `matching` is a matching of `graph`
/// covering every ring.
void require_full_matching(const TransactionGraph& graph, const Matching& matching);

/// Directed graph without self-loops or parallel edges, stored as CSR
/// out-adjacency with sorted successor lists.
class Digraph {
public:
    Digraph() = default;
    /// Throws kInvalidParams on self-loops, duplicates or out-of-range nodes.
    static Digraph from_edges(Index n_nodes, std::vector<std::pair<Index, Index>> edges);
    /// Builds from per-node in-neighbour lists (each duplicate-free, no self).
    /// Trusted path for samplers; checked in debug builds only.
    static Digraph from_in_neighbours(std::span<const std::vector<Index>> in_neighbours);

    Index n_nodes() const noexcept { return m_n_nodes; }
    std::size_t n_edges() const noexcept { return m_targets.size(); }
    std::span<const Index> successors(Index node) const
    {
        return {m_targets.data() + m_offsets[node], m_targets.data() + m_offsets[node + 1]};
    }
    bool has_edge(Index from, Index to) const;
    std::vector<std::pair<Index, Index>> edge_list() const;
    std::vector<Index> in_degrees() const;
    Digraph transpose() const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    Index m_n_nodes = 0;
    std::vector<std::size_t> m_offsets{0};
    std::vector<Index> m_targets;
};

/// Node relabelling used by the induced digraph: ring j's matched user becomes
/// node j; unmatched users follow in ascending user order.
struct InducedLabelling {
    std::vector<Index> node_of_user;
    std::vector<Index> user_of_node;
};

InducedLabelling induced_labelling(const TransactionGraph& graph, const Matching& matching);

/// Edge (i, j) iff the user at node i is a member of ring j and i != j.
Digraph induced_digraph(const TransactionGraph& graph, const Matching& matching);

struct SccResult {
    /// Each component sorted ascending; components ordered by smallest node.
    std::vector<std::vector<Index>> components;
    std::vector<Index> component_of;
};

/// Iterative Tarjan.
SccResult strongly_connected_components(const Digraph& digraph);

/// Double reachability from node 0; a single node counts as strongly connected.
bool is_strongly_connected(const Digraph& digraph);

/// Membership mask of every node on a directed path starting in `sources`
/// (sources included). Edge (i, j) is reachable from the set iff mask[i].
std::vector<bool> reachable_from(const Digraph& digraph, std::span<const Index> sources);

/// Disjoint cover of [0, n_users) by non-empty chunks.
class Partition {
public:
    static Partition create(Index n_users, std::vector<std::vector<Index>> chunks);
    /// Consecutive equal-size chunks; `chunk_size` must divide `n_users`.
    static Partition equal_chunks(Index n_users, Index chunk_size);
    static Partition single_chunk(Index n_users);

    Index n_users() const noexcept { return static_cast<Index>(m_chunk_of.size()); }
    std::size_t n_chunks() const noexcept { return m_chunks.size(); }
    std::span<const Index> chunk(std::size_t c) const { return m_chunks.at(c); }
    const std::vector<std::vector<Index>>& chunks() const noexcept { return m_chunks; }
    Index chunk_of(Index user) const { return m_chunk_of.at(user); }
    /// Position of `user` inside its chunk's member list.
    Index position_in_chunk(Index user) const { return m_position.at(user); }

private:
    std::vector<std::vector<Index>> m_chunks;
    std::vector<Index> m_chunk_of;
    std::vector<Index> m_position;
};

/// Chunk subgraph with maps back to the parent's indices.
struct ChunkGraph {
    TransactionGraph graph;
    std::vector<Index> parent_user;
    std::vector<Index> parent_ring;
};

/// Splits along `partition`; throws kRingCrossesChunks if any ring has
/// members in two chunks.
std::vector<ChunkGraph> partition_graph(const TransactionGraph& graph, const Partition& partition);

/// Users and rings in the same weakly connected piece of the bipartite graph.
struct Component {
    std::vector<Index> users;
    std::vector<Index> rings;
};

std::vector<Component> connected_components(const TransactionGraph& graph);

/// Restriction to the given users and rings (both sorted); result reindexed
/// in the given order. The sub-structure must itself be a transaction graph.
TransactionGraph induced_subgraph(const TransactionGraph& graph, std::span<const Index> users,
                                  std::span<const Index> rings);

/// G^M: users restricted to matched users, relabelled so user j matches ring j.
TransactionGraph upper_graph(const TransactionGraph& graph, const Matching& matching);

} // namespace ringlab
