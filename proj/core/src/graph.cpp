#include "ringlab/graph.hpp"

#include "ringlab/error.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <string>

namespace ringlab {

namespace {

constexpr Index kNone = Matching::kUnmatched;

std::string edge_str(Edge e)
{
    return "(" + std::to_string(e.user) + "," + std::to_string(e.ring) + ")";
}

// Range, duplicate and empty-ring checks; sorts `edges` by (user, ring).
void check_structure(Index n_users, Index n_rings, std::vector<Edge>& edges)
{
    if (n_rings > n_users) {
        throw Error(ErrorKind::kNotATransactionGraph,
                    "more rings (" + std::to_string(n_rings) + ") than users (" +
                        std::to_string(n_users) + ")");
    }
    for (const Edge& e : edges) {
        if (e.user >= n_users || e.ring >= n_rings) {
            throw Error(ErrorKind::kIndexOutOfRange, "edge " + edge_str(e) + " out of range");
        }
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw Error(ErrorKind::kDuplicateEdge, "duplicate edge " + edge_str(*dup));
    }
    std::vector<bool> seen(n_rings, false);
    for (const Edge& e : edges) seen[e.ring] = true;
    for (Index r = 0; r < n_rings; ++r) {
        if (!seen[r]) throw Error(ErrorKind::kEmptyRing, "EmptyRing at ring " + std::to_string(r));
    }
}

} // namespace

Matching Matching::from_pairs(Index n_rings, std::span<const Edge> pairs)
{
    Matching m(n_rings);
    std::vector<Index> users;
    users.reserve(pairs.size());
    for (const Edge& e : pairs) {
        if (e.ring >= n_rings) {
            throw Error(ErrorKind::kIndexOutOfRange, "matched ring out of range " + edge_str(e));
        }
        if (m.m_user_of_ring[e.ring] != kUnmatched) {
            throw Error(ErrorKind::kInvalidParams, "ring matched twice " + edge_str(e));
        }
        m.m_user_of_ring[e.ring] = e.user;
        users.push_back(e.user);
    }
    std::sort(users.begin(), users.end());
    if (std::adjacent_find(users.begin(), users.end()) != users.end()) {
        throw Error(ErrorKind::kInvalidParams, "user matched twice");
    }
    return m;
}

Index Matching::size() const noexcept
{
    return static_cast<Index>(
        std::count_if(m_user_of_ring.begin(), m_user_of_ring.end(), [](Index u) { return u != kUnmatched; }));
}

std::vector<Edge> Matching::pairs() const
{
    std::vector<Edge> out;
    for (Index r = 0; r < n_rings(); ++r) {
        if (m_user_of_ring[r] != kUnmatched) out.push_back({m_user_of_ring[r], r});
    }
    return out;
}

TransactionGraph::TransactionGraph(Index n_users, Index n_rings, std::vector<Edge> edges)
    : m_n_users(n_users), m_n_rings(n_rings), m_edges(std::move(edges))
{
    m_user_offsets.assign(n_users + 1, 0);
    m_ring_offsets.assign(n_rings + 1, 0);
    for (const Edge& e : m_edges) {
        ++m_user_offsets[e.user + 1];
        ++m_ring_offsets[e.ring + 1];
    }
    std::partial_sum(m_user_offsets.begin(), m_user_offsets.end(), m_user_offsets.begin());
    std::partial_sum(m_ring_offsets.begin(), m_ring_offsets.end(), m_ring_offsets.begin());
    m_user_rings.resize(m_edges.size());
    m_ring_users.resize(m_edges.size());
    std::vector<std::size_t> ufill(m_user_offsets.begin(), m_user_offsets.end() - 1);
    std::vector<std::size_t> rfill(m_ring_offsets.begin(), m_ring_offsets.end() - 1);
    // Edges are sorted by (user, ring), so both adjacency lists come out sorted.
    for (const Edge& e : m_edges) {
        m_user_rings[ufill[e.user]++] = e.ring;
        m_ring_users[rfill[e.ring]++] = e.user;
    }
}

TransactionGraph TransactionGraph::create(Index n_users, Index n_rings, std::vector<Edge> edges)
{
    check_structure(n_users, n_rings, edges);
    TransactionGraph g(n_users, n_rings, std::move(edges));
    const Index size = maximum_matching(g).size();
    if (size < n_rings) {
        throw Error(ErrorKind::kNotATransactionGraph,
                    "maximum matching has size " + std::to_string(size) + " < " +
                        std::to_string(n_rings) + " rings");
    }
    return g;
}

TransactionGraph TransactionGraph::create_with_matching(Index n_users, Index n_rings,
                                                        std::vector<Edge> edges,
                                                        const Matching& witness)
{
    check_structure(n_users, n_rings, edges);
    TransactionGraph g(n_users, n_rings, std::move(edges));
    try {
        require_full_matching(g, witness);
    } catch (const Error& e) {
        throw Error(ErrorKind::kNotATransactionGraph, e.what());
    }
    return g;
}

std::span<const Index> TransactionGraph::rings_of(Index user) const
{
    if (user >= m_n_users) throw Error(ErrorKind::kIndexOutOfRange, "user " + std::to_string(user));
    return {m_user_rings.data() + m_user_offsets[user], m_user_rings.data() + m_user_offsets[user + 1]};
}

std::span<const Index> TransactionGraph::members_of(Index ring) const
{
    if (ring >= m_n_rings) throw Error(ErrorKind::kIndexOutOfRange, "ring " + std::to_string(ring));
    return {m_ring_users.data() + m_ring_offsets[ring], m_ring_users.data() + m_ring_offsets[ring + 1]};
}

bool TransactionGraph::has_edge(Edge e) const noexcept
{
    return std::binary_search(m_edges.begin(), m_edges.end(), e);
}

namespace {

Matching augmenting_path_matching(const TransactionGraph& g)
{
    const Index n_users = g.n_users();
    const Index n_rings = g.n_rings();
    std::vector<Index> ring_of_user(n_users, kNone);
    Matching m(n_rings);
    std::vector<Index> visited(n_users, 0);
    std::vector<std::size_t> cursor(n_rings, 0);
    std::vector<Index> stack;
    Index stamp = 0;

    for (Index root = 0; root < n_rings; ++root) {
        ++stamp;
        stack.assign(1, root);
        cursor[root] = 0;
        while (!stack.empty()) {
            const Index r = stack.back();
            auto members = g.members_of(r);
            std::size_t& it = cursor[r];
            while (it < members.size() && visited[members[it]] == stamp) ++it;
            if (it == members.size()) {
                stack.pop_back();
                if (!stack.empty()) ++cursor[stack.back()];
                continue;
            }
            const Index u = members[it];
            visited[u] = stamp;
            if (ring_of_user[u] == kNone) {
                for (Index s : stack) {
                    const Index v = g.members_of(s)[cursor[s]];
                    m.assign(s, v);
                    ring_of_user[v] = s;
                }
                break;
            }
            const Index next = ring_of_user[u];
            cursor[next] = 0;
            stack.push_back(next);
        }
    }
    return m;
}

Matching hopcroft_karp_matching(const TransactionGraph& g)
{
    constexpr Index kInf = std::numeric_limits<Index>::max();
    const Index n_rings = g.n_rings();
    std::vector<Index> ring_of_user(g.n_users(), kNone);
    std::vector<Index> user_of_ring(n_rings, kNone);
    std::vector<Index> dist(n_rings);
    std::vector<std::size_t> cursor(n_rings);
    std::vector<Index> queue;
    std::vector<Index> stack;

    while (true) {
        queue.clear();
        for (Index r = 0; r < n_rings; ++r) {
            dist[r] = user_of_ring[r] == kNone ? 0 : kInf;
            if (dist[r] == 0) queue.push_back(r);
        }
        bool found = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Index r = queue[head];
            for (Index u : g.members_of(r)) {
                const Index next = ring_of_user[u];
                if (next == kNone) {
                    found = true;
                } else if (dist[next] == kInf) {
                    dist[next] = dist[r] + 1;
                    queue.push_back(next);
                }
            }
        }
        if (!found) break;

        std::fill(cursor.begin(), cursor.end(), 0);
        for (Index root = 0; root < n_rings; ++root) {
            if (user_of_ring[root] != kNone) continue;
            stack.assign(1, root);
            while (!stack.empty()) {
                const Index r = stack.back();
                auto members = g.members_of(r);
                if (cursor[r] == members.size()) {
                    dist[r] = kInf;
                    stack.pop_back();
                    if (!stack.empty()) ++cursor[stack.back()];
                    continue;
                }
                const Index u = members[cursor[r]];
                const Index next = ring_of_user[u];
                if (next == kNone) {
                    for (Index s : stack) {
                        const Index v = g.members_of(s)[cursor[s]];
                        user_of_ring[s] = v;
                        ring_of_user[v] = s;
                    }
                    break;
                }
                if (dist[next] != kInf && dist[next] == dist[r] + 1) {
                    stack.push_back(next);
                } else {
                    ++cursor[r];
                }
            }
        }
    }

    Matching m(n_rings);
    for (Index r = 0; r < n_rings; ++r) {
        if (user_of_ring[r] != kNone) m.assign(r, user_of_ring[r]);
    }
    return m;
}

} // namespace

Matching maximum_matching(const TransactionGraph& graph, MatchingStrategy strategy)
{
    switch (strategy) {
    case MatchingStrategy::kHopcroftKarp: return hopcroft_karp_matching(graph);
    case MatchingStrategy::kAugmentingPath: break;
    }
    return augmenting_path_matching(graph);
}

void require_full_matching(const TransactionGraph& graph, const Matching& matching)
{
    if (matching.n_rings() != graph.n_rings()) {
        throw Error(ErrorKind::kMatchingNotMaximum, "matching ring count differs from graph");
    }
    std::vector<bool> used(graph.n_users(), false);
    for (Index r = 0; r < graph.n_rings(); ++r) {
        const Index u = matching.user_of_ring(r);
        if (u == kNone) {
            throw Error(ErrorKind::kMatchingNotMaximum, "ring " + std::to_string(r) + " unmatched");
        }
        if (u >= graph.n_users() || used[u] || !graph.has_edge({u, r})) {
            throw Error(ErrorKind::kMatchingNotMaximum,
                        "pair " + edge_str({u, r}) + " is not a matching edge");
        }
        used[u] = true;
    }
}

Digraph Digraph::from_edges(Index n_nodes, std::vector<std::pair<Index, Index>> edges)
{
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) {
        if (a >= n_nodes || b >= n_nodes) {
            throw Error(ErrorKind::kInvalidParams, "digraph edge out of range");
        }
        if (a == b) throw Error(ErrorKind::kInvalidParams, "self-loop at " + std::to_string(a));
    }
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw Error(ErrorKind::kInvalidParams, "parallel digraph edge");
    }
    Digraph d;
    d.m_n_nodes = n_nodes;
    d.m_offsets.assign(n_nodes + 1, 0);
    for (const auto& e : edges) ++d.m_offsets[e.first + 1];
    std::partial_sum(d.m_offsets.begin(), d.m_offsets.end(), d.m_offsets.begin());
    d.m_targets.reserve(edges.size());
    for (const auto& e : edges) d.m_targets.push_back(e.second);
    return d;
}

Digraph Digraph::from_in_neighbours(std::span<const std::vector<Index>> in_neighbours)
{
    const auto n = static_cast<Index>(in_neighbours.size());
    Digraph d;
    d.m_n_nodes = n;
    d.m_offsets.assign(n + 1, 0);
    for (Index j = 0; j < n; ++j) {
        for (Index i : in_neighbours[j]) {
            assert(i < n && i != j);
            ++d.m_offsets[i + 1];
        }
    }
    std::partial_sum(d.m_offsets.begin(), d.m_offsets.end(), d.m_offsets.begin());
    d.m_targets.resize(d.m_offsets.back());
    std::vector<std::size_t> fill(d.m_offsets.begin(), d.m_offsets.end() - 1);
    // Targets visited in ascending order, so every successor list is sorted.
    for (Index j = 0; j < n; ++j) {
        for (Index i : in_neighbours[j]) d.m_targets[fill[i]++] = j;
    }
    return d;
}

bool Digraph::has_edge(Index from, Index to) const
{
    if (from >= m_n_nodes) return false;
    auto s = successors(from);
    return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<Index, Index>> Digraph::edge_list() const
{
    std::vector<std::pair<Index, Index>> out;
    out.reserve(n_edges());
    for (Index i = 0; i < m_n_nodes; ++i) {
        for (Index j : successors(i)) out.emplace_back(i, j);
    }
    return out;
}

std::vector<Index> Digraph::in_degrees() const
{
    std::vector<Index> deg(m_n_nodes, 0);
    for (Index t : m_targets) ++deg[t];
    return deg;
}

Digraph Digraph::transpose() const
{
    Digraph d;
    d.m_n_nodes = m_n_nodes;
    d.m_offsets.assign(m_n_nodes + 1, 0);
    for (Index t : m_targets) ++d.m_offsets[t + 1];
    std::partial_sum(d.m_offsets.begin(), d.m_offsets.end(), d.m_offsets.begin());
    d.m_targets.resize(m_targets.size());
    std::vector<std::size_t> fill(d.m_offsets.begin(), d.m_offsets.end() - 1);
    for (Index i = 0; i < m_n_nodes; ++i) {
        for (Index j : successors(i)) d.m_targets[fill[j]++] = i;
    }
    return d;
}

InducedLabelling induced_labelling(const TransactionGraph& graph, const Matching& matching)
{
    require_full_matching(graph, matching);
    InducedLabelling lab;
    lab.node_of_user.assign(graph.n_users(), kNone);
    lab.user_of_node.reserve(graph.n_users());
    for (Index r = 0; r < graph.n_rings(); ++r) {
        const Index u = matching.user_of_ring(r);
        lab.node_of_user[u] = r;
        lab.user_of_node.push_back(u);
    }
    for (Index u = 0; u < graph.n_users(); ++u) {
        if (lab.node_of_user[u] == kNone) {
            lab.node_of_user[u] = static_cast<Index>(lab.user_of_node.size());
            lab.user_of_node.push_back(u);
        }
    }
    return lab;
}

Digraph induced_digraph(const TransactionGraph& graph, const Matching& matching)
{
    const InducedLabelling lab = induced_labelling(graph, matching);
    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(graph.n_edges());
    for (Index node = 0; node < graph.n_users(); ++node) {
        for (Index ring : graph.rings_of(lab.user_of_node[node])) {
            if (ring != node) edges.emplace_back(node, ring);
        }
    }
    return Digraph::from_edges(graph.n_users(), std::move(edges));
}

SccResult strongly_connected_components(const Digraph& digraph)
{
    const Index n = digraph.n_nodes();
    constexpr Index kUnvisited = std::numeric_limits<Index>::max();
    std::vector<Index> index(n, kUnvisited);
    std::vector<Index> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Index> tarjan_stack;
    std::vector<Index> raw_component(n, kUnvisited);
    std::vector<std::pair<Index, std::size_t>> call_stack;
    Index next_index = 0;
    Index n_components = 0;

    for (Index start = 0; start < n; ++start) {
        if (index[start] != kUnvisited) continue;
        call_stack.emplace_back(start, 0);
        index[start] = low[start] = next_index++;
        tarjan_stack.push_back(start);
        on_stack[start] = true;
        while (!call_stack.empty()) {
            auto& [v, pos] = call_stack.back();
            auto succ = digraph.successors(v);
            if (pos < succ.size()) {
                const Index w = succ[pos++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = next_index++;
                    tarjan_stack.push_back(w);
                    on_stack[w] = true;
                    call_stack.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const Index done = v;
            call_stack.pop_back();
            if (!call_stack.empty()) {
                const Index parent = call_stack.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                Index w;
                do {
                    w = tarjan_stack.back();
                    tarjan_stack.pop_back();
                    on_stack[w] = false;
                    raw_component[w] = n_components;
                } while (w != done);
                ++n_components;
            }
        }
    }

    // Renumber so components are ordered by their smallest node.
    SccResult result;
    result.component_of.assign(n, 0);
    std::vector<Index> renumber(n_components, kUnvisited);
    for (Index v = 0; v < n; ++v) {
        Index& id = renumber[raw_component[v]];
        if (id == kUnvisited) {
            id = static_cast<Index>(result.components.size());
            result.components.emplace_back();
        }
        result.component_of[v] = id;
        result.components[id].push_back(v);
    }
    return result;
}

namespace {

bool covers_all_from_zero(const Digraph& d, std::vector<Index>& queue, std::vector<bool>& seen)
{
    const Index n = d.n_nodes();
    seen.assign(n, false);
    queue.clear();
    queue.push_back(0);
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Index w : d.successors(queue[head])) {
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return queue.size() == n;
}

} // namespace

bool is_strongly_connected(const Digraph& digraph)
{
    if (digraph.n_nodes() <= 1) return true;
    std::vector<Index> queue;
    std::vector<bool> seen;
    if (!covers_all_from_zero(digraph, queue, seen)) return false;
    return covers_all_from_zero(digraph.transpose(), queue, seen);
}

std::vector<bool> reachable_from(const Digraph& digraph, std::span<const Index> sources)
{
    std::vector<bool> seen(digraph.n_nodes(), false);
    std::vector<Index> queue;
    for (Index s : sources) {
        if (s >= digraph.n_nodes()) throw Error(ErrorKind::kIndexOutOfRange, "source node out of range");
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Index w : digraph.successors(queue[head])) {
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

Partition Partition::create(Index n_users, std::vector<std::vector<Index>> chunks)
{
    Partition p;
    p.m_chunk_of.assign(n_users, kNone);
    p.m_position.assign(n_users, kNone);
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        auto& chunk = chunks[c];
        if (chunk.empty()) throw Error(ErrorKind::kInvalidPartition, "empty chunk " + std::to_string(c));
        std::sort(chunk.begin(), chunk.end());
        for (std::size_t pos = 0; pos < chunk.size(); ++pos) {
            const Index u = chunk[pos];
            if (u >= n_users) throw Error(ErrorKind::kInvalidPartition, "chunk member out of range");
            if (p.m_chunk_of[u] != kNone) {
                throw Error(ErrorKind::kInvalidPartition, "user " + std::to_string(u) + " in two chunks");
            }
            p.m_chunk_of[u] = static_cast<Index>(c);
            p.m_position[u] = static_cast<Index>(pos);
        }
    }
    for (Index u = 0; u < n_users; ++u) {
        if (p.m_chunk_of[u] == kNone) {
            throw Error(ErrorKind::kInvalidPartition, "user " + std::to_string(u) + " not covered");
        }
    }
    p.m_chunks = std::move(chunks);
    return p;
}

Partition Partition::equal_chunks(Index n_users, Index chunk_size)
{
    if (chunk_size == 0 || n_users % chunk_size != 0) {
        throw Error(ErrorKind::kInvalidPartition, "chunk size must divide the user count");
    }
    std::vector<std::vector<Index>> chunks(n_users / chunk_size);
    for (Index u = 0; u < n_users; ++u) chunks[u / chunk_size].push_back(u);
    return create(n_users, std::move(chunks));
}

Partition Partition::single_chunk(Index n_users)
{
    return equal_chunks(n_users, n_users);
}

std::vector<ChunkGraph> partition_graph(const TransactionGraph& graph, const Partition& partition)
{
    if (partition.n_users() != graph.n_users()) {
        throw Error(ErrorKind::kInvalidPartition, "partition covers a different user count");
    }
    std::vector<std::vector<Index>> rings_of_chunk(partition.n_chunks());
    for (Index r = 0; r < graph.n_rings(); ++r) {
        auto members = graph.members_of(r);
        const Index c = partition.chunk_of(members.front());
        for (Index u : members) {
            if (partition.chunk_of(u) != c) {
                throw Error(ErrorKind::kRingCrossesChunks,
                            "ring " + std::to_string(r) + " crosses chunks");
            }
        }
        rings_of_chunk[c].push_back(r);
    }
    std::vector<ChunkGraph> out;
    out.reserve(partition.n_chunks());
    for (std::size_t c = 0; c < partition.n_chunks(); ++c) {
        auto users = partition.chunk(c);
        const auto& rings = rings_of_chunk[c];
        std::vector<Edge> edges;
        for (std::size_t lr = 0; lr < rings.size(); ++lr) {
            for (Index u : graph.members_of(rings[lr])) {
                edges.push_back({partition.position_in_chunk(u), static_cast<Index>(lr)});
            }
        }
        out.push_back({TransactionGraph::create(static_cast<Index>(users.size()),
                                                static_cast<Index>(rings.size()), std::move(edges)),
                       std::vector<Index>(users.begin(), users.end()), rings});
    }
    return out;
}

std::vector<Component> connected_components(const TransactionGraph& graph)
{
    const Index n_users = graph.n_users();
    // Union-find over users; rings merge their members.
    std::vector<Index> parent(n_users);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (Index r = 0; r < graph.n_rings(); ++r) {
        auto members = graph.members_of(r);
        const Index root = find(members.front());
        for (Index u : members.subspan(1)) {
            const Index other = find(u);
            if (other != root) parent[other] = root;
        }
    }
    std::vector<Index> id_of_root(n_users, kNone);
    std::vector<Component> out;
    for (Index u = 0; u < n_users; ++u) {
        Index& id = id_of_root[find(u)];
        if (id == kNone) {
            id = static_cast<Index>(out.size());
            out.emplace_back();
        }
        out[id].users.push_back(u);
    }
    for (Index r = 0; r < graph.n_rings(); ++r) {
        out[id_of_root[find(graph.members_of(r).front())]].rings.push_back(r);
    }
    return out;
}

TransactionGraph induced_subgraph(const TransactionGraph& graph, std::span<const Index> users,
                                  std::span<const Index> rings)
{
    std::vector<Index> local_user(graph.n_users(), kNone);
    for (std::size_t i = 0; i < users.size(); ++i) local_user.at(users[i]) = static_cast<Index>(i);
    std::vector<Edge> edges;
    for (std::size_t lr = 0; lr < rings.size(); ++lr) {
        for (Index u : graph.members_of(rings[lr])) {
            if (local_user[u] != kNone) edges.push_back({local_user[u], static_cast<Index>(lr)});
        }
    }
    return TransactionGraph::create(static_cast<Index>(users.size()), static_cast<Index>(rings.size()),
                                    std::move(edges));
}

TransactionGraph upper_graph(const TransactionGraph& graph, const Matching& matching)
{
    const InducedLabelling lab = induced_labelling(graph, matching);
    const Index m = graph.n_rings();
    std::vector<Edge> edges;
    for (Index node = 0; node < m; ++node) {
        for (Index ring : graph.rings_of(lab.user_of_node[node])) edges.push_back({node, ring});
    }
    Matching identity(m);
    for (Index j = 0; j < m; ++j) identity.assign(j, j);
    return TransactionGraph::create_with_matching(m, m, std::move(edges), identity);
}

} // namespace ringlab
