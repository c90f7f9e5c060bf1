#include "ringlab/core.hpp"

#include "ringlab/error.hpp"

#include <algorithm>
#include <string>

namespace ringlab {

std::vector<bool> core_edge_mask(const TransactionGraph& graph, MatchingStrategy strategy)
{
    const Matching matching = maximum_matching(graph, strategy);
    if (matching.size() != graph.n_rings()) {
        throw Error(ErrorKind::kNotATransactionGraph, "graph admits no ring-covering matching");
    }
    const InducedLabelling lab = induced_labelling(graph, matching);
    const Digraph digraph = induced_digraph(graph, matching);
    const SccResult scc = strongly_connected_components(digraph);

    std::vector<Index> unmatched_nodes;
    for (Index node = graph.n_rings(); node < graph.n_users(); ++node) unmatched_nodes.push_back(node);
    const std::vector<bool> reached = reachable_from(digraph, unmatched_nodes);

    auto edges = graph.edges();
    std::vector<bool> mask(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Index i = lab.node_of_user[edges[e].user];
        const Index j = edges[e].ring;
        mask[e] = i == j || scc.component_of[i] == scc.component_of[j] || reached[i];
    }
    return mask;
}

TransactionGraph core(const TransactionGraph& graph, MatchingStrategy strategy)
{
    const std::vector<bool> mask = core_edge_mask(graph, strategy);
    auto edges = graph.edges();
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (mask[e]) kept.push_back(edges[e]);
    }
    return TransactionGraph::create(graph.n_users(), graph.n_rings(), std::move(kept));
}

bool is_core_equal(const TransactionGraph& graph)
{
    const std::vector<bool> mask = core_edge_mask(graph);
    return std::all_of(mask.begin(), mask.end(), [](bool b) { return b; });
}

CoreReport core_report(const TransactionGraph& graph)
{
    const std::vector<bool> mask = core_edge_mask(graph);
    auto edges = graph.edges();
    CoreReport report;
    report.per_ring_core_degree.assign(graph.n_rings(), 0);
    std::vector<Index> last_core_user(graph.n_rings(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (mask[e]) {
            report.core_edges.push_back(edges[e]);
            ++report.per_ring_core_degree[edges[e].ring];
            last_core_user[edges[e].ring] = edges[e].user;
        } else {
            report.removed_edges.push_back(edges[e]);
        }
    }
    for (Index r = 0; r < graph.n_rings(); ++r) {
        if (report.per_ring_core_degree[r] == 1) report.deanonymised_rings.push_back({last_core_user[r], r});
    }
    return report;
}

namespace {

class MatchingEnumerator {
public:
    explicit MatchingEnumerator(const TransactionGraph& g)
        : m_graph(g), m_current(g.n_rings()), m_used(g.n_users(), false)
    {
    }

    std::vector<Matching> run()
    {
        visit(0, 0);
        return std::move(m_found);
    }

private:
    void visit(Index ring, Index size)
    {
        const Index n_rings = m_graph.n_rings();
        if (size + (n_rings - ring) < m_best) return;
        if (ring == n_rings) {
            if (size > m_best) {
                m_best = size;
                m_found.clear();
            }
            m_found.push_back(m_current);
            return;
        }
        for (Index u : m_graph.members_of(ring)) {
            if (m_used[u]) continue;
            m_used[u] = true;
            m_current.assign(ring, u);
            visit(ring + 1, size + 1);
            m_current.assign(ring, Matching::kUnmatched);
            m_used[u] = false;
        }
        visit(ring + 1, size);
    }

    const TransactionGraph& m_graph;
    Matching m_current;
    std::vector<bool> m_used;
    Index m_best = 0;
    std::vector<Matching> m_found;
};

} // namespace

std::vector<Matching> enumerate_maximum_matchings(const TransactionGraph& graph, Index cap)
{
    if (graph.n_users() > cap) {
        throw Error(ErrorKind::kInstanceTooLarge, std::to_string(graph.n_users()) +
                                                      " users exceed the exhaustive cap of " +
                                                      std::to_string(cap));
    }
    return MatchingEnumerator(graph).run();
}

TransactionGraph core_bruteforce_oracle(const TransactionGraph& graph, Index cap)
{
    std::vector<Edge> edges;
    for (const Matching& m : enumerate_maximum_matchings(graph, cap)) {
        for (const Edge& e : m.pairs()) edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return TransactionGraph::create(graph.n_users(), graph.n_rings(), std::move(edges));
}

} // namespace ringlab
