#pragma once

#include "ringlab/graph.hpp"

#include <istream>
#include <vector>

namespace ringlab {

/// Contents of an edge-list file before graph validation.
///
/// Format: first data line `n_users n_rings`, then one `user ring` pair per
/// line, 0-based. Lines starting with `#` and blank lines are ignored; LF and
/// CRLF endings are both accepted.
struct EdgeList {
    Index n_users = 0;
    Index n_rings = 0;
    std::vector<Edge> edges;
    /// 1-based source line of each edge.
    std::vector<std::size_t> lines;
};

/// Throws kParseError with the offending line number.
EdgeList parse_edge_list(std::istream& in);

/// Parses and validates in one step. Syntax errors raise kParseError, graph
/// errors raise the corresponding TransactionGraph error kinds.
TransactionGraph read_transaction_graph(std::istream& in);

/// Writes the edge-list format accepted by `parse_edge_list`.
void write_edge_list(std::ostream& out, const TransactionGraph& graph);

/// One non-negative weight per line, `#` comments and blank lines ignored.
/// Throws kParseError with the offending line number.
std::vector<double> parse_weights(std::istream& in);

} // namespace ringlab
