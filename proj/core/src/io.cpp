#include "ringlab/io.hpp"

#include "ringlab/error.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>

namespace ringlab {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what)
{
    throw Error(ErrorKind::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

// Splits on runs of blanks.
std::vector<std::string_view> fields(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

Index parse_index(std::string_view token, std::size_t line)
{
    Index value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) fail(line, "integer out of range: '" + std::string(token) + "'");
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        fail(line, "expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

// Calls `body(line_number, content)` for every non-comment, non-blank line.
template <class Body>
void for_each_data_line(std::istream& in, Body body)
{
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view s = trim(raw);
        if (s.empty() || s.front() == '#') continue;
        body(line, s);
    }
}

} // namespace

EdgeList parse_edge_list(std::istream& in)
{
    EdgeList list;
    bool have_header = false;
    for_each_data_line(in, [&](std::size_t line, std::string_view s) {
        const auto f = fields(s);
        if (f.size() != 2) fail(line, "expected two integers, got " + std::to_string(f.size()) + " fields");
        const Index a = parse_index(f[0], line);
        const Index b = parse_index(f[1], line);
        if (!have_header) {
            list.n_users = a;
            list.n_rings = b;
            have_header = true;
        } else {
            list.edges.push_back({a, b});
            list.lines.push_back(line);
        }
    });
    if (!have_header) fail(0, "missing 'n_users n_rings' header");
    return list;
}

TransactionGraph read_transaction_graph(std::istream& in)
{
    EdgeList list = parse_edge_list(in);
    for (std::size_t i = 0; i < list.edges.size(); ++i) {
        const Edge e = list.edges[i];
        if (e.user >= list.n_users || e.ring >= list.n_rings) {
            throw Error(ErrorKind::kIndexOutOfRange, "IndexOutOfRange at line " + std::to_string(list.lines[i]) +
                                                         ": edge (" + std::to_string(e.user) + ", " +
                                                         std::to_string(e.ring) + ")");
        }
    }
    return TransactionGraph::create(list.n_users, list.n_rings, std::move(list.edges));
}

void write_edge_list(std::ostream& out, const TransactionGraph& graph)
{
    out << graph.n_users() << ' ' << graph.n_rings() << '\n';
    for (const Edge& e : graph.edges()) out << e.user << ' ' << e.ring << '\n';
}

std::vector<double> parse_weights(std::istream& in)
{
    std::vector<double> weights;
    for_each_data_line(in, [&](std::size_t line, std::string_view s) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            fail(line, "expected a number, got '" + std::string(s) + "'");
        }
        if (!(value >= 0.0) || !std::isfinite(value)) fail(line, "weight must be finite and non-negative");
        weights.push_back(value);
    });
    if (weights.empty()) fail(0, "no weights");
    return weights;
}

} // namespace ringlab
