#include "divcover/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace divcover {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    for (auto& [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("edge endpoint outside [1, " + std::to_string(n) + "]");
        if (u == v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adj_.assign(n, {});
    for (const auto& [u, v] : g.edges_) {
        g.adj_[u - 1].push_back(v);
        g.adj_[v - 1].push_back(u);
    }
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

std::span<const int> Graph::neighbors(int v) const {
    if (v < 1 || v > n_)
        throw std::invalid_argument("vertex " + std::to_string(v) + " outside [1, " +
                                    std::to_string(n_) + "]");
    return adj_[v - 1];
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

namespace {

bool parse_int(const std::string& token, int& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

} // namespace

Graph parse_graph(std::string_view text, std::vector<std::string>* warnings) {
    bool have_header = false;
    int n = 0, m = 0;
    int edge_lines = 0;
    std::vector<Edge> edges;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line(text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                       : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (tokens[0] == "c") continue;

        if (tokens[0] == "p") {
            if (have_header) throw ParseError(line_no, "duplicate header line");
            if (tokens.size() != 4 || tokens[1] != "edge")
                throw ParseError(line_no, "malformed header, expected `p edge <n> <m>`");
            if (!parse_int(tokens[2], n) || !parse_int(tokens[3], m) || n < 0 || m < 0)
                throw ParseError(line_no, "malformed header counts");
            have_header = true;
            continue;
        }

        if (tokens[0] == "e") {
            if (!have_header) throw ParseError(line_no, "edge line before header");
            if (edge_lines == m)
                throw ParseError(line_no, "more than the declared " + std::to_string(m) +
                                              " edge lines");
            int u = 0, v = 0;
            if (tokens.size() != 3 || !parse_int(tokens[1], u) || !parse_int(tokens[2], v))
                throw ParseError(line_no, "malformed edge line, expected `e <u> <v>`");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError(line_no, "vertex index outside [1, " + std::to_string(n) + "]");
            if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
            ++edge_lines;
            Edge e{std::min(u, v), std::max(u, v)};
            if (std::find(edges.begin(), edges.end(), e) != edges.end()) {
                if (warnings)
                    warnings->push_back("line " + std::to_string(line_no) + ": duplicate edge (" +
                                        std::to_string(e.first) + "," + std::to_string(e.second) +
                                        ") ignored");
            } else {
                edges.push_back(e);
            }
            continue;
        }

        throw ParseError(line_no, "unknown line type `" + tokens[0] + "`");
    }

    if (!have_header) throw ParseError(0, "missing `p edge <n> <m>` header");
    if (edge_lines != m)
        throw ParseError(0, "declared " + std::to_string(m) + " edges but found " +
                                std::to_string(edge_lines) + " edge lines");

    return Graph::from_edges(n, std::move(edges));
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

Graph base_instance() {
    return Graph::from_edges(8, {{1, 5}, {1, 6}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {4, 7}, {4, 8}});
}

Graph extended_instance(int m) {
    if (m < 1) throw std::invalid_argument("bipartite side size must be >= 1");
    Graph base = base_instance();
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    for (int l = 0; l < m; ++l)
        for (int r = 0; r < m; ++r)
            edges.emplace_back(9 + l, 9 + m + r);
    return Graph::from_edges(8 + 2 * m, std::move(edges));
}

} // namespace divcover
