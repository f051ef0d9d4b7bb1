#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divcover/errors.hpp"

namespace divcover {

/// Normalized undirected edge, u < v, 1-based labels.
using Edge = std::pair<int, int>;

/// Immutable undirected graph on vertices 1..n. Isolated vertices are
/// allowed; self-loops and duplicate edges are not. Safe to share across
/// threads once built.
class Graph {
public:
    /// Normalizes edge orientation, deduplicates, validates labels.
    static Graph from_edges(int n, std::vector<Edge> edges);

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Ascending neighbor labels of v.
    std::span<const int> neighbors(int v) const;
    int degree(int v) const;

private:
    Graph() = default;

    int n_ = 0;
    std::vector<Edge> edges_;          // sorted, unique
    std::vector<std::vector<int>> adj_; // adj_[v-1], sorted
};

/// Parses the line-oriented edge-list format:
///   optional comment lines starting with `c`,
///   one header `p edge <n> <m>`,
///   exactly m lines `e <u> <v>` with 1 <= u,v <= n and u != v.
/// Duplicate edge lines collapse to one edge; each duplicate appends a note
/// to `warnings` when given. Anything else raises ParseError with the
/// offending line number.
Graph parse_graph(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Header plus `e u v` lines sorted lexicographically; parses back to an
/// equal graph.
std::string serialize_graph(const Graph& g);

/// The 8-vertex, 8-edge instance the verification suite is built around:
/// edges {1,5},{1,6},{2,5},{2,6},{2,7},{2,8},{4,7},{4,8}; vertex 3 isolated.
Graph base_instance();

/// base_instance() plus a disjoint complete bipartite K_{m,m} on vertices
/// 9..8+2m (left side 9..8+m, right side 9+m..8+2m). The intended cover
/// budget for this instance is k = m + 4.
Graph extended_instance(int m);

} // namespace divcover
