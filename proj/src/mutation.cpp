#include "divcover/mutation.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "divcover/covers.hpp"

namespace divcover {

namespace {

VertexSet repair(const Graph& g, const VertexSet& x, const VertexSet& removal) {
    VertexSet y = x;
    for (int v : removal.vertices()) y.erase(v);
    for (int v : removal.vertices())
        for (int u : g.neighbors(v)) y.insert(u);
    return y;
}

} // namespace

VertexSet apply_removal_and_repair(const Graph& g, const VertexSet& x,
                                   const VertexSet& removal) {
    if (x.width() != g.vertex_count() || removal.width() != g.vertex_count())
        throw std::invalid_argument("vertex set width does not match graph vertex count");
    for (int v : removal.vertices())
        if (!x.contains(v))
            throw std::invalid_argument("removal set must be a subset of x");
    return repair(g, x, removal);
}

VertexSet remove_and_repair(const Graph& g, const VertexSet& x, RandomStream& rng) {
    VertexSet removal(x.width());
    for (int v : x.vertices())
        if (rng.coin()) removal.insert(v);
    return repair(g, x, removal);
}

VertexSet jump_and_repair(const Graph& g, int k, const VertexSet& x, RandomStream& rng) {
    if (x.width() != g.vertex_count())
        throw std::invalid_argument("vertex set width does not match graph vertex count");
    if (x.size() > k)
        throw std::invalid_argument("jump_and_repair parent has " + std::to_string(x.size()) +
                                    " vertices, more than k = " + std::to_string(k));
    if (!is_cover(g, x))
        throw std::invalid_argument("jump_and_repair parent must be a cover");

    VertexSet y = remove_and_repair(g, x, rng);
    if (y.size() < k) {
        std::vector<int> absent;
        absent.reserve(g.vertex_count() - y.size());
        for (int v = 1; v <= g.vertex_count(); ++v)
            if (!y.contains(v)) absent.push_back(v);
        // k > n leaves nothing to pad with once the whole vertex set is in
        while (y.size() < k && !absent.empty()) {
            const auto idx = static_cast<std::size_t>(rng.uniform_below(absent.size()));
            y.insert(absent[idx]);
            absent[idx] = absent.back();
            absent.pop_back();
        }
    }
    return y;
}

} // namespace divcover
