#include "divcover/covers.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "divcover/mutation.hpp"

namespace divcover {

namespace {

void check_width(const Graph& g, const VertexSet& s) {
    if (s.width() != g.vertex_count())
        throw std::invalid_argument("vertex set width " + std::to_string(s.width()) +
                                    " does not match graph vertex count " +
                                    std::to_string(g.vertex_count()));
}

/// C(n, r) saturating at uint64 max.
std::uint64_t choose_saturating(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        const std::uint64_t factor = n - r + i;
        if (result > std::numeric_limits<std::uint64_t>::max() / factor)
            return std::numeric_limits<std::uint64_t>::max();
        result = result * factor / i;
    }
    return result;
}

} // namespace

bool is_cover(const Graph& g, const VertexSet& s) {
    check_width(g, s);
    for (const auto& [u, v] : g.edges())
        if (!s.contains(u) && !s.contains(v)) return false;
    return true;
}

bool is_non_excessive(const Graph& g, const VertexSet& s) {
    if (!is_cover(g, s)) throw std::invalid_argument("is_non_excessive requires a cover");
    for (int v : s.vertices()) {
        bool pinned = false; // v has an edge only it covers
        for (int u : g.neighbors(v)) {
            if (!s.contains(u)) {
                pinned = true;
                break;
            }
        }
        if (!pinned) return false; // v (isolated or fully backed up) is removable
    }
    return true;
}

std::vector<VertexSet> enumerate_covers(const Graph& g, int k, std::uint64_t budget) {
    if (k < 0) throw std::invalid_argument("cover budget k must be nonnegative");
    const int n = g.vertex_count();
    const int max_size = std::min(k, n);

    std::uint64_t candidates = 0;
    for (int j = 0; j <= max_size; ++j) {
        const std::uint64_t c = choose_saturating(n, j);
        if (c > budget - candidates)
            throw OracleBudgetError("cover enumeration needs more than " +
                                    std::to_string(budget) +
                                    " candidate sets; shrink n or k or raise the budget");
        candidates += c;
    }

    std::vector<VertexSet> covers;
    std::vector<int> pick;
    for (int j = 0; j <= max_size; ++j) {
        // all j-combinations of 1..n
        pick.assign(j, 0);
        for (int i = 0; i < j; ++i) pick[i] = i + 1;
        for (;;) {
            VertexSet s = VertexSet::from_vertices(n, pick);
            if (is_cover(g, s)) covers.push_back(std::move(s));
            if (j == 0) break;
            int i = j - 1;
            while (i >= 0 && pick[i] == n - (j - 1 - i)) --i;
            if (i < 0) break;
            ++pick[i];
            for (int t = i + 1; t < j; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    std::sort(covers.begin(), covers.end(), LexLess{});
    return covers;
}

VertexSet matching_cover(const Graph& g) {
    VertexSet cover(g.vertex_count());
    for (const auto& [u, v] : g.edges())
        if (!cover.contains(u) && !cover.contains(v)) {
            cover.insert(u);
            cover.insert(v);
        }
    return cover;
}

std::optional<VertexSet> initial_cover(const Graph& g, int k, RandomStream& rng,
                                       std::uint64_t budget) {
    if (k < 0) throw std::invalid_argument("cover budget k must be nonnegative");
    VertexSet x = matching_cover(g);
    if (x.size() <= k) return x;
    for (std::uint64_t it = 0; it < budget; ++it) {
        VertexSet y = remove_and_repair(g, x, rng);
        if (y.size() <= x.size()) x = std::move(y);
        if (x.size() <= k) return x;
    }
    return std::nullopt;
}

} // namespace divcover
