#include "divcover/landscape.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "divcover/algorithms.hpp"
#include "divcover/errors.hpp"

namespace divcover {

namespace {

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

OptimalDiversityResult optimal_diversity(const Graph& g, int k, int mu,
                                         std::uint64_t enumeration_budget,
                                         std::uint64_t population_budget,
                                         std::size_t witness_cap) {
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    const auto covers = enumerate_covers(g, k, enumeration_budget);
    if (covers.empty())
        throw InfeasibleError("no cover of size <= " + std::to_string(k) + " exists");

    const std::uint64_t multisets =
        choose_saturating(covers.size() + static_cast<std::size_t>(mu) - 1, mu);
    if (multisets > population_budget)
        throw OracleBudgetError("population oracle needs " + std::to_string(multisets) +
                                " multisets, more than its budget of " +
                                std::to_string(population_budget));

    OptimalDiversityResult result;
    result.feasible_cover_count = covers.size();
    result.optimal_diversity = std::numeric_limits<std::int64_t>::min();

    const int n = g.vertex_count();
    std::vector<std::int64_t> counts(n, 0);
    std::int64_t sum_c = 0, sum_c2 = 0;
    std::vector<std::size_t> stack; // non-decreasing cover indices
    stack.reserve(mu);

    const auto push_cover = [&](std::size_t ci) {
        for (int v : covers[ci].vertices()) {
            sum_c += 1;
            sum_c2 += 2 * counts[v - 1] + 1;
            counts[v - 1] += 1;
        }
    };
    const auto pop_cover = [&](std::size_t ci) {
        for (int v : covers[ci].vertices()) {
            sum_c -= 1;
            sum_c2 -= 2 * counts[v - 1] - 1;
            counts[v - 1] -= 1;
        }
    };

    // depth-first scan over multisets (combinations with repetition)
    std::size_t next = 0;
    for (;;) {
        if (stack.size() == static_cast<std::size_t>(mu)) {
            const std::int64_t d = static_cast<std::int64_t>(mu) * sum_c - sum_c2;
            if (d > result.optimal_diversity) {
                result.optimal_diversity = d;
                result.optimum_count = 1;
                result.witnesses.clear();
                std::vector<VertexSet> w;
                for (std::size_t ci : stack) w.push_back(covers[ci]);
                result.witnesses.push_back(std::move(w));
            } else if (d == result.optimal_diversity) {
                ++result.optimum_count;
                if (result.witnesses.size() < witness_cap) {
                    std::vector<VertexSet> w;
                    for (std::size_t ci : stack) w.push_back(covers[ci]);
                    result.witnesses.push_back(std::move(w));
                }
            }
        } else if (next < covers.size()) {
            push_cover(next);
            stack.push_back(next);
            continue; // repetition allowed: next stays
        }
        if (stack.empty()) break;
        next = stack.back();
        stack.pop_back();
        pop_cover(next);
        ++next;
    }

    return result;
}

LocalOptimumCheck is_strict_local_optimum(const Graph& g, int k, const Population& p,
                                          std::uint64_t enumeration_budget) {
    if (p.size() == 0) throw std::invalid_argument("population is empty");
    for (const auto& s : p.members())
        if (!is_feasible(g, k, s))
            throw std::invalid_argument("local-optimum check requires a feasible population");

    const auto covers = enumerate_covers(g, k, enumeration_budget);

    LocalOptimumCheck check;
    check.is_strict_local_optimum = true;
    std::int64_t best_delta = std::numeric_limits<std::int64_t>::min();
    for (std::size_t j = 0; j < p.size(); ++j) {
        for (const auto& cand : covers) {
            if (cand == p.member(j)) continue;
            const std::int64_t delta = replace_delta(p, j, cand);
            if (delta >= 0) check.is_strict_local_optimum = false;
            if (delta > best_delta) {
                best_delta = delta;
                check.best_move = BestMove{j, cand, delta};
            }
        }
    }
    return check;
}

VertexSet cover_V1() { return VertexSet::from_vertices(8, {1, 2, 7, 8}); }
VertexSet cover_V2() { return VertexSet::from_vertices(8, {2, 4, 5, 6}); }
VertexSet cover_V3() { return VertexSet::from_vertices(8, {1, 2, 3, 4}); }
VertexSet cover_V4() { return VertexSet::from_vertices(8, {5, 6, 7, 8}); }

Population lemma3_pair() { return Population({cover_V1(), cover_V2()}); }

Population lemma4_population(int mu) {
    if (mu < 4 || mu % 2 != 0)
        throw std::invalid_argument("lemma4_population needs an even mu >= 4");
    const int nu = mu / 2 - 1;
    std::vector<VertexSet> members{cover_V1(), cover_V2()};
    for (int i = 0; i < nu; ++i) members.push_back(cover_V3());
    for (int i = 0; i < nu; ++i) members.push_back(cover_V4());
    return Population(std::move(members));
}

Population extended_population(int mu, int m) {
    if (mu < 4 || mu % 2 != 0)
        throw std::invalid_argument("extended_population needs an even mu >= 4");
    if (m < 1) throw std::invalid_argument("bipartite side size must be >= 1");

    const int n = 8 + 2 * m;
    const Population base = lemma4_population(mu);
    std::vector<VertexSet> members;
    members.reserve(mu);
    for (std::size_t j = 0; j < base.size(); ++j) {
        VertexSet s(n);
        for (int v : base.member(j).vertices()) s.insert(v);
        if (j % 2 == 0)
            for (int v = 9; v <= 8 + m; ++v) s.insert(v); // left side
        else
            for (int v = 9 + m; v <= 8 + 2 * m; ++v) s.insert(v); // right side
        members.push_back(std::move(s));
    }
    return Population(std::move(members));
}

namespace {

std::string describe_cover_list(const std::vector<VertexSet>& covers) {
    std::ostringstream out;
    for (std::size_t i = 0; i < covers.size(); ++i) {
        if (i) out << ' ';
        out << covers[i].vertex_list_text();
    }
    return out.str();
}

} // namespace

std::vector<ClaimResult> verify_lemmas() {
    std::vector<ClaimResult> claims;
    const Graph g = base_instance();

    const auto covers2 = enumerate_covers(g, 2);
    claims.push_back({"lemma2_no_cover_leq2", covers2.empty(),
                      std::to_string(covers2.size()) + " covers of size <= 2"});

    const auto covers3 = enumerate_covers(g, 3);
    const VertexSet three = VertexSet::from_vertices(8, {1, 2, 4});
    claims.push_back({"lemma2_unique_3cover", covers3.size() == 1 && covers3[0] == three,
                      "covers of size <= 3: " + describe_cover_list(covers3)});

    const auto covers4 = enumerate_covers(g, 4);
    std::vector<VertexSet> with_v3, without_v2;
    for (const auto& c : covers4) {
        if (c.size() == 4 && c.contains(3)) with_v3.push_back(c);
        if (c.size() == 4 && !c.contains(2)) without_v2.push_back(c);
    }
    claims.push_back({"lemma2_unique_4cover_with_v3",
                      with_v3.size() == 1 && with_v3[0] == cover_V3(),
                      "4-covers containing v3: " + describe_cover_list(with_v3)});
    claims.push_back({"lemma2_unique_4cover_without_v2",
                      without_v2.size() == 1 && without_v2[0] == cover_V4(),
                      "4-covers excluding v2: " + describe_cover_list(without_v2)});
    claims.push_back({"lemma2_feasible_cover_count", covers4.size() == 9,
                      std::to_string(covers4.size()) + " covers of size <= 4"});

    claims.push_back({"lemma3_pair_distance", hamming(cover_V1(), cover_V2()) == 6,
                      "H(V1,V2) = " + std::to_string(hamming(cover_V1(), cover_V2()))});

    const auto oracle2 = optimal_diversity(g, 4, 2);
    // witnesses come in canonical bitstring order, V4 before V3
    const bool unique_max = oracle2.optimal_diversity == 8 && oracle2.optimum_count == 1 &&
                            oracle2.witnesses.size() == 1 &&
                            oracle2.witnesses[0] ==
                                std::vector<VertexSet>{cover_V4(), cover_V3()};
    claims.push_back({"lemma3_unique_optimum", unique_max,
                      "optimum " + std::to_string(oracle2.optimal_diversity) + " with " +
                          std::to_string(oracle2.optimum_count) + " witness multiset(s)"});

    const auto local2 = is_strict_local_optimum(g, 4, lemma3_pair());
    claims.push_back({"lemma3_local_optimum",
                      local2.is_strict_local_optimum && local2.best_move &&
                          local2.best_move->delta < 0,
                      "best single-replacement delta " +
                          (local2.best_move ? std::to_string(local2.best_move->delta)
                                            : std::string("n/a"))});

    for (int mu : {4, 6}) {
        const Population pop = lemma4_population(mu);
        const auto local = is_strict_local_optimum(g, 4, pop);
        const auto oracle = optimal_diversity(g, 4, mu);
        const std::int64_t d = total_hamming(pop);
        const std::string tag = "lemma4_mu" + std::to_string(mu);
        claims.push_back({tag + "_local_optimum", local.is_strict_local_optimum,
                          "best single-replacement delta " +
                              (local.best_move ? std::to_string(local.best_move->delta)
                                               : std::string("n/a"))});
        claims.push_back({tag + "_suboptimal", d < oracle.optimal_diversity,
                          "D = " + std::to_string(d) + " vs optimum " +
                              std::to_string(oracle.optimal_diversity)});
    }

    for (int m : {1, 2}) {
        const Graph ext = extended_instance(m);
        const Population pop = extended_population(4, m);
        const auto local = is_strict_local_optimum(ext, m + 4, pop);
        claims.push_back({"extension_m" + std::to_string(m) + "_local_optimum",
                          local.is_strict_local_optimum,
                          "mu=4, k=" + std::to_string(m + 4) +
                              ", best single-replacement delta " +
                              (local.best_move ? std::to_string(local.best_move->delta)
                                               : std::string("n/a"))});
    }

    return claims;
}

} // namespace divcover
