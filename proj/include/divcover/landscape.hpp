#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divcover/covers.hpp"
#include "divcover/diversity.hpp"
#include "divcover/graph.hpp"

namespace divcover {

inline constexpr std::uint64_t kDefaultPopulationOracleBudget = 100'000'000;
inline constexpr std::size_t kDefaultWitnessCap = 100;

struct OptimalDiversityResult {
    std::int64_t optimal_diversity = 0;
    std::uint64_t optimum_count = 0; // exact number of optimal multisets
    std::vector<std::vector<VertexSet>> witnesses; // up to the cap, canonical order
    std::size_t feasible_cover_count = 0;
};

/// Exhaustively scans every mu-multiset of feasible covers (size <= k) and
/// returns the maximum total Hamming distance together with all maximizing
/// multisets (up to witness_cap; the count is always exact). Covers smaller
/// than k participate, so the scan verifies rather than assumes that optima
/// use exactly-k covers. Throws OracleBudgetError when the cover enumeration
/// or the multiset count C(#covers + mu - 1, mu) exceeds its budget, and
/// InfeasibleError when no feasible cover exists.
OptimalDiversityResult optimal_diversity(const Graph& g, int k, int mu,
                                         std::uint64_t enumeration_budget = kDefaultEnumerationBudget,
                                         std::uint64_t population_budget = kDefaultPopulationOracleBudget,
                                         std::size_t witness_cap = kDefaultWitnessCap);

struct BestMove {
    std::size_t member_index = 0;
    VertexSet replacement{0};
    std::int64_t delta = 0;
};

struct LocalOptimumCheck {
    bool is_strict_local_optimum = false;
    /// The single replacement maximizing the diversity delta; nullopt when
    /// no distinct feasible replacement exists.
    std::optional<BestMove> best_move;
};

/// True iff replacing any single member by any different feasible cover
/// strictly decreases the total Hamming distance. All members must be
/// feasible.
LocalOptimumCheck is_strict_local_optimum(const Graph& g, int k, const Population& p,
                                          std::uint64_t enumeration_budget = kDefaultEnumerationBudget);

/// The four named 4-covers of base_instance() the verification suite pins:
/// V1 = {1,2,7,8}, V2 = {2,4,5,6}, V3 = {1,2,3,4}, V4 = {5,6,7,8}.
VertexSet cover_V1();
VertexSet cover_V2();
VertexSet cover_V3();
VertexSet cover_V4();

/// (V1, V2): diversity 6, strictly locally optimal for k = 4.
Population lemma3_pair();

/// (V1, V2, V3 x nu, V4 x nu) with nu = mu/2 - 1, on base_instance().
/// Strictly locally optimal yet sub-optimal for every even mu >= 4. Position
/// counts are mu/2 everywhere except count(2) = mu/2 + 1 and
/// count(3) = mu/2 - 1.
Population lemma4_population(int mu);

/// lemma4_population(mu) lifted to extended_instance(m) with k = m + 4:
/// members at even list positions additionally take the left bipartite side
/// 9..8+m, odd positions the right side 9+m..8+2m, so every added position
/// has count mu/2 and every member has size exactly m + 4.
Population extended_population(int mu, int m);

struct ClaimResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

/// The line-per-claim verification table behind the `verify-lemmas` CLI
/// subcommand: cover-structure claims on base_instance(), the mu = 2
/// landscape, the locally-optimal populations for mu in {4, 6}, and the
/// bipartite extension for mu = 4, m in {1, 2}.
std::vector<ClaimResult> verify_lemmas();

struct LandscapeReport {
    std::string instance;
    int k = 0;
    int mu = 0;
    OptimalDiversityResult oracle;
    // optional population check attached by callers
    std::optional<Population> checked_population;
    std::optional<LocalOptimumCheck> checked_result;
};

} // namespace divcover
