#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "divcover/graph.hpp"
#include "divcover/rng.hpp"
#include "divcover/vertex_set.hpp"

namespace divcover {

/// True iff every edge of g has at least one endpoint in s.
bool is_cover(const Graph& g, const VertexSet& s);

/// s must be a cover. True iff no single vertex can be dropped from s while
/// keeping it a cover, i.e. every member vertex has an incident edge whose
/// other endpoint lies outside s. An isolated vertex inside s always makes
/// s excessive.
bool is_non_excessive(const Graph& g, const VertexSet& s);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Every cover of size <= k, in bitstring-lexicographic order. Plain
/// combination enumeration; throws OracleBudgetError when the candidate
/// count sum_{j<=k} C(n,j) exceeds the budget.
std::vector<VertexSet> enumerate_covers(const Graph& g, int k,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

/// Both endpoints of a greedily built maximal matching; always a cover of
/// size at most twice the minimum.
VertexSet matching_cover(const Graph& g);

inline constexpr std::uint64_t kDefaultInitialCoverBudget = 100'000;

/// Tries to produce a cover of size <= k: the matching cover first, then a
/// seeded size-descent using remove-and-repair moves (accept when the size
/// does not increase), up to `budget` moves. Returns nullopt when the budget
/// runs out, which callers treat as "instance likely infeasible for this k".
/// The result is not padded to size k; padding is the caller's concern.
std::optional<VertexSet> initial_cover(const Graph& g, int k, RandomStream& rng,
                                       std::uint64_t budget = kDefaultInitialCoverBudget);

} // namespace divcover
