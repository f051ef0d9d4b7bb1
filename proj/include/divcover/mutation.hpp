#pragma once

#include "divcover/graph.hpp"
#include "divcover/rng.hpp"
#include "divcover/vertex_set.hpp"

namespace divcover {

/// (x \ removal) plus all neighbors of the removed vertices. The
/// deterministic core of the jump-and-repair operator, exposed so that
/// removal-subset enumerations can drive it directly. `removal` must be a
/// subset of x.
VertexSet apply_removal_and_repair(const Graph& g, const VertexSet& x,
                                   const VertexSet& removal);

/// Draws the removal set with one fair coin per vertex of x, in ascending
/// vertex order, then repairs. The result is always a cover when x is one.
/// No padding.
VertexSet remove_and_repair(const Graph& g, const VertexSet& x, RandomStream& rng);

/// The full mutation: remove-and-repair, then pad with vertices chosen
/// uniformly at random from outside the set (without replacement,
/// rejection-free) while fewer than k vertices remain.
///
/// Requires x to be a cover with |x| <= k. The result is always a cover; it
/// has exactly k vertices when the repaired set had at most k, and is
/// returned oversized otherwise (callers treat size > k as infeasible, no
/// truncation here).
///
/// Draw order: one coin() per vertex of x ascending, then one
/// uniform_below(#absent) per padding draw.
VertexSet jump_and_repair(const Graph& g, int k, const VertexSet& x, RandomStream& rng);

} // namespace divcover
