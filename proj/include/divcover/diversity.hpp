#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "divcover/vertex_set.hpp"

namespace divcover {

/// Number of positions where x and y differ. Throws on width mismatch.
int hamming(const VertexSet& x, const VertexSet& y);

/// Ordered multiset of equal-width individuals plus an eagerly maintained
/// per-position one-count ledger. Member order is bookkeeping only; every
/// diversity quantity is order-invariant. Mutation is single-threaded by
/// design; concurrent readers need a snapshot copy.
class Population {
public:
    Population() = default;
    explicit Population(int width) : width_(width), counts_(width, 0) {}
    explicit Population(std::vector<VertexSet> members);

    int width() const noexcept { return width_; }
    std::size_t size() const noexcept { return members_.size(); }
    const VertexSet& member(std::size_t j) const;
    std::span<const VertexSet> members() const noexcept { return members_; }

    /// Number of members containing vertex v.
    int count(int v) const;

    void add(VertexSet s);
    void remove_at(std::size_t j);
    void replace(std::size_t j, VertexSet s);

    /// Ledger-vs-rebuild coherence check (debug oracle).
    bool counts_coherent() const;

    friend bool operator==(const Population&, const Population&) = default;

private:
    void add_to_counts(const VertexSet& s, int delta);

    int width_ = 0;
    std::vector<VertexSet> members_;
    std::vector<int> counts_;
};

/// Total Hamming distance over all unordered member pairs, computed from the
/// count ledger as sum_i c_i * (mu - c_i). Exact integer arithmetic.
std::int64_t total_hamming(const Population& p);

/// total_hamming(p with member j replaced by c) - total_hamming(p), in
/// O(width) from the ledger without rebuilding. Per changed position, with
/// c_i the count before the change: gaining a one contributes
/// mu - 2*c_i - 1, losing one contributes 2*c_i - mu - 1.
std::int64_t replace_delta(const Population& p, std::size_t j, const VertexSet& c);

} // namespace divcover
