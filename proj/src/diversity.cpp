#include "divcover/diversity.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace divcover {

int hamming(const VertexSet& x, const VertexSet& y) {
    if (x.width() != y.width())
        throw std::invalid_argument("hamming distance needs equal widths, got " +
                                    std::to_string(x.width()) + " and " +
                                    std::to_string(y.width()));
    const auto wx = x.words(), wy = y.words();
    int d = 0;
    for (std::size_t i = 0; i < wx.size(); ++i) d += std::popcount(wx[i] ^ wy[i]);
    return d;
}

Population::Population(std::vector<VertexSet> members) {
    if (!members.empty()) {
        width_ = members[0].width();
        counts_.assign(width_, 0);
        for (const auto& s : members) {
            if (s.width() != width_)
                throw std::invalid_argument("population members must share one width");
            add_to_counts(s, +1);
        }
    }
    members_ = std::move(members);
}

const VertexSet& Population::member(std::size_t j) const {
    if (j >= members_.size()) throw std::out_of_range("population member index out of range");
    return members_[j];
}

int Population::count(int v) const {
    if (v < 1 || v > width_) throw std::out_of_range("vertex outside population width");
    return counts_[v - 1];
}

void Population::add(VertexSet s) {
    if (members_.empty() && width_ == 0) {
        width_ = s.width();
        counts_.assign(width_, 0);
    }
    if (s.width() != width_)
        throw std::invalid_argument("population members must share one width");
    add_to_counts(s, +1);
    members_.push_back(std::move(s));
}

void Population::remove_at(std::size_t j) {
    if (j >= members_.size()) throw std::out_of_range("population member index out of range");
    add_to_counts(members_[j], -1);
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(j));
}

void Population::replace(std::size_t j, VertexSet s) {
    if (j >= members_.size()) throw std::out_of_range("population member index out of range");
    if (s.width() != width_)
        throw std::invalid_argument("population members must share one width");
    add_to_counts(members_[j], -1);
    add_to_counts(s, +1);
    members_[j] = std::move(s);
}

bool Population::counts_coherent() const {
    std::vector<int> fresh(width_, 0);
    for (const auto& s : members_)
        for (int v : s.vertices()) ++fresh[v - 1];
    return fresh == counts_;
}

void Population::add_to_counts(const VertexSet& s, int delta) {
    for (int v : s.vertices()) counts_[v - 1] += delta;
}

std::int64_t total_hamming(const Population& p) {
    const auto mu = static_cast<std::int64_t>(p.size());
    std::int64_t d = 0;
    for (int v = 1; v <= p.width(); ++v) {
        const std::int64_t c = p.count(v);
        d += c * (mu - c);
    }
    return d;
}

std::int64_t replace_delta(const Population& p, std::size_t j, const VertexSet& c) {
    if (j >= p.size()) throw std::out_of_range("population member index out of range");
    if (c.width() != p.width())
        throw std::invalid_argument("replacement width does not match population width");
    const auto mu = static_cast<std::int64_t>(p.size());
    const auto wold = p.member(j).words();
    const auto wnew = c.words();
    std::int64_t delta = 0;
    for (std::size_t wi = 0; wi < wold.size(); ++wi) {
        std::uint64_t diff = wold[wi] ^ wnew[wi];
        while (diff) {
            const int b = std::countr_zero(diff);
            diff &= diff - 1;
            const int v = static_cast<int>(wi * 64 + b + 1);
            const std::int64_t cnt = p.count(v);
            if ((wnew[wi] >> b) & 1u)
                delta += mu - 2 * cnt - 1; // position gains a one
            else
                delta += 2 * cnt - mu - 1; // position loses a one
        }
    }
    return delta;
}

} // namespace divcover
