#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace divcover {

/// Fixed-width set of vertices 1..width stored as a bit vector with a cached
/// popcount. One individual of the evolutionary algorithms.
class VertexSet {
public:
    explicit VertexSet(int width) : width_(width), size_(0), words_((width + 63) / 64, 0) {
        assert(width >= 0);
    }

    static VertexSet from_vertices(int width, std::span<const int> vertices) {
        VertexSet s(width);
        for (int v : vertices) {
            if (v < 1 || v > width)
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " outside [1, " + std::to_string(width) + "]");
            s.insert(v);
        }
        return s;
    }

    static VertexSet from_vertices(int width, std::initializer_list<int> vertices) {
        return from_vertices(width, std::span<const int>(vertices.begin(), vertices.size()));
    }

    static VertexSet full(int width) {
        VertexSet s(width);
        for (int v = 1; v <= width; ++v) s.insert(v);
        return s;
    }

    int width() const noexcept { return width_; }
    int size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool contains(int v) const {
        assert(v >= 1 && v <= width_);
        return (words_[(v - 1) >> 6] >> ((v - 1) & 63)) & 1u;
    }

    void insert(int v) {
        assert(v >= 1 && v <= width_);
        std::uint64_t& w = words_[(v - 1) >> 6];
        const std::uint64_t bit = std::uint64_t{1} << ((v - 1) & 63);
        if (!(w & bit)) {
            w |= bit;
            ++size_;
        }
    }

    void erase(int v) {
        assert(v >= 1 && v <= width_);
        std::uint64_t& w = words_[(v - 1) >> 6];
        const std::uint64_t bit = std::uint64_t{1} << ((v - 1) & 63);
        if (w & bit) {
            w &= ~bit;
            --size_;
        }
    }

    /// Ascending 1-based vertex labels.
    std::vector<int> vertices() const {
        std::vector<int> out;
        out.reserve(size_);
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                out.push_back(static_cast<int>(wi * 64 + b + 1));
                w &= w - 1;
            }
        }
        return out;
    }

    /// "11010000" for {1,2,4} at width 8; vertex 1 first.
    std::string bitstring() const {
        std::string s(width_, '0');
        for (int v = 1; v <= width_; ++v)
            if (contains(v)) s[v - 1] = '1';
        return s;
    }

    /// "{1,2,4}"
    std::string vertex_list_text() const {
        std::string s = "{";
        bool first = true;
        for (int v : vertices()) {
            if (!first) s += ',';
            s += std::to_string(v);
            first = false;
        }
        s += '}';
        return s;
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    int width_;
    int size_;
    std::vector<std::uint64_t> words_;
};

/// Bitstring-lexicographic order (vertex 1 is the most significant position,
/// '0' < '1'). The canonical order for enumerations and witnesses.
inline bool lex_less(const VertexSet& a, const VertexSet& b) {
    assert(a.width() == b.width());
    const auto wa = a.words(), wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const std::uint64_t diff = wa[i] ^ wb[i];
        if (diff) {
            const int bit = std::countr_zero(diff);
            return ((wa[i] >> bit) & 1u) == 0;
        }
    }
    return false;
}

struct LexLess {
    bool operator()(const VertexSet& a, const VertexSet& b) const { return lex_less(a, b); }
};

} // namespace divcover
