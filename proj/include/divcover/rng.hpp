#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>

namespace divcover {

/// Deterministic random stream used by every stochastic operator.
///
/// The draw contract is part of the reproducibility surface:
///   - coin() consumes exactly one engine output,
///   - uniform_below(m) consumes one engine output per rejection round
///     (unbiased) and consumes nothing for m == 1.
/// Operators document their draw order in terms of these two calls, so equal
/// seeds give bit-identical runs.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    bool coin() { return (engine_() & 1u) != 0; }

    /// Uniform integer in [0, bound); bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        assert(bound >= 1);
        if (bound == 1) return 0;
        // rejection below 2^64 mod bound keeps the draw exactly uniform
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace divcover
