#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace scenekge {

/// Counter-based generator: the k-th draw of a stream is splitmix64(seed + k * 0x9E3779B97F4A7C15).
///
/// Every distribution below is defined on top of raw 64-bit draws with fixed arithmetic, so
/// a given seed produces the same sequence on every platform and standard library. The
/// <random> distributions are deliberately not used because their algorithms are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t next() noexcept {
        ++counter_;
        return mix(seed_ + counter_ * kGolden);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, bound); bound must be > 0. Unbiased (rejection on the low word).
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

    /// Independent child stream; the same (parent seed, stream id) always yields the same child.
    Rng fork(std::uint64_t stream_id) const noexcept {
        return Rng(mix(seed_ ^ mix(stream_id + kGolden)));
    }

    template <typename T>
    void shuffle(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    std::uint64_t seed() const noexcept { return seed_; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace scenekge
