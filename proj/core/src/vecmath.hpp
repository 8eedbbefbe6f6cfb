#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace scenekge::detail {

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double l2(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

// Cosine clamped to [-1, 1]; callers must reject zero norms first.
inline double cosine_with_norms(std::span<const double> a, double norm_a, std::span<const double> b,
                                double norm_b) noexcept {
    return std::clamp(dot(a, b) / (norm_a * norm_b), -1.0, 1.0);
}

}  // namespace scenekge::detail
