#ifndef TSKSTREAM_HOEFFDING_HPP
#define TSKSTREAM_HOEFFDING_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace tsk {

/// Hoeffding bound eps = sqrt(ln(1/delta) * range^2 / (2n)).
/// n == 0 yields +inf, which blocks any expansion decision.
inline double hoeffdingEpsilon(double delta, std::uint64_t n, double range = 1.0) noexcept {
    if (n == 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(std::log(1.0 / delta) * range * range / (2.0 * static_cast<double>(n)));
}

/// Structural-growth penalty d^-2 * sqrt(|RS|) added to the bound.
inline double complexityPenalty(std::size_t featureCount, std::size_t ruleCount) noexcept {
    const double d = static_cast<double>(featureCount);
    return std::sqrt(static_cast<double>(ruleCount)) / (d * d);
}

} // namespace tsk

#endif
