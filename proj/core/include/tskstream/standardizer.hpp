#ifndef TSKSTREAM_STANDARDIZER_HPP
#define TSKSTREAM_STANDARDIZER_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace tsk {

/// One-pass running mean/variance (Welford).
struct RunningStats {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) noexcept {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    /// Population standard deviation.
    double stddev() const noexcept;
    double variance() const noexcept { return n > 0 ? m2 / static_cast<double>(n) : 0.0; }
};

/// Per-feature online standardization. An instance is absorbed into the
/// statistics first and then mapped to z-scores, so the very first
/// instance (and any constant feature) standardizes to zero.
class OnlineStandardizer {
public:
    explicit OnlineStandardizer(std::size_t dimension) : stats_(dimension) {}

    std::size_t dimension() const noexcept { return stats_.size(); }
    std::uint64_t count() const noexcept { return stats_.empty() ? 0 : stats_[0].n; }

    /// Absorb x and return its standardized image.
    std::vector<double> absorbAndStandardize(std::span<const double> x);

    /// Standardize without updating (for replaying a frozen model).
    std::vector<double> standardize(std::span<const double> x) const;

    const RunningStats& featureStats(std::size_t j) const { return stats_[j]; }
    RunningStats& featureStats(std::size_t j) { return stats_[j]; }

private:
    std::vector<RunningStats> stats_;
};

} // namespace tsk

#endif
