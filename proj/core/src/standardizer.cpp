#include "tskstream/standardizer.hpp"

#include <cmath>
#include <stdexcept>

namespace tsk {

namespace {
constexpr double kSigmaFloor = 1e-12;
}

double RunningStats::stddev() const noexcept {
    return std::sqrt(variance());
}

std::vector<double> OnlineStandardizer::absorbAndStandardize(std::span<const double> x) {
    if (x.size() != stats_.size())
        throw std::invalid_argument("OnlineStandardizer: dimension mismatch");
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        stats_[j].add(x[j]);
        z[j] = (x[j] - stats_[j].mean) / std::max(stats_[j].stddev(), kSigmaFloor);
    }
    return z;
}

std::vector<double> OnlineStandardizer::standardize(std::span<const double> x) const {
    if (x.size() != stats_.size())
        throw std::invalid_argument("OnlineStandardizer: dimension mismatch");
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        z[j] = (x[j] - stats_[j].mean) / std::max(stats_[j].stddev(), kSigmaFloor);
    }
    return z;
}

} // namespace tsk
