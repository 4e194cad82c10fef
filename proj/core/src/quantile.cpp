#include "tskstream/quantile.hpp"

#include <algorithm>
#include <cmath>

namespace tsk {

void P2Quantile::add(double x) {
    ++count_;
    if (count_ <= 5) {
        heights_[count_ - 1] = x;
        if (count_ == 5) {
            std::sort(heights_.begin(), heights_.end());
            positions_ = {1, 2, 3, 4, 5};
            desired_ = {1, 1 + 2 * p_, 1 + 4 * p_, 3 + 2 * p_, 5};
            increments_ = {0, p_ / 2, p_, (1 + p_) / 2, 1};
        }
        return;
    }

    std::size_t k;
    if (x < heights_[0]) {
        heights_[0] = x;
        k = 0;
    } else if (x >= heights_[4]) {
        heights_[4] = x;
        k = 3;
    } else {
        k = 0;
        while (k < 3 && x >= heights_[k + 1]) ++k;
    }

    for (std::size_t i = k + 1; i < 5; ++i) positions_[i] += 1;
    for (std::size_t i = 0; i < 5; ++i) desired_[i] += increments_[i];

    for (std::size_t i = 1; i <= 3; ++i) {
        const double d = desired_[i] - positions_[i];
        const double below = positions_[i] - positions_[i - 1];
        const double above = positions_[i + 1] - positions_[i];
        if ((d >= 1.0 && above > 1.0) || (d <= -1.0 && below > 1.0)) {
            const double s = d >= 1.0 ? 1.0 : -1.0;
            // Piecewise-parabolic height prediction.
            const double qi = heights_[i];
            const double parabolic =
                qi + s / (positions_[i + 1] - positions_[i - 1]) *
                         ((below + s) * (heights_[i + 1] - qi) / above +
                          (above - s) * (qi - heights_[i - 1]) / below);
            if (heights_[i - 1] < parabolic && parabolic < heights_[i + 1]) {
                heights_[i] = parabolic;
            } else {
                const std::size_t n = s > 0 ? i + 1 : i - 1;
                heights_[i] = qi + s * (heights_[n] - qi) /
                                       (positions_[n] - positions_[i]) * std::abs(s);
            }
            positions_[i] += s;
        }
    }
}

double P2Quantile::value() const noexcept {
    if (count_ == 0) return 0.0;
    if (count_ < 5) {
        double mx = heights_[0];
        for (std::uint64_t i = 1; i < count_; ++i) mx = std::max(mx, heights_[i]);
        return mx;
    }
    return heights_[2];
}

} // namespace tsk
