#include "tskstream/baselines.hpp"

#include <cmath>

namespace tsk {

std::optional<double> MeanPredictor::processExample(std::span<const double> x, double y) {
    for (double v : x)
        if (!std::isfinite(v)) return std::nullopt;
    if (!std::isfinite(y)) return std::nullopt;
    const double prediction = stats_.n ? stats_.mean : 0.0;
    stats_.add(y);
    return prediction;
}

LinearSgd::LinearSgd(std::size_t dimension, double eta)
    : standardizer_(dimension), coef_(dimension + 1, 0.0), eta_(eta) {}

std::optional<double> LinearSgd::processExample(std::span<const double> x, double y) {
    for (double v : x)
        if (!std::isfinite(v)) return std::nullopt;
    if (!std::isfinite(y)) return std::nullopt;

    const auto z = standardizer_.absorbAndStandardize(x);
    double prediction = coef_[0];
    for (std::size_t j = 0; j < z.size(); ++j) prediction += coef_[j + 1] * z[j];

    const double resid = y - prediction;
    coef_[0] += eta_ * resid;
    for (std::size_t j = 0; j < z.size(); ++j) coef_[j + 1] += eta_ * resid * z[j];
    return prediction;
}

} // namespace tsk
