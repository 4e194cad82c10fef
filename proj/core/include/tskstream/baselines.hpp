#ifndef TSKSTREAM_BASELINES_HPP
#define TSKSTREAM_BASELINES_HPP

#include <vector>

#include "tskstream/regressor.hpp"
#include "tskstream/standardizer.hpp"

namespace tsk {

/// Predicts the running mean of the targets seen so far (0 before any).
class MeanPredictor final : public Regressor {
public:
    std::optional<double> processExample(std::span<const double> x, double y) override;
    std::size_t modelSize() const override { return 0; }

private:
    RunningStats stats_;
};

/// Plain online linear regression by stochastic gradient descent on
/// standardized inputs, no regularization.
class LinearSgd final : public Regressor {
public:
    explicit LinearSgd(std::size_t dimension, double eta = 0.01);

    std::optional<double> processExample(std::span<const double> x, double y) override;
    std::size_t modelSize() const override { return 1; }

    const std::vector<double>& coefficients() const noexcept { return coef_; }

private:
    OnlineStandardizer standardizer_;
    std::vector<double> coef_;
    double eta_;
};

} // namespace tsk

#endif
