#ifndef TSKSTREAM_REGRESSOR_HPP
#define TSKSTREAM_REGRESSOR_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tsk {

/// A structural change made in response to a drift detection.
struct DriftEvent {
    std::uint64_t instanceIndex = 0;
    std::uint32_t ruleId = 0;
    enum class Action { Removed, Merged } action = Action::Removed;
};

/// Test-then-train interface shared by the rule learner and baselines.
class Regressor {
public:
    virtual ~Regressor() = default;

    /// Predict on (x, y), then learn from it. Returns the prediction made
    /// before any update, or nullopt when the instance was skipped
    /// (non-finite input).
    virtual std::optional<double> processExample(std::span<const double> x, double y) = 0;

    /// Current model size (rule count for rule systems).
    virtual std::size_t modelSize() const = 0;

    virtual std::vector<DriftEvent> driftEvents() const { return {}; }
};

} // namespace tsk

#endif
