#include "tskstream/config.hpp"

namespace tsk {

std::string toString(SplitCriterion c) {
    return c == SplitCriterion::VarianceReduction ? "vr" : "er";
}

std::string toString(AdoptionStrategy s) {
    return s == AdoptionStrategy::Single ? "single" : "all";
}

SplitCriterion parseCriterion(const std::string& s) {
    if (s == "vr") return SplitCriterion::VarianceReduction;
    if (s == "er") return SplitCriterion::ErrorReduction;
    throw std::invalid_argument("unknown criterion '" + s + "' (expected vr|er)");
}

AdoptionStrategy parseStrategy(const std::string& s) {
    if (s == "single") return AdoptionStrategy::Single;
    if (s == "all") return AdoptionStrategy::All;
    throw std::invalid_argument("unknown strategy '" + s + "' (expected single|all)");
}

} // namespace tsk
