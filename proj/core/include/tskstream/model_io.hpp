#ifndef TSKSTREAM_MODEL_IO_HPP
#define TSKSTREAM_MODEL_IO_HPP

#include <span>
#include <string>

#include "tskstream/learner.hpp"
#include "tskstream/rule_set.hpp"
#include "tskstream/standardizer.hpp"

namespace tsk {

/// Read-only snapshot of a learned model; predicts on raw (unstandardized)
/// inputs using the frozen standardizer statistics.
class FrozenModel {
public:
    FrozenModel(RuleSet rules, OnlineStandardizer standardizer)
        : rules_(std::move(rules)), standardizer_(std::move(standardizer)) {}

    double predict(std::span<const double> x) const;

    const RuleSet& rules() const noexcept { return rules_; }

private:
    RuleSet rules_;
    OnlineStandardizer standardizer_;
};

/// Serialize the learner's rule system and standardizer state.
/// Membership functions dump as {variant, params}; rules as
/// {antecedents, consequent}.
std::string dumpModelJson(const Learner& learner);
void dumpModelJsonFile(const Learner& learner, const std::string& path);

FrozenModel loadModelJson(const std::string& text);
FrozenModel loadModelJsonFile(const std::string& path);

} // namespace tsk

#endif
