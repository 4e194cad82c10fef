#ifndef TSKSTREAM_RULE_SET_HPP
#define TSKSTREAM_RULE_SET_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tskstream/membership.hpp"

namespace tsk {

using RuleId = std::uint32_t;

/// Lineage of a rule created by splitting a parent on one feature.
/// sibling is absent when the other child was discarded (single-extension).
struct RuleLineage {
    RuleId parent = 0;
    std::optional<RuleId> sibling;
    std::size_t feature = 0;
};

/// One TSK rule: d antecedent constraints combined by the Goedel t-norm,
/// and an affine consequent with the intercept in coefficient 0.
struct Rule {
    std::vector<MembershipFunction> antecedents;
    std::vector<double> consequent;   // size d+1
    std::uint64_t coveredCount = 0;
    std::optional<RuleLineage> lineage;

    /// Degree to which x satisfies the premise: min over antecedents.
    double activation(std::span<const double> x) const;
    /// Affine consequent output w0 + sum_j w_j x_j.
    double linearOutput(std::span<const double> x) const;
    bool allVoid() const noexcept;
};

/// The live rule system. Holds at least one rule at all times; a fresh
/// set contains exactly one default rule with all-void antecedents and a
/// zero consequent.
class RuleSet {
public:
    explicit RuleSet(std::size_t dimension);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Id of the all-void default rule while one is live.
    std::optional<RuleId> defaultRuleId() const noexcept { return defaultId_; }
    bool isDefault(RuleId id) const noexcept { return defaultId_ && *defaultId_ == id; }

    RuleId add(Rule rule);
    /// Removes a rule; refuses to remove the last one.
    void remove(RuleId id);

    Rule& at(RuleId id);
    const Rule& at(RuleId id) const;
    bool contains(RuleId id) const noexcept;

    std::vector<RuleId> ids() const;

    /// Raw activations mu_i(x) in iteration (insertion) order.
    std::vector<double> activations(std::span<const double> x) const;

    /// Normalized firing weights Psi_i = mu_i / sum_j mu_j, summing to 1.
    /// nullopt when no rule fires (the input is uncovered).
    std::optional<std::vector<double>> normalizedWeights(std::span<const double> x) const;

    /// Weighted TSK output sum_i Psi_i(x) l_i(x); nullopt when uncovered.
    std::optional<double> predict(std::span<const double> x) const;

    /// Unweighted mean of all rule outputs, the uncovered-input fallback.
    double meanOutput(std::span<const double> x) const;

    /// Re-scan for an all-void rule after structural changes.
    void refreshDefaultId() noexcept;

    template <typename F>
    void forEach(F&& f) const {
        for (const auto& e : entries_) f(e.id, e.rule);
    }

private:
    struct Entry {
        RuleId id;
        Rule rule;
    };

    std::size_t indexOf(RuleId id) const;

    std::size_t dimension_;
    std::vector<Entry> entries_;
    RuleId nextId_ = 0;
    std::optional<RuleId> defaultId_;
};

} // namespace tsk

#endif
