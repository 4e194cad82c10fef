#ifndef TSKSTREAM_LEARNER_HPP
#define TSKSTREAM_LEARNER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tskstream/adwin.hpp"
#include "tskstream/config.hpp"
#include "tskstream/membership.hpp"
#include "tskstream/quantile.hpp"
#include "tskstream/regressor.hpp"
#include "tskstream/rule_set.hpp"
#include "tskstream/split_tree.hpp"
#include "tskstream/standardizer.hpp"

namespace tsk {

/// One candidate extension of a rule on a single feature: the two child
/// antecedents around the splitting value q, their own consequents, and
/// the error accumulators driving the error-reduction decision.
struct CandidateExtension {
    double q = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    MembershipFunction lower;            // covers the half below q
    MembershipFunction upper;            // covers the half above q
    std::vector<double> lowerCoef;
    std::vector<double> upperCoef;
    double altSse = 0.0;                 // SSE of the system with this extension adopted
    double lowerWeightedSse = 0.0;       // activation-weighted child errors,
    double upperWeightedSse = 0.0;       // used by the single-extension choice
};

/// Incremental TSK rule learner: one pass per example, prediction strictly
/// before any state change. Owns the rule set, the per-rule split
/// statistics and drift detectors, and the online input standardizer.
class Learner : public Regressor {
public:
    Learner(std::size_t dimension, LearnerConfig config);

    std::optional<double> processExample(std::span<const double> x, double y) override;
    std::size_t modelSize() const override { return rules_.size(); }
    std::vector<DriftEvent> driftEvents() const override { return drifts_; }

    /// Prediction on an already-standardized input, with the uncovered
    /// fallback (unweighted mean of rule outputs) applied.
    double predictStandardized(std::span<const double> z) const;

    const RuleSet& rules() const noexcept { return rules_; }
    const LearnerConfig& config() const noexcept { return config_; }
    const OnlineStandardizer& standardizer() const noexcept { return standardizer_; }
    std::uint64_t instancesSeen() const noexcept { return instances_; }
    std::uint64_t instancesSkipped() const noexcept { return skipped_; }

    /// Candidate extensions of one rule (error-reduction bookkeeping).
    const std::vector<CandidateExtension>& candidatesOf(RuleId id) const;

    /// Drive the drift reaction directly (exposed for tests).
    void retractRule(RuleId id);

private:
    struct RuleRuntime {
        AdwinDetector detector;
        std::vector<RunningStats> coveredStats;  // per-feature stats of covered inputs
        std::uint64_t covered = 0;               // examples covered since creation
        std::uint64_t sinceCheck = 0;            // variance-reduction cadence
        std::vector<SplitTree> trees;            // variance-reduction statistics
        std::vector<CandidateExtension> candidates;
        bool candidatesReady = false;
    };

    struct LineageRecord {
        std::optional<RuleLineage> lineage;              // how the rule was created
        std::optional<std::pair<RuleId, RuleId>> children;  // set when it was split
    };

    RuleRuntime makeRuntime() const;
    void registerRule(RuleId id, const std::optional<RuleLineage>& lineage);

    // Per-example caches for one pass of consequent updates: activations
    // are fixed for the example while the outputs (and their weighted sum
    // m2) track the coefficients as they move rule by rule.
    struct ConsequentSweep {
        std::vector<RuleId> ids;
        std::vector<double> mu;
        std::vector<double> lin;
        double m1 = 0.0;
        double m2 = 0.0;
        double zNormSq = 1.0;  // 1 + z.z, the output shift per unit SGD scale
    };
    ConsequentSweep beginSweep(std::span<const double> z) const;

    void feedDetectors(std::span<const double> z, double y);
    void learnVarianceReduction(std::span<const double> z, double y);
    void learnErrorReduction(std::span<const double> z, double y);
    void accumulateErrorStats(const ConsequentSweep& sweep, std::span<const double> z,
                              double y);
    void initCandidates(RuleId id, std::span<const double> z);
    void shiftCandidates(RuleId id, std::span<const double> z, double y, double psi);
    void updateConsequents(ConsequentSweep& sweep, std::size_t idx, std::span<const double> z,
                           double y, bool withCandidates);

    void checkExpansionVr(std::span<const double> z);
    void checkExpansionEr(std::span<const double> z);
    void adopt(RuleId parentId, std::size_t feature, const MembershipFunction& lowerAnt,
               const MembershipFunction& upperAnt, std::vector<double> lowerCoef,
               std::vector<double> upperCoef, std::optional<bool> keepLowerOnly,
               std::span<const double> z);
    void resetErrorWindow();

    std::vector<RuleId> liveDescendants(RuleId id) const;

    LearnerConfig config_;
    RuleSet rules_;
    OnlineStandardizer standardizer_;
    std::unordered_map<RuleId, RuleRuntime> runtime_;
    std::unordered_map<RuleId, LineageRecord> lineage_;

    P2Quantile errorScale_{0.99};
    double currentSse_ = 0.0;        // error-reduction gate statistic
    std::uint64_t sinceStructure_ = 0;  // examples since the last structural change
    std::uint64_t sinceGlobalCheck_ = 0;

    std::vector<DriftEvent> drifts_;
    std::uint64_t instances_ = 0;
    std::uint64_t skipped_ = 0;
};

} // namespace tsk

#endif
