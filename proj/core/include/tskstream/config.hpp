#ifndef TSKSTREAM_CONFIG_HPP
#define TSKSTREAM_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsk {

/// Which split-quality measure gates rule expansion.
enum class SplitCriterion { VarianceReduction, ErrorReduction };

/// Whether an adopted split keeps one child or both.
enum class AdoptionStrategy { Single, All };

/// Learner knobs. Defaults follow the usual stream-rule-induction setup:
/// delta/tau at 0.01/0.05, a small shared learning rate, and overlap
/// half-widths proportional to the running feature spread.
struct LearnerConfig {
    SplitCriterion criterion = SplitCriterion::VarianceReduction;
    AdoptionStrategy strategy = AdoptionStrategy::All;

    double delta = 0.01;          // Hoeffding confidence
    double tau = 0.05;            // tie-breaking constant
    double eta = 0.01;            // learning rate (consequents and q shifts)
    std::uint64_t gracePeriod = 200;
    double rhoFactor1 = 0.05;     // rho1 = k1 * sigma_j
    double rhoFactor2 = 0.15;     // rho2 = k2 * sigma_j
    double adwinDelta = 0.002;
    double adwinCoverage = 0.1;   // min activation for feeding a rule's detector
    std::uint64_t maxRules = 0;   // 0 = unlimited
    std::size_t ebstKeyCap = 10000;
    bool ebstScaleTargets = false;  // alternative reading: variance of Psi-scaled targets

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
        if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
        if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
        if (gracePeriod < 1) throw std::invalid_argument("grace period must be >= 1");
        if (!(rhoFactor1 > 0.0 && rhoFactor1 < rhoFactor2))
            throw std::invalid_argument("rho factors must satisfy 0 < k1 < k2");
        if (!(adwinDelta > 0.0 && adwinDelta < 1.0))
            throw std::invalid_argument("adwin delta must be in (0,1)");
    }
};

std::string toString(SplitCriterion c);
std::string toString(AdoptionStrategy s);
SplitCriterion parseCriterion(const std::string& s);
AdoptionStrategy parseStrategy(const std::string& s);

} // namespace tsk

#endif
