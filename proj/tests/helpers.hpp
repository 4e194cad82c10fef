#ifndef TSKSTREAM_TESTS_HELPERS_HPP
#define TSKSTREAM_TESTS_HELPERS_HPP

#include <functional>
#include <random>
#include <vector>

#include "tskstream/config.hpp"
#include "tskstream/learner.hpp"
#include "tskstream/stream.hpp"

namespace tsk_test {

inline tsk::LearnerConfig config(tsk::SplitCriterion c, tsk::AdoptionStrategy s,
                                 std::uint64_t grace = 50) {
    tsk::LearnerConfig cfg;
    cfg.criterion = c;
    cfg.strategy = s;
    cfg.gracePeriod = grace;
    return cfg;
}

/// Config for tests of structural mechanics: the detector coverage gate is
/// set above 1 so drift retraction can only happen through direct calls.
inline tsk::LearnerConfig structuralConfig(tsk::SplitCriterion c, tsk::AdoptionStrategy s,
                                           std::uint64_t grace = 50) {
    tsk::LearnerConfig cfg = config(c, s, grace);
    cfg.adwinCoverage = 1.1;
    return cfg;
}

/// Two-feature labeled batch with x ~ U(-1,1)^2 and y = f(x1, x2).
inline std::vector<tsk::Instance> labeledBatch(
    int n, std::uint64_t seed, const std::function<double(double, double)>& f) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<tsk::Instance> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x1 = u(rng);
        const double x2 = u(rng);
        out.push_back({{x1, x2}, f(x1, x2)});
    }
    return out;
}

/// Like labeledBatch but with |x1| >= 0.3, keeping a margin around a step
/// at x1 = 0 so fuzzy boundary overlap cannot leak targets across it.
inline std::vector<tsk::Instance> gappedBatch(
    int n, std::uint64_t seed, const std::function<double(double, double)>& f) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<tsk::Instance> out;
    out.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(out.size()) < n) {
        const double x1 = u(rng);
        const double x2 = u(rng);
        if (std::abs(x1) < 0.3) continue;
        out.push_back({{x1, x2}, f(x1, x2)});
    }
    return out;
}

inline void feed(tsk::Learner& l, const std::vector<tsk::Instance>& batch) {
    for (const auto& inst : batch) l.processExample(inst.x, inst.y);
}

/// Feed until the rule count changes or the batch runs out; returns true
/// when a structural change happened.
inline bool feedUntilStructureChange(tsk::Learner& l,
                                     const std::vector<tsk::Instance>& batch) {
    const std::size_t before = l.rules().size();
    for (const auto& inst : batch) {
        l.processExample(inst.x, inst.y);
        if (l.rules().size() != before) return true;
    }
    return false;
}

} // namespace tsk_test

#endif
