#include "tskstream/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tskstream/hoeffding.hpp"
#include "tskstream/induction.hpp"

namespace tsk {

namespace {

double sigmaFloor(double q) noexcept {
    return 1e-6 * std::max(1.0, std::abs(q));
}

double dotAffine(const std::vector<double>& coef, std::span<const double> z) noexcept {
    double out = coef[0];
    for (std::size_t j = 0; j < z.size(); ++j) out += coef[j + 1] * z[j];
    return out;
}

// coef += scale * (1, z_1, ..., z_d)
void sgdStep(std::vector<double>& coef, double scale, std::span<const double> z) noexcept {
    coef[0] += scale;
    for (std::size_t j = 0; j < z.size(); ++j) coef[j + 1] += scale * z[j];
}

std::vector<double> antecedentDegrees(const Rule& r, std::span<const double> z) {
    std::vector<double> deg(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) deg[j] = r.antecedents[j].eval(z[j]);
    return deg;
}

// excl[j] = min over k != j of deg[k]; 1 when there is a single feature.
std::vector<double> minExcluding(const std::vector<double>& deg) {
    const std::size_t n = deg.size();
    std::vector<double> excl(n, 1.0);
    if (n <= 1) return excl;
    std::vector<double> suffix(n + 1, 1.0);
    for (std::size_t j = n; j-- > 0;) suffix[j] = std::min(deg[j], suffix[j + 1]);
    double prefix = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        excl[j] = std::min(prefix, suffix[j + 1]);
        prefix = std::min(prefix, deg[j]);
    }
    return excl;
}

} // namespace

Learner::Learner(std::size_t dimension, LearnerConfig config)
    : config_(config), rules_(dimension), standardizer_(dimension) {
    if (dimension == 0) throw std::invalid_argument("Learner: dimension must be positive");
    config_.validate();
    const RuleId def = *rules_.defaultRuleId();
    runtime_.emplace(def, makeRuntime());
    registerRule(def, std::nullopt);
}

Learner::RuleRuntime Learner::makeRuntime() const {
    RuleRuntime rt;
    rt.detector = AdwinDetector(config_.adwinDelta);
    rt.coveredStats.assign(rules_.dimension(), RunningStats{});
    if (config_.criterion == SplitCriterion::VarianceReduction) {
        rt.trees.assign(rules_.dimension(), SplitTree(config_.ebstKeyCap));
    }
    return rt;
}

void Learner::registerRule(RuleId id, const std::optional<RuleLineage>& lineage) {
    lineage_[id] = LineageRecord{lineage, std::nullopt};
}

double Learner::predictStandardized(std::span<const double> z) const {
    if (auto p = rules_.predict(z)) return *p;
    return rules_.meanOutput(z);
}

const std::vector<CandidateExtension>& Learner::candidatesOf(RuleId id) const {
    return runtime_.at(id).candidates;
}

std::optional<double> Learner::processExample(std::span<const double> x, double y) {
    if (x.size() != rules_.dimension())
        throw std::invalid_argument("Learner::processExample: dimension mismatch");
    bool finite = std::isfinite(y);
    for (double v : x) finite = finite && std::isfinite(v);
    if (!finite) {
        ++skipped_;
        return std::nullopt;
    }

    const std::vector<double> z = standardizer_.absorbAndStandardize(x);

    // Test first: the prediction never sees this example's target.
    const double prediction = predictStandardized(z);

    feedDetectors(z, y);

    if (config_.criterion == SplitCriterion::ErrorReduction) {
        learnErrorReduction(z, y);
        ++sinceStructure_;
        ++sinceGlobalCheck_;
        if (sinceGlobalCheck_ >= config_.gracePeriod) {
            sinceGlobalCheck_ = 0;
            checkExpansionEr(z);
        }
    } else {
        learnVarianceReduction(z, y);
        checkExpansionVr(z);
    }

    ++instances_;
    return prediction;
}

void Learner::feedDetectors(std::span<const double> z, double y) {
    for (RuleId id : rules_.ids()) {
        if (!rules_.contains(id)) continue;  // removed by an earlier retraction this round
        const Rule& r = rules_.at(id);
        if (r.activation(z) < config_.adwinCoverage) continue;
        const double err = std::abs(y - r.linearOutput(z));
        errorScale_.add(err);
        const double scale = std::max(errorScale_.value(), 1e-12);
        const double v = std::min(err / scale, 1.0);
        auto& det = runtime_.at(id).detector;
        const double meanBefore = det.mean();
        // A window cut on a falling error level is ordinary convergence;
        // only a rise in the retained level counts as a performance drop.
        if (det.add(v) && det.mean() > meanBefore) retractRule(id);
    }
}

void Learner::retractRule(RuleId id) {
    if (rules_.size() <= 1) {
        runtime_.at(id).detector.reset();
        return;
    }

    if (config_.strategy == AdoptionStrategy::Single) {
        if (rules_.isDefault(id)) {
            runtime_.at(id).detector.reset();
            return;
        }
        rules_.remove(id);
        runtime_.erase(id);
        drifts_.push_back({instances_, id, DriftEvent::Action::Removed});
        if (config_.criterion == SplitCriterion::ErrorReduction) resetErrorWindow();
        return;
    }

    // All-extensions: widen the sibling side by the retracted antecedent.
    bool merged = false;
    const auto lin = rules_.at(id).lineage;
    if (lin && lin->sibling) {
        const std::size_t j = lin->feature;
        const MembershipFunction pAnt = rules_.at(id).antecedents[j];
        for (RuleId t : liveDescendants(*lin->sibling)) {
            if (t == id) continue;
            auto widened = unionMembership(pAnt, rules_.at(t).antecedents[j]);
            if (!widened) continue;  // does not border the vacated region
            rules_.at(t).antecedents[j] = *widened;
            auto& rt = runtime_.at(t);
            rt.detector.reset();
            if (config_.criterion == SplitCriterion::VarianceReduction)
                rt.trees.assign(rules_.dimension(), SplitTree(config_.ebstKeyCap));
            rt.candidates.clear();
            rt.candidatesReady = false;
            merged = true;
        }
        if (merged && rules_.contains(*lin->sibling)) {
            // The sibling absorbs the parent's region and takes its lineage.
            const auto parentLin = lineage_.at(lin->parent).lineage;
            rules_.at(*lin->sibling).lineage = parentLin;
            lineage_[*lin->sibling].lineage = parentLin;
        }
    }
    rules_.remove(id);
    runtime_.erase(id);
    rules_.refreshDefaultId();
    drifts_.push_back({instances_, id,
                       merged ? DriftEvent::Action::Merged : DriftEvent::Action::Removed});
    if (config_.criterion == SplitCriterion::ErrorReduction) resetErrorWindow();
}

std::vector<RuleId> Learner::liveDescendants(RuleId id) const {
    std::vector<RuleId> out;
    std::vector<RuleId> stack{id};
    while (!stack.empty()) {
        const RuleId cur = stack.back();
        stack.pop_back();
        if (rules_.contains(cur)) {
            out.push_back(cur);
            continue;
        }
        const auto it = lineage_.find(cur);
        if (it == lineage_.end() || !it->second.children) continue;
        stack.push_back(it->second.children->second);
        stack.push_back(it->second.children->first);
    }
    return out;
}

Learner::ConsequentSweep Learner::beginSweep(std::span<const double> z) const {
    ConsequentSweep sweep;
    sweep.ids = rules_.ids();
    sweep.mu.resize(sweep.ids.size());
    sweep.lin.resize(sweep.ids.size());
    for (std::size_t i = 0; i < sweep.ids.size(); ++i) {
        const Rule& r = rules_.at(sweep.ids[i]);
        sweep.mu[i] = r.activation(z);
        sweep.lin[i] = sweep.mu[i] > 0.0 ? r.linearOutput(z) : 0.0;
        sweep.m1 += sweep.mu[i];
        sweep.m2 += sweep.mu[i] * sweep.lin[i];
    }
    sweep.zNormSq = 1.0;
    for (double v : z) sweep.zNormSq += v * v;
    return sweep;
}

void Learner::learnVarianceReduction(std::span<const double> z, double y) {
    ConsequentSweep sweep = beginSweep(z);
    if (!(sweep.m1 > 0.0)) return;

    for (std::size_t i = 0; i < sweep.ids.size(); ++i) {
        if (!(sweep.mu[i] > 0.0)) continue;
        const double psi = sweep.mu[i] / sweep.m1;
        auto& rt = runtime_.at(sweep.ids[i]);
        Rule& r = rules_.at(sweep.ids[i]);
        ++rt.covered;
        ++rt.sinceCheck;
        ++r.coveredCount;
        const double value = config_.ebstScaleTargets ? psi * y : y;
        for (std::size_t j = 0; j < z.size(); ++j) {
            rt.coveredStats[j].add(z[j]);
            rt.trees[j].insert(z[j], psi, value);
        }
    }
    for (std::size_t i = 0; i < sweep.ids.size(); ++i) {
        if (sweep.mu[i] > 0.0) updateConsequents(sweep, i, z, y, /*withCandidates=*/false);
    }
}

void Learner::learnErrorReduction(std::span<const double> z, double y) {
    ConsequentSweep sweep = beginSweep(z);
    accumulateErrorStats(sweep, z, y);
    if (!(sweep.m1 > 0.0)) return;

    for (std::size_t i = 0; i < sweep.ids.size(); ++i) {
        if (!(sweep.mu[i] > 0.0)) continue;
        auto& rt = runtime_.at(sweep.ids[i]);
        ++rt.covered;
        ++rules_.at(sweep.ids[i]).coveredCount;
        for (std::size_t j = 0; j < z.size(); ++j) rt.coveredStats[j].add(z[j]);

        if (!rt.candidatesReady) {
            initCandidates(sweep.ids[i], z);
            continue;
        }
        shiftCandidates(sweep.ids[i], z, y, sweep.mu[i] / sweep.m1);
        updateConsequents(sweep, i, z, y, /*withCandidates=*/true);
    }
}

void Learner::accumulateErrorStats(const ConsequentSweep& sweep, std::span<const double> z,
                                   double y) {
    const double yhat = sweep.m1 > 0.0 ? sweep.m2 / sweep.m1 : rules_.meanOutput(z);
    currentSse_ += (y - yhat) * (y - yhat);

    for (std::size_t i = 0; i < sweep.ids.size(); ++i) {
        auto& rt = runtime_.at(sweep.ids[i]);
        if (!rt.candidatesReady) continue;
        const Rule& r = rules_.at(sweep.ids[i]);
        const auto deg = antecedentDegrees(r, z);
        const auto excl = minExcluding(deg);
        for (std::size_t j = 0; j < rt.candidates.size(); ++j) {
            auto& cand = rt.candidates[j];
            const double muLo = std::min(excl[j], cand.lower.eval(z[j]));
            const double muHi = std::min(excl[j], cand.upper.eval(z[j]));
            const double lLo = dotAffine(cand.lowerCoef, z);
            const double lHi = dotAffine(cand.upperCoef, z);
            const double m1p = sweep.m1 - sweep.mu[i] + muLo + muHi;
            const double m2p = sweep.m2 - sweep.mu[i] * sweep.lin[i] + muLo * lLo + muHi * lHi;
            const double alt = m1p > 0.0 ? m2p / m1p : yhat;
            cand.altSse += (y - alt) * (y - alt);
            cand.lowerWeightedSse += muLo * (y - lLo) * (y - lLo);
            cand.upperWeightedSse += muHi * (y - lHi) * (y - lHi);
        }
    }
}

void Learner::initCandidates(RuleId id, std::span<const double> z) {
    auto& rt = runtime_.at(id);
    const Rule& r = rules_.at(id);
    rt.candidates.clear();
    rt.candidates.reserve(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        CandidateExtension cand;
        cand.q = rt.coveredStats[j].mean;
        const double sigma = std::max(rt.coveredStats[j].stddev(), sigmaFloor(cand.q));
        cand.rho1 = config_.rhoFactor1 * sigma;
        cand.rho2 = config_.rhoFactor2 * sigma;
        std::tie(cand.lower, cand.upper) =
            splitMembership(r.antecedents[j], cand.q, cand.rho1, cand.rho2);
        cand.q = r.antecedents[j].clampToCore(cand.q);
        cand.lowerCoef = r.consequent;
        cand.upperCoef = r.consequent;
        rt.candidates.push_back(std::move(cand));
    }
    rt.candidatesReady = true;
}

void Learner::shiftCandidates(RuleId id, std::span<const double> z, double y, double psi) {
    auto& rt = runtime_.at(id);
    const Rule& r = rules_.at(id);
    for (std::size_t j = 0; j < rt.candidates.size(); ++j) {
        auto& cand = rt.candidates[j];
        const double m1 = cand.lower.eval(z[j]);
        const double m2 = cand.upper.eval(z[j]);
        const double r1 = dotAffine(cand.lowerCoef, z) - y;
        const double r2 = dotAffine(cand.upperCoef, z) - y;
        cand.q = shiftSplitValue(cand.q, config_.eta, psi, m1, m2, r1 * r1, r2 * r2);
        const auto& ant = r.antecedents[j];
        cand.q = std::min(std::max(cand.q, ant.supportLo()), ant.supportHi());
        const double sigma = std::max(rt.coveredStats[j].stddev(), sigmaFloor(cand.q));
        cand.rho1 = config_.rhoFactor1 * sigma;
        cand.rho2 = config_.rhoFactor2 * sigma;
        std::tie(cand.lower, cand.upper) = splitMembership(ant, cand.q, cand.rho1, cand.rho2);
        cand.q = ant.clampToCore(cand.q);
    }
}

void Learner::updateConsequents(ConsequentSweep& sweep, std::size_t idx,
                                std::span<const double> z, double y, bool withCandidates) {
    const RuleId id = sweep.ids[idx];
    Rule& rule = rules_.at(id);
    const double mu = sweep.mu[idx];
    if (!(mu > 0.0) || !(sweep.m1 > 0.0)) return;
    const double li = sweep.lin[idx];

    if (withCandidates && runtime_.at(id).candidatesReady) {
        auto& rt = runtime_.at(id);
        const auto deg = antecedentDegrees(rule, z);
        const auto excl = minExcluding(deg);
        for (std::size_t j = 0; j < rt.candidates.size(); ++j) {
            auto& cand = rt.candidates[j];
            const double muLo = std::min(excl[j], cand.lower.eval(z[j]));
            const double muHi = std::min(excl[j], cand.upper.eval(z[j]));
            const double m1p = sweep.m1 - mu + muLo + muHi;
            if (!(m1p > 0.0)) continue;  // hypothetical system leaves x uncovered
            const double m2p = sweep.m2 - mu * li + muLo * dotAffine(cand.lowerCoef, z) +
                               muHi * dotAffine(cand.upperCoef, z);
            const double resid = y - m2p / m1p;
            sgdStep(cand.lowerCoef, config_.eta * resid * (muLo / m1p), z);
            sgdStep(cand.upperCoef, config_.eta * resid * (muHi / m1p), z);
        }
    }

    const double resid = y - sweep.m2 / sweep.m1;
    const double scale = config_.eta * resid * (mu / sweep.m1);
    sgdStep(rule.consequent, scale, z);
    // keep the cached output and weighted-output sum in step with the move
    const double shift = scale * sweep.zNormSq;
    sweep.lin[idx] += shift;
    sweep.m2 += mu * shift;
}

void Learner::checkExpansionVr(std::span<const double> z) {
    std::vector<RuleId> due;
    for (RuleId id : rules_.ids()) {
        if (runtime_.at(id).sinceCheck >= config_.gracePeriod) due.push_back(id);
    }

    for (RuleId id : due) {
        if (!rules_.contains(id)) continue;
        auto& rt = runtime_.at(id);
        rt.sinceCheck = 0;
        if (config_.maxRules && rules_.size() >= config_.maxRules) continue;

        const Rule& r = rules_.at(id);
        struct Scored {
            std::size_t j;
            SplitResult res;
        };
        std::vector<Scored> cands;
        for (std::size_t j = 0; j < rules_.dimension(); ++j) {
            const auto& ant = r.antecedents[j];
            if (auto res = rt.trees[j].bestSplit(ant.supportLo(), ant.supportHi()))
                cands.push_back({j, *res});
        }
        if (cands.size() < 2) continue;

        std::size_t bi = 0, si = 1;
        if (cands[si].res.varianceReduction > cands[bi].res.varianceReduction) std::swap(bi, si);
        for (std::size_t k = 2; k < cands.size(); ++k) {
            if (cands[k].res.varianceReduction > cands[bi].res.varianceReduction) {
                si = bi;
                bi = k;
            } else if (cands[k].res.varianceReduction > cands[si].res.varianceReduction) {
                si = k;
            }
        }
        const SplitResult& best = cands[bi].res;
        if (!(best.varianceReduction > 0.0)) continue;

        const double xbar = cands[si].res.varianceReduction / best.varianceReduction;
        const double eps = hoeffdingEpsilon(config_.delta, rt.covered) +
                           complexityPenalty(rules_.dimension(), rules_.size());
        if (!hoeffdingGate(xbar, eps, config_.tau)) continue;

        const std::size_t j = cands[bi].j;
        const double sigma = std::max(rt.coveredStats[j].stddev(), sigmaFloor(best.q));
        auto [lowerAnt, upperAnt] =
            splitMembership(r.antecedents[j], best.q, config_.rhoFactor1 * sigma,
                            config_.rhoFactor2 * sigma);

        std::optional<bool> keepLower;
        if (config_.strategy == AdoptionStrategy::Single) {
            // Keep the side with the smaller weighted variance.
            keepLower = best.leftWeight * best.leftVariance <=
                        best.rightWeight * best.rightVariance;
        }
        adopt(id, j, lowerAnt, upperAnt, r.consequent, r.consequent, keepLower, z);
    }
}

void Learner::checkExpansionEr(std::span<const double> z) {
    if (config_.maxRules && rules_.size() >= config_.maxRules) return;
    if (!(currentSse_ > 0.0)) return;

    struct Ref {
        RuleId id;
        std::size_t j;
        double sse;
    };
    std::optional<Ref> best, second;
    for (RuleId id : rules_.ids()) {
        const auto& rt = runtime_.at(id);
        if (!rt.candidatesReady) continue;
        for (std::size_t j = 0; j < rt.candidates.size(); ++j) {
            const Ref ref{id, j, rt.candidates[j].altSse};
            if (!best || ref.sse < best->sse) {
                second = best;
                best = ref;
            } else if (!second || ref.sse < second->sse) {
                second = ref;
            }
        }
    }
    if (!best || !second) return;

    const double xbar = second->sse > 0.0 ? best->sse / second->sse : 1.0;
    const double ybar = best->sse / currentSse_;
    const double eps = hoeffdingEpsilon(config_.delta, sinceStructure_) +
                       complexityPenalty(rules_.dimension(), rules_.size());
    if (!(ybar + eps < 1.0) || !hoeffdingGate(xbar, eps, config_.tau)) return;

    const CandidateExtension cand = runtime_.at(best->id).candidates[best->j];
    std::optional<bool> keepLower;
    if (config_.strategy == AdoptionStrategy::Single) {
        keepLower = cand.lowerWeightedSse <= cand.upperWeightedSse;
    }
    adopt(best->id, best->j, cand.lower, cand.upper, cand.lowerCoef, cand.upperCoef, keepLower,
          z);
}

void Learner::adopt(RuleId parentId, std::size_t feature, const MembershipFunction& lowerAnt,
                    const MembershipFunction& upperAnt, std::vector<double> lowerCoef,
                    std::vector<double> upperCoef, std::optional<bool> keepLowerOnly,
                    std::span<const double> z) {
    const Rule parent = rules_.at(parentId);

    const auto makeChild = [&](const MembershipFunction& ant, std::vector<double> coef) {
        Rule child;
        child.antecedents = parent.antecedents;
        child.antecedents[feature] = ant;
        child.consequent = std::move(coef);
        child.lineage = RuleLineage{parentId, std::nullopt, feature};
        return child;
    };

    std::vector<RuleId> newIds;
    if (keepLowerOnly.has_value()) {
        // Single extension: adopt the stronger child, keep the default parent.
        Rule child = *keepLowerOnly ? makeChild(lowerAnt, std::move(lowerCoef))
                                    : makeChild(upperAnt, std::move(upperCoef));
        const RuleId cid = rules_.add(std::move(child));
        runtime_.emplace(cid, makeRuntime());
        registerRule(cid, rules_.at(cid).lineage);
        newIds.push_back(cid);

        if (!rules_.isDefault(parentId)) {
            rules_.remove(parentId);
            runtime_.erase(parentId);
        } else {
            auto& prt = runtime_.at(parentId);
            prt.covered = 0;
            prt.sinceCheck = 0;
            if (config_.criterion == SplitCriterion::VarianceReduction)
                prt.trees.assign(rules_.dimension(), SplitTree(config_.ebstKeyCap));
            prt.candidates.clear();
            prt.candidatesReady = false;
        }
    } else {
        const RuleId loId = rules_.add(makeChild(lowerAnt, std::move(lowerCoef)));
        const RuleId hiId = rules_.add(makeChild(upperAnt, std::move(upperCoef)));
        rules_.at(loId).lineage->sibling = hiId;
        rules_.at(hiId).lineage->sibling = loId;
        runtime_.emplace(loId, makeRuntime());
        runtime_.emplace(hiId, makeRuntime());
        registerRule(loId, rules_.at(loId).lineage);
        registerRule(hiId, rules_.at(hiId).lineage);
        lineage_[parentId].children = {loId, hiId};
        rules_.remove(parentId);
        runtime_.erase(parentId);
        newIds = {loId, hiId};
    }
    rules_.refreshDefaultId();

    if (config_.criterion == SplitCriterion::ErrorReduction) {
        resetErrorWindow();
        // New rules seed their candidate stores from the triggering example.
        for (RuleId nid : newIds) {
            Rule& nr = rules_.at(nid);
            if (!(nr.activation(z) > 0.0)) continue;
            auto& rt = runtime_.at(nid);
            ++rt.covered;
            ++nr.coveredCount;
            for (std::size_t j = 0; j < z.size(); ++j) rt.coveredStats[j].add(z[j]);
            initCandidates(nid, z);
        }
    }
}

void Learner::resetErrorWindow() {
    currentSse_ = 0.0;
    sinceStructure_ = 0;
    sinceGlobalCheck_ = 0;
    for (auto& [id, rt] : runtime_) {
        for (auto& cand : rt.candidates) {
            cand.altSse = 0.0;
            cand.lowerWeightedSse = 0.0;
            cand.upperWeightedSse = 0.0;
        }
    }
}

} // namespace tsk
