#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tskstream/learner.hpp"
#include "tskstream/membership.hpp"

using tsk::AdoptionStrategy;
using tsk::DriftEvent;
using tsk::Learner;
using tsk::MembershipFunction;
using tsk::Rule;
using tsk::RuleId;
using tsk::SplitCriterion;
using tsk_test::config;
using tsk_test::structuralConfig;
using tsk_test::feedUntilStructureChange;
using tsk_test::labeledBatch;

namespace {

double stepTarget(double x1, double) { return x1 > 0.0 ? 5.0 : -5.0; }

// Lower child of the first void split on feature 0 (left-unbounded side).
RuleId lowerChildOnFeature0(const tsk::RuleSet& rs) {
    RuleId found = 0;
    bool ok = false;
    rs.forEach([&](RuleId id, const Rule& r) {
        if (r.antecedents[0].kind() == MembershipFunction::Kind::LeftUnbounded) {
            found = id;
            ok = true;
        }
    });
    REQUIRE(ok);
    return found;
}

} // namespace

TEST_CASE("retracting one child of a void split rolls back to a default-equivalent rule") {
    Learner l(2, structuralConfig(SplitCriterion::VarianceReduction, AdoptionStrategy::All));
    REQUIRE(feedUntilStructureChange(l, labeledBatch(70, 201, stepTarget)));
    REQUIRE(l.rules().size() == 2);

    const RuleId lower = lowerChildOnFeature0(l.rules());
    l.retractRule(lower);

    REQUIRE(l.rules().size() == 1);
    const auto survivor = l.rules().ids()[0];
    CHECK(l.rules().at(survivor).allVoid());
    CHECK(l.rules().defaultRuleId() == survivor);

    const auto events = l.driftEvents();
    REQUIRE(events.size() == 1);
    CHECK(events[0].action == DriftEvent::Action::Merged);
    CHECK(events[0].ruleId == lower);
}

TEST_CASE("retraction widens both grandchildren when the sibling split on another feature") {
    Learner l(2, structuralConfig(SplitCriterion::VarianceReduction, AdoptionStrategy::All));

    // stage 1: split on x1
    REQUIRE(feedUntilStructureChange(l, labeledBatch(70, 202, stepTarget)));
    REQUIRE(l.rules().size() == 2);
    const RuleId lower = lowerChildOnFeature0(l.rules());

    // stage 2: structure on x2 inside the upper region only; the lower
    // region stays exactly constant (and gap-protected) so it cannot split
    const auto stage2 = tsk_test::gappedBatch(400, 203, [](double x1, double x2) {
        return x1 > 0.0 ? 5.0 + 6.0 * (x2 > 0.0 ? 1.0 : -1.0) : -5.0;
    });
    REQUIRE(feedUntilStructureChange(l, stage2));
    REQUIRE(l.rules().size() == 3);
    REQUIRE(l.rules().contains(lower));

    // the upper sibling is gone; its two children split on feature 1
    std::vector<RuleId> grandchildren;
    l.rules().forEach([&](RuleId id, const Rule& r) {
        if (id != lower) {
            grandchildren.push_back(id);
            CHECK_FALSE(r.antecedents[1].isVoid());
        }
    });
    REQUIRE(grandchildren.size() == 2);

    // sample points before retraction for the coverage comparison
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<std::vector<double>> samples;
    for (int i = 0; i < 200; ++i) samples.push_back({u(rng), u(rng)});
    std::vector<double> coverBefore;
    for (const auto& z : samples) {
        double m = 0.0;
        l.rules().forEach([&](RuleId, const Rule& r) { m = std::max(m, r.activation(z)); });
        coverBefore.push_back(m);
    }

    l.retractRule(lower);

    REQUIRE(l.rules().size() == 2);
    for (const RuleId id : grandchildren) {
        REQUIRE(l.rules().contains(id));
        CHECK(l.rules().at(id).antecedents[0].isVoid());  // widened on the retracted feature
    }

    // coverage is non-shrinking after a merge-style retraction
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double after = 0.0;
        l.rules().forEach(
            [&](RuleId, const Rule& r) { after = std::max(after, r.activation(samples[i])); });
        CHECK(after >= coverBefore[i] - 1e-12);
    }

    REQUIRE(l.driftEvents().size() == 1);
    CHECK(l.driftEvents()[0].action == DriftEvent::Action::Merged);
}

TEST_CASE("same-feature grandchildren widen only on the shared boundary") {
    Learner l(2, structuralConfig(SplitCriterion::VarianceReduction, AdoptionStrategy::All));

    REQUIRE(feedUntilStructureChange(l, labeledBatch(70, 204, stepTarget)));
    const RuleId lower = lowerChildOnFeature0(l.rules());

    // stage 2: a second step inside the upper region, again on x1
    const auto stage2 = tsk_test::gappedBatch(400, 205, [](double x1, double) {
        if (x1 <= 0.0) return -5.0;
        return x1 < 0.65 ? 5.0 : 11.0;
    });
    REQUIRE(feedUntilStructureChange(l, stage2));
    REQUIRE(l.rules().size() == 3);
    REQUIRE(l.rules().contains(lower));

    RuleId adjacent = 0, far = 0;
    l.rules().forEach([&](RuleId id, const Rule& r) {
        if (id == lower) return;
        if (r.antecedents[0].kind() == MembershipFunction::Kind::SShaped)
            adjacent = id;
        else if (r.antecedents[0].kind() == MembershipFunction::Kind::RightUnbounded)
            far = id;
    });
    REQUIRE(adjacent != 0);
    REQUIRE(far != 0);
    const auto farAntBefore = l.rules().at(far).antecedents[0];

    l.retractRule(lower);

    REQUIRE(l.rules().size() == 2);
    // the adjacent grandchild absorbed the vacated half-space
    CHECK(l.rules().at(adjacent).antecedents[0].kind() ==
          MembershipFunction::Kind::LeftUnbounded);
    // the far grandchild does not border the region and is untouched
    CHECK(l.rules().at(far).antecedents[0] == farAntBefore);
}

TEST_CASE("under single strategy drift removes the rule outright but spares the default") {
    Learner l(2, structuralConfig(SplitCriterion::VarianceReduction, AdoptionStrategy::Single));
    REQUIRE(feedUntilStructureChange(l, labeledBatch(70, 206, stepTarget)));
    REQUIRE(l.rules().size() == 2);
    const RuleId def = *l.rules().defaultRuleId();

    // drift on the default: detector reset only, rule kept, no event
    l.retractRule(def);
    CHECK(l.rules().size() == 2);
    CHECK(l.rules().contains(def));
    CHECK(l.driftEvents().empty());

    // drift on the adopted child: plain removal
    RuleId child = 0;
    l.rules().forEach([&](RuleId id, const Rule&) {
        if (id != def) child = id;
    });
    l.retractRule(child);
    CHECK(l.rules().size() == 1);
    REQUIRE(l.driftEvents().size() == 1);
    CHECK(l.driftEvents()[0].action == DriftEvent::Action::Removed);
}

TEST_CASE("the last rule can never be retracted") {
    Learner l(2, structuralConfig(SplitCriterion::VarianceReduction, AdoptionStrategy::All));
    l.processExample(std::vector<double>{0.1, 0.2}, 1.0);
    const RuleId only = l.rules().ids()[0];
    l.retractRule(only);
    CHECK(l.rules().size() == 1);
    CHECK(l.rules().contains(only));
    CHECK(l.driftEvents().empty());
}

TEST_CASE("a target level shift triggers drift events through the stream path") {
    Learner l(2, config(SplitCriterion::VarianceReduction, AdoptionStrategy::All));
    std::mt19937_64 rng(31);
    std::normal_distribution<double> noise(0.0, 0.1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 4000; ++i) {
        const double x1 = u(rng);
        const double x2 = u(rng);
        const double base = i < 2000 ? 0.0 : 25.0;
        l.processExample(std::vector<double>{x1, x2},
                         base + stepTarget(x1, x2) + noise(rng));
    }
    REQUIRE_FALSE(l.driftEvents().empty());
    CHECK(l.driftEvents()[0].instanceIndex >= 2000);
}
