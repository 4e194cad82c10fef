#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <random>

#include "tskstream/rule_set.hpp"

using tsk::MembershipFunction;
using tsk::Rule;
using tsk::RuleSet;

namespace {

// Right-unbounded set whose membership at x = 0 equals the given degree.
MembershipFunction mfWithDegreeAtZero(double degree) {
    REQUIRE(degree > 0.0);
    REQUIRE(degree < 1.0);
    const double a = -1.0;
    if (degree <= 0.5) {
        // rising branch: 2((x-a)/(b-a))^2 = degree at x = 0
        const double b = 1.0 / std::sqrt(degree / 2.0) - 1.0;
        return MembershipFunction::rightUnbounded(a, b);
    }
    // falling-side branch: 1 - 2((x-b)/(b-a))^2 = degree at x = 0
    const double t = std::sqrt((1.0 - degree) / 2.0);
    const double b = t / (1.0 - t);
    return MembershipFunction::rightUnbounded(a, b);
}

Rule ruleWith(std::vector<MembershipFunction> ants, std::vector<double> coef) {
    Rule r;
    r.antecedents = std::move(ants);
    r.consequent = std::move(coef);
    return r;
}

} // namespace

TEST_CASE("degree helper inverts evaluation at zero") {
    for (double deg : {0.1, 0.2, 0.3, 0.5, 0.6, 0.8, 0.95}) {
        CHECK(mfWithDegreeAtZero(deg).eval(0.0) == doctest::Approx(deg).epsilon(1e-12));
    }
}

TEST_CASE("activation is the minimum antecedent degree") {
    const Rule r = ruleWith({mfWithDegreeAtZero(0.3), mfWithDegreeAtZero(0.8),
                             MembershipFunction::voidSet()},
                            {0, 0, 0, 0});
    const std::vector<double> x{0.0, 0.0, 42.0};
    CHECK(r.activation(x) == doctest::Approx(0.3).epsilon(1e-12));

    const Rule allVoid = ruleWith({MembershipFunction::voidSet(), MembershipFunction::voidSet()},
                                  {0, 0, 0});
    CHECK(allVoid.activation(std::vector<double>{5.0, -3.0}) == 1.0);

    // an absorbing zero antecedent
    const Rule zero = ruleWith({mfWithDegreeAtZero(0.9), MembershipFunction::sShaped(1, 2, 3, 4)},
                               {0, 0, 0});
    CHECK(zero.activation(std::vector<double>{0.0, 0.0}) == 0.0);

    CHECK_THROWS_AS(zero.activation(std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("normalized weights follow the firing-degree proportions") {
    RuleSet rs(1);
    // replace the default rule's consequent and add a second rule so the
    // activations at x=0 are (0.2, 0.6)
    const tsk::RuleId first = *rs.defaultRuleId();
    rs.at(first).antecedents[0] = mfWithDegreeAtZero(0.2);
    rs.at(first).consequent = {1.0, 0.0};
    rs.add(ruleWith({mfWithDegreeAtZero(0.6)}, {2.0, 0.0}));

    const std::vector<double> x{0.0};
    const auto w = rs.normalizedWeights(x);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK((*w)[1] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK((*w)[0] + (*w)[1] == doctest::Approx(1.0).epsilon(1e-12));

    // weighted TSK output: 0.25 * 1 + 0.75 * 2
    CHECK(*rs.predict(x) == doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("single firing rule self-normalizes") {
    RuleSet rs(1);
    rs.at(*rs.defaultRuleId()).antecedents[0] = mfWithDegreeAtZero(0.4);
    const auto w = rs.normalizedWeights(std::vector<double>{0.0});
    REQUIRE(w.has_value());
    CHECK((*w)[0] == 1.0);
}

TEST_CASE("uncovered input yields no weights and predict falls through") {
    RuleSet rs(1);
    rs.at(*rs.defaultRuleId()).antecedents[0] = MembershipFunction::sShaped(1, 2, 3, 4);
    rs.at(*rs.defaultRuleId()).consequent = {5.0, 0.0};
    rs.add(ruleWith({MembershipFunction::sShaped(10, 11, 12, 13)}, {7.0, 0.0}));

    const std::vector<double> x{0.0};
    CHECK_FALSE(rs.normalizedWeights(x).has_value());
    CHECK_FALSE(rs.predict(x).has_value());
    // uncovered fallback: unweighted mean of the rule outputs
    CHECK(rs.meanOutput(x) == doctest::Approx(6.0));
}

TEST_CASE("fresh rule set predicts zero everywhere") {
    RuleSet rs(3);
    CHECK(rs.size() == 1);
    CHECK(rs.defaultRuleId().has_value());
    CHECK(rs.at(*rs.defaultRuleId()).allVoid());
    CHECK(*rs.predict(std::vector<double>{1.0, -2.0, 0.5}) == 0.0);
}

TEST_CASE("prediction equals the independent dot-product oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> deg(0.05, 0.95);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);

    for (int trial = 0; trial < 50; ++trial) {
        RuleSet rs(1);
        std::vector<double> degrees(3), intercepts(3);
        for (int i = 0; i < 3; ++i) {
            degrees[i] = deg(rng);
            intercepts[i] = coef(rng);
        }
        rs.at(*rs.defaultRuleId()).antecedents[0] = mfWithDegreeAtZero(degrees[0]);
        rs.at(*rs.defaultRuleId()).consequent = {intercepts[0], coef(rng)};
        for (int i = 1; i < 3; ++i)
            rs.add(ruleWith({mfWithDegreeAtZero(degrees[i])}, {intercepts[i], coef(rng)}));

        const std::vector<double> x{0.0};
        double total = 0.0;
        for (double d : degrees) total += d;
        double expected = 0.0;
        std::size_t i = 0;
        rs.forEach([&](tsk::RuleId, const Rule& r) {
            expected += degrees[i] / total * r.linearOutput(x);
            ++i;
        });
        CHECK(*rs.predict(x) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("rule set always retains at least one rule") {
    RuleSet rs(2);
    CHECK_THROWS_AS(rs.remove(*rs.defaultRuleId()), std::logic_error);

    const auto id2 = rs.add(ruleWith(
        {MembershipFunction::voidSet(), MembershipFunction::sShaped(0, 1, 2, 3)}, {0, 0, 0}));
    rs.remove(*rs.defaultRuleId());
    CHECK(rs.size() == 1);
    CHECK_FALSE(rs.defaultRuleId().has_value());
    CHECK(rs.contains(id2));
}

TEST_CASE("dimension mismatches are rejected") {
    RuleSet rs(2);
    Rule bad = ruleWith({MembershipFunction::voidSet()}, {0, 0});
    CHECK_THROWS_AS(rs.add(bad), std::invalid_argument);
}
