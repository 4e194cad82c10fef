#include "doctest.h"

#include <stdexcept>

#include <random>

#include "tskstream/standardizer.hpp"

using tsk::OnlineStandardizer;

TEST_CASE("the first instance standardizes to the zero vector") {
    OnlineStandardizer st(3);
    const auto z = st.absorbAndStandardize(std::vector<double>{5.0, -2.0, 100.0});
    for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("constant features stay at zero") {
    OnlineStandardizer st(2);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto z = st.absorbAndStandardize(std::vector<double>{7.5, u(rng)});
        CHECK(z[0] == 0.0);
    }
}

TEST_CASE("running moments converge on gaussian data") {
    OnlineStandardizer st(1);
    std::mt19937_64 rng(42);
    std::normal_distribution<double> n(5.0, 2.0);
    for (int i = 0; i < 10000; ++i) st.absorbAndStandardize(std::vector<double>{n(rng)});
    CHECK(st.featureStats(0).mean == doctest::Approx(5.0).epsilon(0.02));
    CHECK(st.featureStats(0).stddev() == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("frozen standardization does not move the statistics") {
    OnlineStandardizer st(1);
    st.absorbAndStandardize(std::vector<double>{1.0});
    st.absorbAndStandardize(std::vector<double>{3.0});
    const auto n0 = st.featureStats(0).n;
    const auto z = st.standardize(std::vector<double>{5.0});
    CHECK(st.featureStats(0).n == n0);
    CHECK(z[0] == doctest::Approx((5.0 - 2.0) / 1.0));
}

TEST_CASE("dimension mismatches are rejected") {
    OnlineStandardizer st(2);
    CHECK_THROWS_AS(st.absorbAndStandardize(std::vector<double>{1.0}), std::invalid_argument);
}
