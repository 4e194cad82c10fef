#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "tskstream/quantile.hpp"

using tsk::P2Quantile;

TEST_CASE("p99 estimate converges on uniform data") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    P2Quantile q(0.99);
    std::vector<double> all;
    for (int i = 0; i < 20000; ++i) {
        const double v = u(rng);
        all.push_back(v);
        q.add(v);
    }
    std::nth_element(all.begin(), all.begin() + static_cast<long>(all.size() * 0.99),
                     all.end());
    const double exact = all[static_cast<std::size_t>(all.size() * 0.99)];
    CHECK(q.value() == doctest::Approx(exact).epsilon(0.03));
    CHECK(q.value() == doctest::Approx(0.99).epsilon(0.03));
}

TEST_CASE("constant stream estimates the constant") {
    P2Quantile q(0.99);
    for (int i = 0; i < 100; ++i) q.add(2.5);
    CHECK(q.value() == doctest::Approx(2.5));
}

TEST_CASE("before five samples the running maximum is used") {
    P2Quantile q(0.99);
    CHECK(q.value() == 0.0);
    q.add(1.0);
    q.add(3.0);
    q.add(2.0);
    CHECK(q.value() == 3.0);
}
