#include "doctest.h"

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "tskstream/split_tree.hpp"

using tsk::SplitTree;
using tsk::WeightedStats;

namespace {

struct Point {
    double key, w, y;
};

// Independent O(n^2) oracle: two-pass weighted variance at every stored
// threshold, smaller threshold wins ties.
struct BruteResult {
    double q;
    double reduction;
};

double weightedVarianceTwoPass(const std::vector<Point>& pts) {
    double sw = 0.0, swy = 0.0;
    for (const auto& p : pts) {
        sw += p.w;
        swy += p.w * p.y;
    }
    if (sw <= 0.0) return 0.0;
    const double mean = swy / sw;
    double acc = 0.0;
    for (const auto& p : pts) acc += p.w * (p.y - mean) * (p.y - mean);
    return acc / sw;
}

std::optional<BruteResult> bruteBestSplit(const std::vector<Point>& pts) {
    std::vector<double> keys;
    for (const auto& p : pts) keys.push_back(p.key);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    const double totalVar = weightedVarianceTwoPass(pts);
    double totalW = 0.0;
    for (const auto& p : pts) totalW += p.w;

    std::optional<BruteResult> best;
    for (double q : keys) {
        std::vector<Point> left, right;
        for (const auto& p : pts) (p.key <= q ? left : right).push_back(p);
        if (left.empty() || right.empty()) continue;
        double lw = 0.0, rw = 0.0;
        for (const auto& p : left) lw += p.w;
        for (const auto& p : right) rw += p.w;
        const double reduction = totalVar - (lw / totalW * weightedVarianceTwoPass(left) +
                                             rw / totalW * weightedVarianceTwoPass(right));
        if (!best || reduction > best->reduction) best = BruteResult{q, reduction};
    }
    return best;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

TEST_CASE("insert accumulates exact weighted sums") {
    SplitTree t;
    t.insert(1.0, 0.5, 2.0);
    t.insert(2.0, 1.0, -1.0);
    t.insert(0.5, 0.25, 4.0);

    const auto& tot = t.totals();
    CHECK(tot.n == 3);
    CHECK(tot.sumW == doctest::Approx(1.75));
    CHECK(tot.sumWY == doctest::Approx(0.5 * 2.0 + 1.0 * -1.0 + 0.25 * 4.0));
    CHECK(tot.sumWY2 == doctest::Approx(0.5 * 4.0 + 1.0 * 1.0 + 0.25 * 16.0));
}

TEST_CASE("duplicate keys collapse into one node with doubled stats") {
    SplitTree t;
    t.insert(3.0, 1.0, 2.0);
    t.insert(3.0, 1.0, 2.0);
    CHECK(t.distinctKeys() == 1);
    CHECK(t.totals().n == 2);
    CHECK(t.totals().sumWY == doctest::Approx(4.0));
}

TEST_CASE("in-order dump is sorted (sort oracle)") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> key(-100.0, 100.0);
    SplitTree t;
    for (int i = 0; i < 1000; ++i) t.insert(key(rng), 1.0, key(rng));

    std::istringstream dump(t.dumpCsv());
    std::string line;
    std::getline(dump, line);  // header
    double prev = -kInf;
    std::size_t rows = 0;
    while (std::getline(dump, line)) {
        const double k = std::stod(line.substr(0, line.find(',')));
        CHECK(k > prev);
        prev = k;
        ++rows;
    }
    CHECK(rows == t.distinctKeys());
}

TEST_CASE("best split matches the hand-computed oracle on three points") {
    SplitTree t;
    t.insert(1.0, 1.0, 1.0);
    t.insert(2.0, 1.0, 2.0);
    t.insert(3.0, 1.0, 10.0);

    const auto res = t.bestSplit(-kInf, kInf);
    REQUIRE(res.has_value());
    CHECK(res->q == 2.0);
    // frozen from the brute-force oracle below
    const auto oracle = bruteBestSplit({{1, 1, 1}, {2, 1, 2}, {3, 1, 10}});
    REQUIRE(oracle.has_value());
    CHECK(oracle->q == 2.0);
    CHECK(oracle->reduction == doctest::Approx(16.0555555555).epsilon(1e-9));
    CHECK(res->varianceReduction == doctest::Approx(oracle->reduction).epsilon(1e-12));
    CHECK(res->leftWeight == doctest::Approx(2.0));
    CHECK(res->rightWeight == doctest::Approx(1.0));
}

TEST_CASE("constant targets give zero reduction") {
    SplitTree t;
    for (int i = 0; i < 50; ++i) t.insert(static_cast<double>(i), 1.0, 7.0);
    const auto res = t.bestSplit(-kInf, kInf);
    REQUIRE(res.has_value());
    CHECK(res->varianceReduction == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res->varianceReduction >= -1e-9);
}

TEST_CASE("degenerate trees refuse to split") {
    SplitTree empty;
    CHECK_FALSE(empty.bestSplit(-kInf, kInf).has_value());

    SplitTree single;
    single.insert(1.0, 1.0, 5.0);
    single.insert(1.0, 0.5, -5.0);
    CHECK_FALSE(single.bestSplit(-kInf, kInf).has_value());
}

TEST_CASE("non-finite and non-positive inputs are rejected") {
    SplitTree t;
    CHECK_THROWS_AS(t.insert(std::nan(""), 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(t.insert(0.0, 1.0, kInf), std::invalid_argument);
    CHECK_THROWS_AS(t.insert(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(t.insert(0.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("tree agrees with the brute-force oracle on random streams") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> keyDist(-5.0, 5.0);
    std::uniform_real_distribution<double> wDist(0.05, 1.0);
    std::uniform_real_distribution<double> yDist(-10.0, 10.0);
    std::uniform_int_distribution<int> nDist(2, 300);
    std::uniform_int_distribution<int> dupDist(0, 3);

    for (int trial = 0; trial < 40; ++trial) {
        const int n = nDist(rng);
        std::vector<Point> pts;
        SplitTree t;
        for (int i = 0; i < n; ++i) {
            double key = keyDist(rng);
            if (!pts.empty() && dupDist(rng) == 0) key = pts[i % pts.size()].key;
            const Point p{key, wDist(rng), yDist(rng)};
            pts.push_back(p);
            t.insert(p.key, p.w, p.y);
        }
        const auto got = t.bestSplit(-kInf, kInf);
        const auto want = bruteBestSplit(pts);
        REQUIRE(got.has_value() == want.has_value());
        if (want) {
            CHECK(got->q == want->q);
            CHECK(got->varianceReduction ==
                  doctest::Approx(want->reduction).epsilon(1e-8));
            CHECK(got->varianceReduction >= -1e-9);
        }
    }
}

TEST_CASE("cumulative prefix statistics match batch sums") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> keyDist(-5.0, 5.0);
    std::uniform_real_distribution<double> wDist(0.05, 1.0);
    std::uniform_real_distribution<double> yDist(-10.0, 10.0);

    std::vector<Point> pts;
    SplitTree t;
    for (int i = 0; i < 500; ++i) {
        const Point p{keyDist(rng), wDist(rng), yDist(rng)};
        pts.push_back(p);
        t.insert(p.key, p.w, p.y);
    }
    for (int k = 0; k < 50; ++k) {
        const double threshold = keyDist(rng);
        WeightedStats want;
        for (const auto& p : pts)
            if (p.key <= threshold) want.add(p.w, p.y);
        const auto got = t.cumulativeAt(threshold);
        CHECK(got.n == want.n);
        CHECK(got.sumW == doctest::Approx(want.sumW).epsilon(1e-8));
        CHECK(got.sumWY == doctest::Approx(want.sumWY).epsilon(1e-8));
        CHECK(got.sumWY2 == doctest::Approx(want.sumWY2).epsilon(1e-8));
    }
}

TEST_CASE("key cap folds new keys into the nearest node") {
    SplitTree t(5);
    for (int i = 0; i < 5; ++i) t.insert(static_cast<double>(i * 10), 1.0, 1.0);
    CHECK(t.distinctKeys() == 5);
    t.insert(21.0, 1.0, 3.0);  // nearest stored key is 20
    CHECK(t.distinctKeys() == 5);
    CHECK(t.totals().n == 6);
    const auto upTo20 = t.cumulativeAt(20.0);
    CHECK(upTo20.n == 4);  // 0,10,20 plus the folded 21
    CHECK(upTo20.sumWY == doctest::Approx(1.0 + 1.0 + 1.0 + 3.0));
}

TEST_CASE("insert touches at most one root-to-leaf path") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> keyDist(0.0, 1.0);
    SplitTree t;
    for (int i = 0; i < 400; ++i) {
        t.insert(keyDist(rng), 1.0, keyDist(rng));
        CHECK(t.lastInsertVisited() <= t.height());
    }
}
