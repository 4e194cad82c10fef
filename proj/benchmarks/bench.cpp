#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tskstream/adwin.hpp"
#include "tskstream/learner.hpp"
#include "tskstream/membership.hpp"
#include "tskstream/split_tree.hpp"
#include "tskstream/synth.hpp"

namespace {

std::vector<tsk::Instance> drawRows(const char* gen, std::uint64_t n) {
    auto src = tsk::genBenchmark(gen, n, 42);
    std::vector<tsk::Instance> rows;
    while (auto inst = src->next()) rows.push_back(*inst);
    return rows;
}

void BM_MembershipEval(benchmark::State& state) {
    const auto mf = tsk::MembershipFunction::sShaped(-1.0, -0.5, 0.5, 1.0);
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mf.eval(x));
        x += 0.001;
        if (x > 2.0) x = -2.0;
    }
}
BENCHMARK(BM_MembershipEval);

void BM_SplitTreeInsert(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    tsk::SplitTree tree;
    for (auto _ : state) tree.insert(u(rng), 0.5, u(rng));
}
BENCHMARK(BM_SplitTreeInsert);

void BM_BestSplit(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    tsk::SplitTree tree;
    for (int i = 0; i < state.range(0); ++i) tree.insert(u(rng), 0.5, u(rng));
    const double inf = std::numeric_limits<double>::infinity();
    for (auto _ : state) benchmark::DoNotOptimize(tree.bestSplit(-inf, inf));
}
BENCHMARK(BM_BestSplit)->Arg(256)->Arg(2048);

void BM_AdwinAdd(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    tsk::AdwinDetector det(0.002);
    for (auto _ : state) benchmark::DoNotOptimize(det.add(u(rng)));
}
BENCHMARK(BM_AdwinAdd);

void BM_ProcessExampleVr(benchmark::State& state) {
    const auto rows = drawRows("fried", 4096);
    tsk::LearnerConfig cfg;
    cfg.criterion = tsk::SplitCriterion::VarianceReduction;
    tsk::Learner learner(10, cfg);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& r = rows[i++ % rows.size()];
        benchmark::DoNotOptimize(learner.processExample(r.x, r.y));
    }
}
BENCHMARK(BM_ProcessExampleVr);

void BM_ProcessExampleEr(benchmark::State& state) {
    const auto rows = drawRows("fried", 4096);
    tsk::LearnerConfig cfg;
    cfg.criterion = tsk::SplitCriterion::ErrorReduction;
    tsk::Learner learner(10, cfg);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& r = rows[i++ % rows.size()];
        benchmark::DoNotOptimize(learner.processExample(r.x, r.y));
    }
}
BENCHMARK(BM_ProcessExampleEr);

} // namespace

BENCHMARK_MAIN();
