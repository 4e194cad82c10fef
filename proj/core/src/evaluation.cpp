#include "tskstream/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tsk {

namespace {

void writeRecord(std::ofstream& out, const PrequentialRecord& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g,%.17g,%.17g,%zu,%lld\n",
                  static_cast<unsigned long long>(r.index), r.prediction, r.truth, r.sqError,
                  r.runningRmse, r.ruleCount, static_cast<long long>(r.micros));
    out << buf;
}

} // namespace

EvaluationSummary evaluateStream(Regressor& model, StreamSource& stream,
                                 const EvaluationOptions& options) {
    std::ofstream metrics;
    if (!options.metricsPath.empty()) {
        metrics.open(options.metricsPath, std::ios::trunc);
        if (!metrics) throw DataError("cannot open metrics file: " + options.metricsPath);
        metrics << kMetricsCsvHeader << '\n';
    }

    EvaluationSummary summary;
    double sumSq = 0.0;
    double sumMicros = 0.0;
    std::uint64_t index = 0;

    while (auto inst = stream.next()) {
        if (options.maxInstances && index >= options.maxInstances) break;

        const auto t0 = std::chrono::steady_clock::now();
        const auto prediction = model.processExample(inst->x, inst->y);
        const auto t1 = std::chrono::steady_clock::now();

        if (!prediction) {
            ++summary.skipped;
            continue;
        }

        PrequentialRecord rec;
        rec.index = index;
        rec.prediction = *prediction;
        rec.truth = inst->y;
        rec.sqError = (inst->y - *prediction) * (inst->y - *prediction);
        sumSq += rec.sqError;
        rec.runningRmse = std::sqrt(sumSq / static_cast<double>(index + 1));
        rec.ruleCount = model.modelSize();
        if (options.measureTime) {
            rec.micros =
                std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
            sumMicros += static_cast<double>(rec.micros);
        }

        if (metrics.is_open()) writeRecord(metrics, rec);
        if (options.keepRecords) summary.records.push_back(rec);
        ++index;
    }

    if (index == 0) throw DataError("empty stream: no instances evaluated");

    summary.instances = index;
    summary.rmse = std::sqrt(sumSq / static_cast<double>(index));
    summary.rules = model.modelSize();
    summary.meanMicros = sumMicros / static_cast<double>(index);
    summary.driftEvents = model.driftEvents();
    return summary;
}

} // namespace tsk
