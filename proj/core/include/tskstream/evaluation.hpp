#ifndef TSKSTREAM_EVALUATION_HPP
#define TSKSTREAM_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tskstream/regressor.hpp"
#include "tskstream/stream.hpp"

namespace tsk {

/// One evaluation row of the test-then-train protocol.
struct PrequentialRecord {
    std::uint64_t index = 0;
    double prediction = 0.0;
    double truth = 0.0;
    double sqError = 0.0;
    double runningRmse = 0.0;
    std::size_t ruleCount = 0;
    std::int64_t micros = 0;
};

struct EvaluationOptions {
    std::string metricsPath;      // per-instance CSV; empty = do not write
    bool measureTime = true;      // false pins the micros column to 0
    bool keepRecords = false;     // retain records in memory (tests)
    std::uint64_t maxInstances = 0;  // 0 = whole stream
};

struct EvaluationSummary {
    double rmse = 0.0;
    std::size_t rules = 0;
    double meanMicros = 0.0;
    std::vector<DriftEvent> driftEvents;
    std::uint64_t instances = 0;
    std::uint64_t skipped = 0;
    std::vector<PrequentialRecord> records;  // only when keepRecords
};

/// Exact header of the metrics CSV.
inline constexpr const char* kMetricsCsvHeader =
    "index,prediction,truth,sq_error,running_rmse,rule_count,micros";

/// Run the test-then-train loop over the whole stream. Throws DataError
/// on an empty stream.
EvaluationSummary evaluateStream(Regressor& model, StreamSource& stream,
                                 const EvaluationOptions& options = {});

} // namespace tsk

#endif
