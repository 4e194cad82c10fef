#ifndef TSKSTREAM_ADWIN_HPP
#define TSKSTREAM_ADWIN_HPP

#include <cstdint>
#include <deque>
#include <vector>

namespace tsk {

/// Adaptive-windowing change detector over a bounded real signal.
///
/// Keeps an exponential histogram: row r holds buckets summarizing 2^r
/// values each, at most maxBucketsPerRow buckets per row, so memory is
/// O(M log W). After each insertion the admissible cuts (bucket
/// boundaries) are tested; when two subwindows have means that differ
/// more than the confidence threshold allows, the older subwindow is
/// dropped and add() reports a change.
class AdwinDetector {
public:
    explicit AdwinDetector(double delta = 0.002, int maxBucketsPerRow = 5);

    /// Insert a value; true when a change was detected and the window cut.
    bool add(double value);

    std::uint64_t width() const noexcept { return width_; }
    double sum() const noexcept { return sum_; }
    double mean() const noexcept { return width_ ? sum_ / static_cast<double>(width_) : 0.0; }
    double variance() const noexcept;

    std::size_t bucketCount() const noexcept;

    /// (width, sum) recomputed from the retained buckets; matches
    /// width()/sum() exactly by construction.
    std::pair<std::uint64_t, double> bucketTotals() const noexcept;

    void reset();

private:
    struct Bucket {
        double sum = 0.0;
        double varSum = 0.0;  // within-bucket sum of squared deviations
    };

    void appendValue(double value);
    void compress();
    bool detectAndShrink();
    void dropOldest();

    double delta_;
    int maxBuckets_;
    // rows_[r] holds buckets of capacity 2^r, oldest first within a row.
    std::vector<std::deque<Bucket>> rows_;
    std::uint64_t width_ = 0;
    double sum_ = 0.0;
    double varSum_ = 0.0;
    std::uint64_t sinceCheck_ = 0;
};

} // namespace tsk

#endif
