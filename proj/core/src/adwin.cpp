#include "tskstream/adwin.hpp"

#include <cmath>

namespace tsk {

namespace {
constexpr std::uint64_t kMinSubWindow = 5;
}

AdwinDetector::AdwinDetector(double delta, int maxBucketsPerRow)
    : delta_(delta), maxBuckets_(maxBucketsPerRow) {
    rows_.emplace_back();
}

double AdwinDetector::variance() const noexcept {
    return width_ ? varSum_ / static_cast<double>(width_) : 0.0;
}

std::size_t AdwinDetector::bucketCount() const noexcept {
    std::size_t n = 0;
    for (const auto& row : rows_) n += row.size();
    return n;
}

void AdwinDetector::reset() {
    rows_.clear();
    rows_.emplace_back();
    width_ = 0;
    sum_ = 0.0;
    varSum_ = 0.0;
}

void AdwinDetector::appendValue(double value) {
    // Incremental variance of the whole window before bucketing.
    if (width_ > 0) {
        const double mean = sum_ / static_cast<double>(width_);
        const double dev = value - mean;
        varSum_ += static_cast<double>(width_) / static_cast<double>(width_ + 1) * dev * dev;
    }
    ++width_;
    rows_[0].push_back({value, 0.0});
    compress();
    sum_ = bucketTotals().second;  // totals always mirror the bucket contents
}

std::pair<std::uint64_t, double> AdwinDetector::bucketTotals() const noexcept {
    std::uint64_t w = 0;
    double s = 0.0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::uint64_t cap = std::uint64_t{1} << r;
        for (const Bucket& b : rows_[r]) {
            w += cap;
            s += b.sum;
        }
    }
    return {w, s};
}

void AdwinDetector::compress() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() <= static_cast<std::size_t>(maxBuckets_)) break;
        if (r + 1 == rows_.size()) rows_.emplace_back();
        const double cap = std::ldexp(1.0, static_cast<int>(r));  // 2^r values per bucket
        Bucket b1 = rows_[r].front();
        rows_[r].pop_front();
        Bucket b2 = rows_[r].front();
        rows_[r].pop_front();
        const double u1 = b1.sum / cap;
        const double u2 = b2.sum / cap;
        Bucket merged;
        merged.sum = b1.sum + b2.sum;
        merged.varSum = b1.varSum + b2.varSum + 0.5 * cap * (u1 - u2) * (u1 - u2);
        rows_[r + 1].push_back(merged);
    }
}

void AdwinDetector::dropOldest() {
    // Oldest bucket sits at the front of the highest non-empty row.
    for (std::size_t r = rows_.size(); r-- > 0;) {
        if (rows_[r].empty()) continue;
        const double cap = std::ldexp(1.0, static_cast<int>(r));
        Bucket b = rows_[r].front();
        rows_[r].pop_front();

        const double rest = static_cast<double>(width_) - cap;
        if (rest > 0.0) {
            const double bMean = b.sum / cap;
            const double restMean = (sum_ - b.sum) / rest;
            const double cross =
                cap * rest / static_cast<double>(width_) * (bMean - restMean) * (bMean - restMean);
            varSum_ -= b.varSum + cross;
            if (varSum_ < 0.0) varSum_ = 0.0;
        } else {
            varSum_ = 0.0;
        }
        width_ -= static_cast<std::uint64_t>(cap);
        sum_ = bucketTotals().second;  // keep the running sum exactly in sync
        while (rows_.size() > 1 && rows_.back().empty()) rows_.pop_back();
        return;
    }
}

bool AdwinDetector::detectAndShrink() {
    if (width_ < 2 * kMinSubWindow) return false;

    bool shrunk = false;
    bool cutFound = true;
    while (cutFound && width_ >= 2 * kMinSubWindow) {
        cutFound = false;
        const double total = static_cast<double>(width_);
        const double dd = std::log(2.0 * std::log(total) / delta_);
        const double v = variance();

        // Walk cuts oldest-to-newest, accumulating the older subwindow.
        double n0 = 0.0, sum0 = 0.0;
        for (std::size_t r = rows_.size(); r-- > 0 && !cutFound;) {
            const double cap = std::ldexp(1.0, static_cast<int>(r));
            for (const Bucket& b : rows_[r]) {
                n0 += cap;
                sum0 += b.sum;
                const double n1 = total - n0;
                if (n0 < static_cast<double>(kMinSubWindow)) continue;
                if (n1 < static_cast<double>(kMinSubWindow)) break;
                const double u0 = sum0 / n0;
                const double u1 = (sum_ - sum0) / n1;
                const double m =
                    1.0 / (n0 - static_cast<double>(kMinSubWindow) + 1.0) +
                    1.0 / (n1 - static_cast<double>(kMinSubWindow) + 1.0);
                const double eps = std::sqrt(2.0 * m * v * dd) + (2.0 / 3.0) * dd * m;
                if (std::abs(u0 - u1) > eps) {
                    cutFound = true;
                    break;
                }
            }
        }
        if (cutFound) {
            dropOldest();
            shrunk = true;
        }
    }
    return shrunk;
}

bool AdwinDetector::add(double value) {
    appendValue(value);
    return detectAndShrink();
}

} // namespace tsk
