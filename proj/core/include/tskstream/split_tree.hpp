#ifndef TSKSTREAM_SPLIT_TREE_HPP
#define TSKSTREAM_SPLIT_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsk {

/// Accumulated weighted target statistics: count, sum of weights, and the
/// weighted first and second moments of the target.
struct WeightedStats {
    std::uint64_t n = 0;
    double sumW = 0.0;
    double sumWY = 0.0;
    double sumWY2 = 0.0;

    void add(double w, double y) noexcept {
        ++n;
        sumW += w;
        sumWY += w * y;
        sumWY2 += w * y * y;
    }
    void merge(const WeightedStats& o) noexcept {
        n += o.n;
        sumW += o.sumW;
        sumWY += o.sumWY;
        sumWY2 += o.sumWY2;
    }
    double mean() const noexcept { return sumW > 0.0 ? sumWY / sumW : 0.0; }
    /// Population-form weighted variance, clamped at zero.
    double variance() const noexcept;
};

/// Best crisp threshold found by SplitTree::bestSplit.
struct SplitResult {
    double q = 0.0;                 // threshold; left side is keys <= q
    double varianceReduction = 0.0;
    double leftWeight = 0.0;
    double rightWeight = 0.0;
    double leftVariance = 0.0;
    double rightVariance = 0.0;
};

/// Extended binary search tree over one attribute. Each node keys an
/// observed value and accumulates the weighted target statistics of that
/// value and of its left subtree, so any prefix (<= threshold) total is
/// available along a root-to-node path.
///
/// Plain BST, no rebalancing; trees are discarded on rule expansion. The
/// number of distinct keys is capped; past the cap, new keys merge into
/// the nearest existing node.
class SplitTree {
public:
    explicit SplitTree(std::size_t maxDistinctKeys = 10000) : keyCap_(maxDistinctKeys) {}

    /// Insert one weighted observation. Requires finite inputs and w > 0.
    void insert(double key, double w, double y);

    /// Scan thresholds (stored keys) inside [lo, hi] and return the one
    /// with maximal weighted variance reduction, ties toward the smaller
    /// key. nullopt when no threshold leaves both sides nonempty.
    std::optional<SplitResult> bestSplit(double lo, double hi) const;

    /// Totals over everything inserted.
    const WeightedStats& totals() const noexcept { return totals_; }

    /// Accumulated statistics of all observations with key <= threshold.
    WeightedStats cumulativeAt(double threshold) const noexcept;

    std::size_t distinctKeys() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }

    /// Longest node count on a root-to-leaf path.
    std::size_t height() const noexcept;
    /// Nodes touched by the most recent insert.
    std::size_t lastInsertVisited() const noexcept { return lastVisited_; }

    /// Sorted "key,n,sum_w,sum_wy,sum_wy2" lines with cumulative stats.
    std::string dumpCsv() const;

private:
    struct Node {
        double key;
        WeightedStats self;   // observations with exactly this key
        WeightedStats left;   // aggregate of the left subtree
        std::int32_t lo = -1;
        std::int32_t hi = -1;
    };

    template <typename Visit>
    void inorder(Visit&& visit) const;

    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    WeightedStats totals_;
    std::size_t keyCap_;
    std::size_t lastVisited_ = 0;
};

} // namespace tsk

#endif
