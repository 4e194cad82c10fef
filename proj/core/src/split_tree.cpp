#include "tskstream/split_tree.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tsk {

double WeightedStats::variance() const noexcept {
    if (sumW <= 0.0) return 0.0;
    const double m = sumWY / sumW;
    const double v = sumWY2 / sumW - m * m;
    return v > 0.0 ? v : 0.0;
}

void SplitTree::insert(double key, double w, double y) {
    if (!std::isfinite(key) || !std::isfinite(w) || !std::isfinite(y))
        throw std::invalid_argument("SplitTree::insert: non-finite input");
    if (!(w > 0.0))
        throw std::invalid_argument("SplitTree::insert: weight must be positive");

    totals_.add(w, y);

    if (root_ < 0) {
        nodes_.push_back({key, {}, {}, -1, -1});
        nodes_.back().self.add(w, y);
        root_ = 0;
        lastVisited_ = 1;
        return;
    }

    // Phase 1: walk to the key (or its attach point), remembering the path
    // and the closest neighbours seen on the way down.
    std::vector<std::pair<std::int32_t, bool>> path;  // (node, went-left)
    std::int32_t cur = root_;
    std::int32_t target = -1;
    double bestDist = std::numeric_limits<double>::infinity();
    std::int32_t nearest = -1;
    while (true) {
        const double nk = nodes_[static_cast<std::size_t>(cur)].key;
        const double dist = std::abs(key - nk);
        if (dist < bestDist) {
            bestDist = dist;
            nearest = cur;
        }
        if (key == nk) {
            target = cur;
            break;
        }
        const bool goLeft = key < nk;
        path.emplace_back(cur, goLeft);
        const std::int32_t next = goLeft ? nodes_[static_cast<std::size_t>(cur)].lo
                                         : nodes_[static_cast<std::size_t>(cur)].hi;
        if (next < 0) break;
        cur = next;
    }
    lastVisited_ = path.size() + 1;

    if (target < 0) {
        if (nodes_.size() < keyCap_) {
            // Attach a fresh leaf under the last path node.
            nodes_.push_back({key, {}, {}, -1, -1});
            target = static_cast<std::int32_t>(nodes_.size() - 1);
            auto& [parent, wentLeft] = path.back();
            auto& pn = nodes_[static_cast<std::size_t>(parent)];
            (wentLeft ? pn.lo : pn.hi) = target;
        } else {
            target = nearest;  // cap reached: fold into the closest key
        }
    }

    nodes_[static_cast<std::size_t>(target)].self.add(w, y);
    for (const auto& [node, wentLeft] : path) {
        if (node == target) break;  // contributions below an ancestor target stop here
        if (wentLeft) nodes_[static_cast<std::size_t>(node)].left.add(w, y);
    }
}

WeightedStats SplitTree::cumulativeAt(double threshold) const noexcept {
    WeightedStats acc;
    std::int32_t cur = root_;
    while (cur >= 0) {
        const Node& n = nodes_[static_cast<std::size_t>(cur)];
        if (threshold < n.key) {
            cur = n.lo;
        } else {
            acc.merge(n.left);
            acc.merge(n.self);
            cur = n.hi;
        }
    }
    return acc;
}

template <typename Visit>
void SplitTree::inorder(Visit&& visit) const {
    std::vector<std::int32_t> stack;
    std::int32_t cur = root_;
    while (cur >= 0 || !stack.empty()) {
        while (cur >= 0) {
            stack.push_back(cur);
            cur = nodes_[static_cast<std::size_t>(cur)].lo;
        }
        cur = stack.back();
        stack.pop_back();
        visit(nodes_[static_cast<std::size_t>(cur)]);
        cur = nodes_[static_cast<std::size_t>(cur)].hi;
    }
}

std::optional<SplitResult> SplitTree::bestSplit(double lo, double hi) const {
    if (nodes_.empty()) return std::nullopt;

    const double totalVar = totals_.variance();
    std::optional<SplitResult> best;

    WeightedStats prefix;
    inorder([&](const Node& node) {
        prefix.merge(node.self);
        if (node.key < lo || node.key > hi) return;
        const std::uint64_t rightN = totals_.n - prefix.n;
        if (prefix.n == 0 || rightN == 0) return;

        WeightedStats right;
        right.n = rightN;
        right.sumW = totals_.sumW - prefix.sumW;
        right.sumWY = totals_.sumWY - prefix.sumWY;
        right.sumWY2 = totals_.sumWY2 - prefix.sumWY2;
        if (!(prefix.sumW > 0.0) || !(right.sumW > 0.0)) return;

        const double wl = prefix.sumW / totals_.sumW;
        const double wr = right.sumW / totals_.sumW;
        const double vl = prefix.variance();
        const double vr = right.variance();
        const double reduction = totalVar - (wl * vl + wr * vr);
        if (!best || reduction > best->varianceReduction) {
            best = SplitResult{node.key, reduction, prefix.sumW, right.sumW, vl, vr};
        }
    });
    return best;
}

std::size_t SplitTree::height() const noexcept {
    if (root_ < 0) return 0;
    std::size_t maxDepth = 0;
    std::vector<std::pair<std::int32_t, std::size_t>> stack{{root_, 1}};
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        maxDepth = std::max(maxDepth, depth);
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (n.lo >= 0) stack.emplace_back(n.lo, depth + 1);
        if (n.hi >= 0) stack.emplace_back(n.hi, depth + 1);
    }
    return maxDepth;
}

std::string SplitTree::dumpCsv() const {
    std::ostringstream out;
    out << "key,n,sum_w,sum_wy,sum_wy2\n";
    WeightedStats acc;
    inorder([&](const Node& node) {
        acc.merge(node.self);
        out << node.key << ',' << acc.n << ',' << acc.sumW << ',' << acc.sumWY << ','
            << acc.sumWY2 << '\n';
    });
    return out.str();
}

} // namespace tsk
