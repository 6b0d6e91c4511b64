#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kpred/core.hpp"
#include "kpred/counting.hpp"

namespace kpred {

/// Half-open range [begin, end) of input-array indices forming one group.
struct GroupBounds {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t width() const { return end - begin; }

    friend bool operator==(const GroupBounds&, const GroupBounds&) = default;
};

/// Contiguous partition of the k arrays into groups of at most group_size
/// arrays each; only the last group may be smaller.
struct GroupingPlan {
    std::size_t group_size = 1;
    std::vector<GroupBounds> groups;

    std::size_t group_count() const { return groups.size(); }
};

inline GroupingPlan plan_groups(std::size_t array_count, std::size_t group_size) {
    if (group_size == 0) throw std::invalid_argument("group size must be >= 1");
    if (array_count == 0) throw std::invalid_argument("need at least one array");
    GroupingPlan plan;
    plan.group_size = group_size;
    for (std::size_t begin = 0; begin < array_count; begin += group_size) {
        plan.groups.push_back(GroupBounds{begin, std::min(begin + group_size, array_count)});
    }
    return plan;
}

/// One group's arrays merged into a single sorted run, with the origin of
/// every value kept alongside it.
template <std::totally_ordered Value>
struct MergedGroup {
    std::vector<Value> values;
    std::vector<SourceRef> sources;

    std::size_t size() const { return values.size(); }
};

namespace detail {

/// Binary min-heap over merge cursors, ordered by (value, array index) so
/// that equal values pop in increasing array order. At most one cursor per
/// array lives in the heap, which makes that order strict and the merge
/// output deterministic. Every ordering test charges the counter.
template <std::totally_ordered Value>
class MergeHeap {
public:
    struct Cursor {
        Value value;
        std::size_t array;
        std::size_t pos;
    };

    explicit MergeHeap(ComparisonCounter& counter) : counter_(&counter) {}

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    const Cursor& top() const { return heap_.front(); }

    /// Bulk seed, then Floyd heapify: cheaper in comparisons than repeated
    /// sift-up inserts.
    void assign(std::vector<Cursor> cursors) {
        heap_ = std::move(cursors);
        if (heap_.size() < 2) return;
        for (std::size_t i = heap_.size() / 2; i-- > 0;) sift_down(i);
    }

    /// Swap the minimum for its successor cursor and restore heap order.
    void replace_top(Cursor next) {
        heap_.front() = std::move(next);
        sift_down(0);
    }

    void pop_top() {
        heap_.front() = std::move(heap_.back());
        heap_.pop_back();
        if (!heap_.empty()) sift_down(0);
    }

private:
    bool less(const Cursor& a, const Cursor& b) {
        counter_->add(1);
        if (a.value != b.value) return a.value < b.value;
        return a.array < b.array;
    }

    void sift_down(std::size_t i) {
        const std::size_t n = heap_.size();
        while (true) {
            const std::size_t left = 2 * i + 1;
            if (left >= n) return;
            std::size_t child = left;
            const std::size_t right = left + 1;
            if (right < n && less(heap_[right], heap_[left])) child = right;
            if (!less(heap_[child], heap_[i])) return;
            std::swap(heap_[child], heap_[i]);
            i = child;
        }
    }

    std::vector<Cursor> heap_;
    ComparisonCounter* counter_;
};

}  // namespace detail

/// Merge the arrays in [bounds.begin, bounds.end) of c into one sorted run.
/// Single-array groups are copied verbatim and cost zero comparisons.
template <std::totally_ordered Value>
MergedGroup<Value> merge_group(const ArrayCollection<Value>& c, GroupBounds bounds,
                               ComparisonCounter& counter) {
    assert(bounds.begin < bounds.end && bounds.end <= c.arrays.size());
    MergedGroup<Value> out;

    if (bounds.width() == 1) {
        const auto& a = c.arrays[bounds.begin];
        out.values = a;
        out.sources.reserve(a.size());
        for (std::size_t p = 0; p < a.size(); ++p) {
            out.sources.push_back(SourceRef{bounds.begin, p});
        }
        return out;
    }

    using Cursor = typename detail::MergeHeap<Value>::Cursor;
    std::vector<Cursor> initial;
    std::size_t total = 0;
    for (std::size_t i = bounds.begin; i < bounds.end; ++i) {
        total += c.arrays[i].size();
        if (!c.arrays[i].empty()) initial.push_back(Cursor{c.arrays[i][0], i, 0});
    }
    out.values.reserve(total);
    out.sources.reserve(total);

    detail::MergeHeap<Value> heap(counter);
    heap.assign(std::move(initial));
    while (!heap.empty()) {
        const Cursor& min = heap.top();
        const std::size_t array = min.array;
        const std::size_t pos = min.pos;
        out.values.push_back(min.value);
        out.sources.push_back(SourceRef{array, pos});
        const auto& src = c.arrays[array];
        if (pos + 1 < src.size()) {
            heap.replace_top(Cursor{src[pos + 1], array, pos + 1});
        } else {
            heap.pop_top();
        }
    }
    return out;
}

}  // namespace kpred
