#pragma once

#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kpred/cascade.hpp"
#include "kpred/core.hpp"
#include "kpred/counting.hpp"
#include "kpred/grouped_merge.hpp"

namespace kpred {

/// Group size for k arrays of n values total: ceil(k / floor(log2 n)), at
/// least 1. Whenever k fits within log2 n the groups degenerate to single
/// arrays and the structure is plain fractional cascading.
inline std::size_t choose_group_size(std::size_t n, std::size_t k) {
    if (n == 0 || k == 0) throw std::invalid_argument("need n >= 1 and k >= 1");
    const std::size_t log_n = n == 1 ? 0 : std::bit_width(n) - 1;  // floor(log2 n)
    const std::size_t denom = log_n == 0 ? 1 : log_n;
    return std::max<std::size_t>(1, (k + denom - 1) / denom);
}

struct BuildStats {
    std::uint64_t comparisons = 0;
    double wall_ms = 0.0;
};

/// The assembled structure: grouping plan, merged groups, and the cascade
/// chain over them. Immutable once built; queries are read-only.
template <std::totally_ordered Value>
struct PredIndex {
    GroupingPlan plan;
    CascadeChain<Value> chain;
    std::size_t n = 0;
    std::size_t k = 0;
    BuildStats build_stats;
};

/// Plan groups, heap-merge each group, cascade the results. group_size_override
/// exists so experiments can sweep the merge/query trade-off; by default the
/// size comes from choose_group_size.
template <std::totally_ordered Value>
PredIndex<Value> build_index(const ArrayCollection<Value>& c,
                             std::optional<std::size_t> group_size_override = std::nullopt) {
    validate_collection(c);
    if (group_size_override && *group_size_override == 0) {
        throw std::invalid_argument("group size must be >= 1");
    }
    const auto start = std::chrono::steady_clock::now();

    PredIndex<Value> index;
    index.n = c.total_values();
    index.k = c.array_count();
    const std::size_t group_size =
        group_size_override ? *group_size_override
                            : choose_group_size(std::max<std::size_t>(index.n, 1), index.k);
    index.plan = plan_groups(index.k, group_size);

    ComparisonCounter counter;
    std::vector<MergedGroup<Value>> groups;
    groups.reserve(index.plan.group_count());
    for (const GroupBounds& bounds : index.plan.groups) {
        groups.push_back(merge_group(c, bounds, counter));
    }
    index.chain = build_chain(std::move(groups), counter);

    index.build_stats.comparisons = counter.count;
    index.build_stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return index;
}

template <std::totally_ordered Value>
PredAnswer<Value> query(const PredIndex<Value>& index, const Value& q, QueryKind kind,
                        ComparisonCounter& counter) {
    return chain_query(index.chain, q, kind, counter);
}

template <std::totally_ordered Value>
PredAnswer<Value> query(const PredIndex<Value>& index, const Value& q, QueryKind kind) {
    ComparisonCounter scratch;
    return chain_query(index.chain, q, kind, scratch);
}

}  // namespace kpred
