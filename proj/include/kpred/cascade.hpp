#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "kpred/core.hpp"
#include "kpred/counting.hpp"
#include "kpred/grouped_merge.hpp"

namespace kpred {

enum class EntryKind : std::uint8_t { Native = 0, Copied = 1 };

/// After landing via a down bridge, the true predecessor position in the next
/// list lies at most this many steps ahead. Fixed by the every-second-element
/// sampling rate.
inline constexpr std::size_t kHopWindow = 1;

/// One slot of an augmented list.
///   own_bridge  — index of the nearest Native entry at or before this slot,
///                 npos when none exists yet.
///   down_bridge — for Copied entries the position in the next list they were
///                 copied from; for Native entries the down target of the
///                 nearest Copied entry at or before, npos when none exists.
///   source      — origin of the value for Native entries; unset for Copied.
/// Both bridges are non-decreasing along a list.
template <std::totally_ordered Value>
struct AugmentedEntry {
    Value value{};
    EntryKind kind = EntryKind::Native;
    std::size_t own_bridge = npos;
    std::size_t down_bridge = npos;
    SourceRef source{};
};

/// A merged group's sorted run augmented with every second entry of the next
/// list. Ties order Copied before Native. own_count is the number of Native
/// entries, i.e. the size of the underlying merged group.
template <std::totally_ordered Value>
struct AugmentedList {
    std::vector<AugmentedEntry<Value>> entries;
    std::size_t own_count = 0;

    std::size_t size() const { return entries.size(); }
};

/// The full chain: one augmented list per merged group, plus the groups
/// themselves. Queries start at lists[0] and cascade toward the back.
template <std::totally_ordered Value>
struct CascadeChain {
    std::vector<AugmentedList<Value>> lists;
    std::vector<MergedGroup<Value>> groups;

    std::size_t list_count() const { return lists.size(); }

    std::size_t total_entries() const {
        std::size_t total = 0;
        for (const auto& l : lists) total += l.size();
        return total;
    }
};

/// Builds the chain back to front: the last list is its group verbatim, and
/// each earlier list merges its group with every second entry of the list
/// just built. Linear merges only, so the whole build charges at most
/// total_entries() comparisons. Total size never exceeds twice the input.
template <std::totally_ordered Value>
CascadeChain<Value> build_chain(std::vector<MergedGroup<Value>> groups,
                                ComparisonCounter& counter) {
    assert(!groups.empty());
    CascadeChain<Value> chain;
    chain.lists.resize(groups.size());

    for (std::size_t i = groups.size(); i-- > 0;) {
        const MergedGroup<Value>& own = groups[i];
        AugmentedList<Value>& list = chain.lists[i];
        list.own_count = own.size();

        // Positions 1, 3, 5, ... of the list below, if any.
        const AugmentedList<Value>* below =
            (i + 1 < groups.size()) ? &chain.lists[i + 1] : nullptr;
        const std::size_t sampled = below ? below->size() / 2 : 0;
        list.entries.reserve(own.size() + sampled);

        std::size_t last_native = npos;       // own_bridge running value
        std::size_t last_down = npos;         // down_bridge running value for natives
        std::size_t native_at = 0;            // cursor into own
        std::size_t sample_at = 1;            // cursor into below (odd positions)

        auto push_native = [&] {
            AugmentedEntry<Value> e;
            e.value = own.values[native_at];
            e.kind = EntryKind::Native;
            e.down_bridge = last_down;
            e.source = own.sources[native_at];
            last_native = list.entries.size();
            e.own_bridge = last_native;
            list.entries.push_back(std::move(e));
            ++native_at;
        };
        auto push_copied = [&] {
            AugmentedEntry<Value> e;
            e.value = below->entries[sample_at].value;
            e.kind = EntryKind::Copied;
            e.own_bridge = last_native;
            e.down_bridge = sample_at;
            last_down = sample_at;
            list.entries.push_back(std::move(e));
            sample_at += 2;
        };

        while (native_at < own.size() && below && sample_at < below->size()) {
            counter.add(1);
            if (below->entries[sample_at].value <= own.values[native_at]) {
                push_copied();
            } else {
                push_native();
            }
        }
        while (native_at < own.size()) push_native();
        while (below && sample_at < below->size()) push_copied();
    }

    chain.groups = std::move(groups);
    return chain;
}

namespace detail {

template <std::totally_ordered Value>
bool satisfies(const Value& v, const Value& q, QueryKind kind, ComparisonCounter& counter) {
    counter.add(1);
    return kind == QueryKind::NonStrict ? v <= q : v < q;
}

/// Largest index whose value satisfies the query relation, npos when none.
template <std::totally_ordered Value>
std::size_t pred_position(const AugmentedList<Value>& list, const Value& q, QueryKind kind,
                          ComparisonCounter& counter) {
    std::size_t lo = 0;
    std::size_t hi = list.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (satisfies(list.entries[mid].value, q, kind, counter)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo == 0 ? npos : lo - 1;
}

/// One binary search in the first list, then constant work per hop: follow
/// the down bridge and advance at most kHopWindow steps. visit is called once
/// per list with the predecessor position in that list (npos when the query
/// precedes the whole list).
template <std::totally_ordered Value, typename Visit>
void walk_chain(const CascadeChain<Value>& chain, const Value& q, QueryKind kind,
                ComparisonCounter& counter, Visit&& visit) {
    std::size_t pos = pred_position(chain.lists[0], q, kind, counter);
    for (std::size_t i = 0;; ++i) {
        visit(i, pos);
        if (i + 1 == chain.lists.size()) break;

        const AugmentedList<Value>& next = chain.lists[i + 1];
        std::size_t cand = (pos == npos) ? npos : chain.lists[i].entries[pos].down_bridge;
        // The landing entry already satisfies the relation (its copy did);
        // only entries past it need testing.
        std::size_t probe = (cand == npos) ? 0 : cand + 1;
        [[maybe_unused]] std::size_t steps = 0;
        while (probe < next.size() && satisfies(next.entries[probe].value, q, kind, counter)) {
            cand = probe;
            ++probe;
            assert(++steps <= kHopWindow);
        }
        pos = cand;
    }
}

}  // namespace detail

/// Predecessor of q within each group alone, in group order.
template <std::totally_ordered Value>
std::vector<PredAnswer<Value>> per_group_predecessors(const CascadeChain<Value>& chain,
                                                      const Value& q, QueryKind kind,
                                                      ComparisonCounter& counter) {
    std::vector<PredAnswer<Value>> answers(chain.list_count(), PredAnswer<Value>::absent());
    detail::walk_chain(chain, q, kind, counter, [&](std::size_t i, std::size_t pos) {
        if (pos == npos) return;
        const std::size_t native = chain.lists[i].entries[pos].own_bridge;
        if (native == npos) return;
        const auto& e = chain.lists[i].entries[native];
        answers[i] = PredAnswer<Value>::of(e.value, e.source);
    });
    return answers;
}

/// Overall predecessor: the largest per-group answer, Absent when every group
/// comes up empty. Ties keep the later group so that duplicated values
/// resolve to the rightmost occurrence of the merged order, matching the
/// oracle bit for bit.
template <std::totally_ordered Value>
PredAnswer<Value> chain_query(const CascadeChain<Value>& chain, const Value& q, QueryKind kind,
                              ComparisonCounter& counter) {
    PredAnswer<Value> best = PredAnswer<Value>::absent();
    detail::walk_chain(chain, q, kind, counter, [&](std::size_t i, std::size_t pos) {
        if (pos == npos) return;
        const std::size_t native = chain.lists[i].entries[pos].own_bridge;
        if (native == npos) return;
        const auto& e = chain.lists[i].entries[native];
        if (best.present) {
            counter.add(1);
            if (e.value < best.value) return;
        }
        best = PredAnswer<Value>::of(e.value, e.source);
    });
    return best;
}

}  // namespace kpred
