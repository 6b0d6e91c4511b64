#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpred {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Location of one stored value: which input array and which offset inside it.
struct SourceRef {
    std::size_t array = npos;
    std::size_t pos = npos;

    friend bool operator==(const SourceRef&, const SourceRef&) = default;
};

/// NonStrict asks for the largest value <= q, Strict for the largest value < q.
enum class QueryKind { NonStrict, Strict };

/// Result of a predecessor query. Absent (present == false) means no stored
/// value satisfies the relation; it is a first-class answer, not an error.
template <std::totally_ordered Value>
struct PredAnswer {
    bool present = false;
    Value value{};
    SourceRef source{};

    static PredAnswer absent() { return PredAnswer{}; }
    static PredAnswer of(Value v, SourceRef s) { return PredAnswer{true, v, s}; }

    friend bool operator==(const PredAnswer& a, const PredAnswer& b) {
        if (a.present != b.present) return false;
        if (!a.present) return true;
        return a.value == b.value && a.source == b.source;
    }
};

/// The input instance: k sorted arrays holding n values in total.
/// Inner arrays are non-decreasing; empty inner arrays are allowed.
template <std::totally_ordered Value>
struct ArrayCollection {
    std::vector<std::vector<Value>> arrays;

    std::size_t array_count() const { return arrays.size(); }

    std::size_t total_values() const {
        std::size_t n = 0;
        for (const auto& a : arrays) n += a.size();
        return n;
    }
};

/// Throws std::invalid_argument naming the offending array when an inner
/// array is not sorted or the collection is empty.
template <std::totally_ordered Value>
void validate_collection(const ArrayCollection<Value>& c) {
    if (c.arrays.empty()) {
        throw std::invalid_argument("collection must contain at least one array");
    }
    for (std::size_t i = 0; i < c.arrays.size(); ++i) {
        if (!std::is_sorted(c.arrays[i].begin(), c.arrays[i].end())) {
            throw std::invalid_argument("array " + std::to_string(i) + " is not sorted");
        }
    }
}

/// The fully merged view of a collection, used as the reference oracle.
/// values is sorted; ties are ordered by (array, pos), so the merge is stable
/// with respect to increasing array index.
template <std::totally_ordered Value>
struct SortedMerged {
    std::vector<Value> values;
    std::vector<SourceRef> sources;

    std::size_t size() const { return values.size(); }
};

/// Brute-force merge: tag every value with its origin and sort. Deliberately
/// takes no shortcuts so it can stand as the oracle for the real structure.
template <std::totally_ordered Value>
SortedMerged<Value> oracle_build(const ArrayCollection<Value>& c) {
    struct Tagged {
        Value value;
        std::size_t array;
        std::size_t pos;
    };
    std::vector<Tagged> all;
    all.reserve(c.total_values());
    for (std::size_t i = 0; i < c.arrays.size(); ++i) {
        for (std::size_t p = 0; p < c.arrays[i].size(); ++p) {
            all.push_back(Tagged{c.arrays[i][p], i, p});
        }
    }
    std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.array != b.array) return a.array < b.array;
        return a.pos < b.pos;
    });
    SortedMerged<Value> m;
    m.values.reserve(all.size());
    m.sources.reserve(all.size());
    for (const auto& t : all) {
        m.values.push_back(t.value);
        m.sources.push_back(SourceRef{t.array, t.pos});
    }
    return m;
}

/// Reference query semantics: binary search on the merged array. Equal values
/// resolve to the rightmost occurrence, so the reported source is the one
/// with the largest (array, pos) among entries equal to the answer.
template <std::totally_ordered Value>
PredAnswer<Value> oracle_query(const SortedMerged<Value>& m, const Value& q, QueryKind kind) {
    // Index of the first element that fails the relation; the answer sits
    // just before it.
    std::size_t idx;
    if (kind == QueryKind::NonStrict) {
        idx = static_cast<std::size_t>(
            std::upper_bound(m.values.begin(), m.values.end(), q) - m.values.begin());
    } else {
        idx = static_cast<std::size_t>(
            std::lower_bound(m.values.begin(), m.values.end(), q) - m.values.begin());
    }
    if (idx == 0) return PredAnswer<Value>::absent();
    return PredAnswer<Value>::of(m.values[idx - 1], m.sources[idx - 1]);
}

}  // namespace kpred
