#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "kpred/core.hpp"
#include "kpred/counting.hpp"
#include "kpred/index.hpp"

namespace kpred {

/// Random instance: n distinct 64-bit values dealt round-robin to k arrays,
/// each array sorted afterwards, so array lengths differ by at most one.
/// mt19937_64 output is pinned by the standard, which keeps instances
/// bit-identical for a given seed.
inline ArrayCollection<std::int64_t> make_instance(std::size_t n, std::size_t k,
                                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(n * 2);
    std::vector<std::int64_t> values;
    values.reserve(n);
    while (values.size() < n) {
        const std::uint64_t raw = rng();
        if (seen.insert(raw).second) values.push_back(static_cast<std::int64_t>(raw));
    }
    ArrayCollection<std::int64_t> c;
    c.arrays.resize(k);
    for (std::size_t i = 0; i < values.size(); ++i) c.arrays[i % k].push_back(values[i]);
    for (auto& a : c.arrays) std::sort(a.begin(), a.end());
    return c;
}

inline std::vector<std::int64_t> make_queries(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> queries(count);
    for (auto& q : queries) q = static_cast<std::int64_t>(rng());
    return queries;
}

struct BenchRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t group_size = 0;
    std::size_t group_count = 0;
    std::uint64_t build_comparisons = 0;
    double build_ms = 0.0;
    double mean_query_comparisons = 0.0;
    std::uint64_t p99_query_comparisons = 0;
    double mean_query_ns = 0.0;
};

inline constexpr std::size_t kBenchQueryCount = 10000;

/// One benchmark row: build with the given group size, then run the query
/// batch counting comparisons per query. Wall-clock columns are filled only
/// when measure_time is set; the comparison columns are exact and depend
/// solely on the instance and query batch.
inline BenchRow run_bench_row(const ArrayCollection<std::int64_t>& c, std::size_t group_size,
                              const std::vector<std::int64_t>& queries, QueryKind kind,
                              bool measure_time) {
    BenchRow row;
    const PredIndex<std::int64_t> index = build_index(c, group_size);
    row.n = index.n;
    row.k = index.k;
    row.group_size = index.plan.group_size;
    row.group_count = index.plan.group_count();
    row.build_comparisons = index.build_stats.comparisons;
    row.build_ms = measure_time ? index.build_stats.wall_ms : 0.0;

    std::vector<std::uint64_t> per_query(queries.size());
    std::uint64_t total = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < queries.size(); ++i) {
        ComparisonCounter counter;
        query(index, queries[i], kind, counter);
        per_query[i] = counter.count;
        total += counter.count;
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;

    if (!queries.empty()) {
        row.mean_query_comparisons = static_cast<double>(total) / static_cast<double>(queries.size());
        std::sort(per_query.begin(), per_query.end());
        const std::size_t rank = (queries.size() * 99 + 99) / 100;  // ceil(0.99 * Q)
        row.p99_query_comparisons = per_query[std::min(rank, queries.size()) - 1];
        row.mean_query_ns =
            measure_time
                ? std::chrono::duration<double, std::nano>(elapsed).count() /
                      static_cast<double>(queries.size())
                : 0.0;
    }
    return row;
}

/// Group sizes swept by --sweep-s: powers of two below k, then k itself.
inline std::vector<std::size_t> sweep_group_sizes(std::size_t k) {
    std::vector<std::size_t> sizes;
    for (std::size_t s = 1; s < k; s *= 2) sizes.push_back(s);
    sizes.push_back(k);
    return sizes;
}

inline void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "n,k,s,t,build_comparisons,build_ms,mean_query_comparisons,"
           "p99_query_comparisons,mean_query_ns\n";
    char buf[256];
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%zu,%zu,%zu,%llu,%.3f,%.4f,%llu,%.1f\n", r.n, r.k,
                      r.group_size, r.group_count,
                      static_cast<unsigned long long>(r.build_comparisons), r.build_ms,
                      r.mean_query_comparisons,
                      static_cast<unsigned long long>(r.p99_query_comparisons), r.mean_query_ns);
        out << buf;
    }
}

}  // namespace kpred
