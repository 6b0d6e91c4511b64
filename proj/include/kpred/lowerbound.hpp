#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace kpred {

/// Hard cap on brute-force enumeration; factorial arithmetic stays exact in
/// 64 bits well past this point.
inline constexpr std::size_t kMaxEnumerationValues = 12;
inline constexpr std::size_t kDefaultEnumerationBudget = 10;

/// A colored-sequence instance: n entries over k colors (color i occurring
/// sizes[i] times) with a separator after every `block` entries; the last
/// block may be short. Two colorings are equivalent when one turns into the
/// other by reordering entries inside blocks only.
struct SwapClassInstance {
    std::vector<std::size_t> sizes;
    std::size_t block = 1;
    std::size_t budget = kDefaultEnumerationBudget;

    std::size_t total() const {
        return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    }
    std::size_t color_count() const { return sizes.size(); }

    /// Separators sit between blocks only; none trails the sequence.
    std::size_t separator_count() const {
        const std::size_t n = total();
        return n == 0 ? 0 : (n + block - 1) / block - 1;
    }
};

inline void validate_instance(const SwapClassInstance& inst) {
    if (inst.sizes.empty()) throw std::invalid_argument("need at least one color");
    if (inst.block == 0) throw std::invalid_argument("block length must be >= 1");
    const std::size_t n = inst.total();
    if (n == 0) throw std::invalid_argument("need at least one entry");
    if (n > inst.budget || n > kMaxEnumerationValues) {
        throw std::invalid_argument("instance exceeds enumeration budget of " +
                                    std::to_string(std::min(inst.budget, kMaxEnumerationValues)));
    }
}

namespace detail {

inline std::uint64_t factorial(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Product of (length)! over the blocks of an n-entry sequence; the short
/// last block contributes its true length's factorial.
inline std::uint64_t block_permutations(std::size_t n, std::size_t block) {
    std::uint64_t product = 1;
    for (std::size_t at = 0; at < n; at += block) {
        product *= factorial(std::min(block, n - at));
    }
    return product;
}

}  // namespace detail

/// Number of ways to distribute n distinct values into sorted arrays of the
/// given sizes: the multinomial n! / (sizes[0]! * sizes[1]! * ...).
inline std::uint64_t count_distributions(const std::vector<std::size_t>& sizes) {
    const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (n > kMaxEnumerationValues) {
        throw std::invalid_argument("multinomial budget is n <= " +
                                    std::to_string(kMaxEnumerationValues));
    }
    std::uint64_t result = detail::factorial(n);
    for (std::size_t s : sizes) result /= detail::factorial(s);
    return result;
}

namespace detail {

/// Lexicographically first coloring: color 0 repeated sizes[0] times, etc.
inline std::vector<std::uint8_t> first_coloring(const SwapClassInstance& inst) {
    std::vector<std::uint8_t> coloring;
    coloring.reserve(inst.total());
    for (std::size_t color = 0; color < inst.sizes.size(); ++color) {
        coloring.insert(coloring.end(), inst.sizes[color], static_cast<std::uint8_t>(color));
    }
    return coloring;
}

/// Canonical representative: each block sorted, i.e. the block's color
/// multiset. Equal canonical forms = same swap-equivalence class.
inline std::string canonical_form(const std::vector<std::uint8_t>& coloring, std::size_t block) {
    std::string canon(coloring.begin(), coloring.end());
    for (std::size_t at = 0; at < canon.size(); at += block) {
        const std::size_t end = std::min(at + block, canon.size());
        std::sort(canon.begin() + static_cast<std::ptrdiff_t>(at),
                  canon.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return canon;
}

}  // namespace detail

/// Visits every distinct coloring of the instance in lexicographic order.
template <typename Visit>
void for_each_coloring(const SwapClassInstance& inst, Visit&& visit) {
    validate_instance(inst);
    std::vector<std::uint8_t> coloring = detail::first_coloring(inst);
    do {
        visit(static_cast<const std::vector<std::uint8_t>&>(coloring));
    } while (std::next_permutation(coloring.begin(), coloring.end()));
}

/// Brute-force class count: enumerate all colorings and count distinct
/// per-block multiset sequences.
inline std::uint64_t count_swap_classes(const SwapClassInstance& inst) {
    std::unordered_set<std::string> canon;
    for_each_coloring(inst, [&](const std::vector<std::uint8_t>& coloring) {
        canon.insert(detail::canonical_form(coloring, inst.block));
    });
    return canon.size();
}

/// classes >= distributions / block_permutations, compared exactly in
/// integers. This inequality is the lab's reason to exist; holds must come
/// back true on every instance within budget.
struct BoundReport {
    std::uint64_t classes = 0;
    std::uint64_t distributions = 0;
    std::uint64_t block_permutations = 0;
    bool holds = false;

    double classes_log2() const { return std::log2(static_cast<double>(classes)); }
    double bound_log2() const {
        return std::log2(static_cast<double>(distributions)) -
               std::log2(static_cast<double>(block_permutations));
    }
};

inline BoundReport check_bound(const SwapClassInstance& inst) {
    validate_instance(inst);
    BoundReport report;
    report.classes = count_swap_classes(inst);
    report.distributions = count_distributions(inst.sizes);
    report.block_permutations = detail::block_permutations(inst.total(), inst.block);
    report.holds = report.classes * report.block_permutations >= report.distributions;
    return report;
}

struct ScalingRow {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t block = 0;
    std::uint64_t classes = 0;
    double log2_classes = 0.0;
    double bound_log2 = 0.0;  // n * log2(k / block), the asymptotic echo
};

/// One row per color count, balanced sizes n/k each. Demonstrates that
/// log2(classes) grows with k at fixed n and block length.
inline std::vector<ScalingRow> scaling_table(const std::vector<std::size_t>& k_values,
                                             std::size_t n, std::size_t block,
                                             std::size_t budget = kDefaultEnumerationBudget) {
    std::vector<ScalingRow> rows;
    rows.reserve(k_values.size());
    for (std::size_t k : k_values) {
        if (k == 0 || n % k != 0) {
            throw std::invalid_argument("k must divide n for balanced sizes (k=" +
                                        std::to_string(k) + ", n=" + std::to_string(n) + ")");
        }
        SwapClassInstance inst{std::vector<std::size_t>(k, n / k), block, budget};
        ScalingRow row;
        row.k = k;
        row.n = n;
        row.block = block;
        row.classes = count_swap_classes(inst);
        row.log2_classes = std::log2(static_cast<double>(row.classes));
        row.bound_log2 = static_cast<double>(n) *
                         (std::log2(static_cast<double>(k)) - std::log2(static_cast<double>(block)));
        rows.push_back(row);
    }
    return rows;
}

/// CSV per the stated format; the leading comment lines document the
/// batch-verification dimension the separators stand in for.
inline void write_classes_csv(const std::vector<ScalingRow>& rows, std::ostream& out) {
    if (!rows.empty()) {
        const std::size_t n = rows.front().n;
        const std::size_t block = rows.front().block;
        const std::size_t m = n == 0 ? 0 : (n + block - 1) / block - 1;
        out << "# separators m = ceil(n/b) - 1 = " << m
            << "; membership dimension d = n + 2m = " << (n + 2 * m) << "\n";
        out << "# component-count query floor: log2(classes) - d\n";
    }
    out << "k,n,b,classes,log2_classes,bound_log2\n";
    char buf[160];
    for (const ScalingRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%zu,%zu,%llu,%.6f,%.6f\n", r.k, r.n, r.block,
                      static_cast<unsigned long long>(r.classes), r.log2_classes, r.bound_log2);
        out << buf;
    }
}

}  // namespace kpred
