#pragma once

#include <cstdint>

namespace kpred {

/// Tally of ordered-value comparisons. Every operation that compares stored
/// values (heap merge, cascade build, query search) charges the counter it
/// was handed; one call to an ordering predicate costs one unit.
struct ComparisonCounter {
    std::uint64_t count = 0;

    void add(std::uint64_t delta = 1) { count += delta; }
    void reset() { count = 0; }
};

}  // namespace kpred
