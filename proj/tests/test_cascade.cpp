#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kpred/cascade.hpp"
#include "kpred/core.hpp"
#include "kpred/grouped_merge.hpp"
#include "test_util.hpp"

using namespace kpred;
using kpred::testing::group_pred_oracle;
using kpred::testing::lists_equal;
using kpred::testing::query_sweep;
using kpred::testing::random_collection;
using kpred::testing::reference_lists;

namespace {

std::vector<MergedGroup<std::int64_t>> make_groups(const ArrayCollection<std::int64_t>& c,
                                                   std::size_t group_size) {
    ComparisonCounter counter;
    const auto plan = plan_groups(c.array_count(), group_size);
    std::vector<MergedGroup<std::int64_t>> groups;
    for (const auto& bounds : plan.groups) groups.push_back(merge_group(c, bounds, counter));
    return groups;
}

}  // namespace

TEST_CASE("single group chain is the group itself", "[cascade]") {
    ArrayCollection<std::int64_t> c{{{1, 2, 3}}};
    ComparisonCounter counter;
    const auto chain = build_chain(make_groups(c, 1), counter);
    REQUIRE(chain.list_count() == 1);
    REQUIRE(chain.lists[0].size() == 3);
    REQUIRE(chain.lists[0].own_count == 3);
    for (std::size_t p = 0; p < 3; ++p) {
        const auto& e = chain.lists[0].entries[p];
        REQUIRE(e.kind == EntryKind::Native);
        REQUIRE(e.own_bridge == p);
        REQUIRE(e.down_bridge == npos);
    }
}

TEST_CASE("augmentation samples every second entry of the next list", "[cascade]") {
    // groups [10] and [1,2,3,4]: the first list picks up copies of 2 and 4
    ArrayCollection<std::int64_t> c{{{10}, {1, 2, 3, 4}}};
    ComparisonCounter counter;
    const auto chain = build_chain(make_groups(c, 1), counter);
    REQUIRE(chain.list_count() == 2);

    const auto& back = chain.lists[1];
    REQUIRE(back.size() == 4);
    REQUIRE(back.own_count == 4);

    const auto& front = chain.lists[0].entries;
    REQUIRE(front.size() == 3);
    REQUIRE(chain.lists[0].own_count == 1);

    REQUIRE(front[0].value == 2);
    REQUIRE(front[0].kind == EntryKind::Copied);
    REQUIRE(front[0].own_bridge == npos);
    REQUIRE(front[0].down_bridge == 1);

    REQUIRE(front[1].value == 4);
    REQUIRE(front[1].kind == EntryKind::Copied);
    REQUIRE(front[1].own_bridge == npos);
    REQUIRE(front[1].down_bridge == 3);

    REQUIRE(front[2].value == 10);
    REQUIRE(front[2].kind == EntryKind::Native);
    REQUIRE(front[2].own_bridge == 2);
    REQUIRE(front[2].down_bridge == 3);
    REQUIRE(front[2].source == SourceRef{0, 0});
}

TEST_CASE("build_chain matches the recursive reference construction", "[cascade]") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t k = 1 + rng() % 16;
        const std::size_t n = rng() % 300;
        auto c = random_collection(rng, n, k);
        const std::size_t group_size = 1 + rng() % k;
        auto groups = make_groups(c, group_size);
        ComparisonCounter counter;
        const auto chain = build_chain(groups, counter);
        REQUIRE(lists_equal(chain.lists, reference_lists(groups)));
    }
}

TEST_CASE("chain occupies at most twice the input", "[cascade]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k = 1 + rng() % 24;
        auto c = random_collection(rng, rng() % 500, k);
        ComparisonCounter counter;
        const auto chain = build_chain(make_groups(c, 1 + rng() % 4), counter);
        REQUIRE(chain.total_entries() <= 2 * c.total_values());
    }

    // 4 groups of 8 values each
    auto c = random_collection(rng, 32, 4);
    ComparisonCounter counter;
    const auto chain = build_chain(make_groups(c, 1), counter);
    REQUIRE(chain.total_entries() <= 64);
}

TEST_CASE("build_chain performs linear comparisons only", "[cascade]") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        auto c = random_collection(rng, 200 + rng() % 200, 1 + rng() % 12);
        auto groups = make_groups(c, 2);
        ComparisonCounter counter;
        const auto chain = build_chain(std::move(groups), counter);
        REQUIRE(counter.count <= chain.total_entries());
    }
}

TEST_CASE("bridges are monotone along every list", "[cascade]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = random_collection(rng, rng() % 400, 1 + rng() % 10);
        ComparisonCounter counter;
        const auto chain = build_chain(make_groups(c, 1 + rng() % 3), counter);
        for (const auto& list : chain.lists) {
            std::size_t prev_own = 0;
            std::size_t prev_down = 0;
            bool own_seen = false, down_seen = false;
            for (const auto& e : list.entries) {
                if (e.own_bridge != npos) {
                    if (own_seen) REQUIRE(prev_own <= e.own_bridge);
                    prev_own = e.own_bridge;
                    own_seen = true;
                }
                if (e.down_bridge != npos) {
                    if (down_seen) REQUIRE(prev_down <= e.down_bridge);
                    prev_down = e.down_bridge;
                    down_seen = true;
                }
            }
        }
    }
}

TEST_CASE("down bridges land within the hop window", "[cascade]") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        auto c = random_collection(rng, 2 + rng() % 120, 1 + rng() % 8);
        ComparisonCounter counter;
        const auto chain = build_chain(make_groups(c, 1 + rng() % 3), counter);
        const auto merged = oracle_build(c);
        for (const auto q : query_sweep(merged)) {
            for (const auto kind : {QueryKind::NonStrict, QueryKind::Strict}) {
                // walk manually, comparing each landing against a per-list
                // binary search for the true predecessor position
                auto true_pos = [&](const AugmentedList<std::int64_t>& list) {
                    std::size_t lo = 0, hi = list.size();
                    while (lo < hi) {
                        const std::size_t mid = (lo + hi) / 2;
                        const bool ok = kind == QueryKind::NonStrict
                                            ? list.entries[mid].value <= q
                                            : list.entries[mid].value < q;
                        if (ok) lo = mid + 1; else hi = mid;
                    }
                    return lo == 0 ? npos : lo - 1;
                };
                std::size_t pos = true_pos(chain.lists[0]);
                for (std::size_t i = 0; i + 1 < chain.list_count(); ++i) {
                    const auto& next = chain.lists[i + 1];
                    const std::size_t landing =
                        pos == npos ? npos : chain.lists[i].entries[pos].down_bridge;
                    const std::size_t target = true_pos(next);
                    // target is never behind the landing, and never more than
                    // kHopWindow ahead of it
                    if (landing == npos) {
                        REQUIRE((target == npos || target == 0));
                    } else {
                        REQUIRE(target != npos);
                        REQUIRE(landing <= target);
                        REQUIRE(target - landing <= kHopWindow);
                    }
                    pos = target;
                }
            }
        }
    }
}

TEST_CASE("chain_query combines per-group answers", "[cascade]") {
    ArrayCollection<std::int64_t> c{{{1, 5}, {3, 7}}};
    ComparisonCounter counter;
    const auto chain = build_chain(make_groups(c, 1), counter);

    const auto at6 = chain_query(chain, std::int64_t{6}, QueryKind::NonStrict, counter);
    REQUIRE(at6.present);
    REQUIRE(at6.value == 5);

    REQUIRE_FALSE(chain_query(chain, std::int64_t{0}, QueryKind::NonStrict, counter).present);
    REQUIRE_FALSE(chain_query(chain, std::int64_t{1}, QueryKind::Strict, counter).present);
}

TEST_CASE("per_group_predecessors answers each group independently", "[cascade]") {
    ArrayCollection<std::int64_t> c{{{1, 5}, {3, 7}}};
    ComparisonCounter counter;
    const auto chain = build_chain(make_groups(c, 1), counter);

    const auto at6 = per_group_predecessors(chain, std::int64_t{6}, QueryKind::NonStrict, counter);
    REQUIRE(at6.size() == 2);
    REQUIRE(at6[0].value == 5);
    REQUIRE(at6[1].value == 3);

    const auto at3 = per_group_predecessors(chain, std::int64_t{3}, QueryKind::Strict, counter);
    REQUIRE(at3[0].value == 1);
    REQUIRE_FALSE(at3[1].present);
}

TEST_CASE("per_group_predecessors equals binary search per group", "[cascade]") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = random_collection(rng, 1 + rng() % 250, 1 + rng() % 10);
        auto groups = make_groups(c, 1 + rng() % 4);
        ComparisonCounter counter;
        const auto chain = build_chain(groups, counter);
        const auto merged = oracle_build(c);
        for (const auto q : query_sweep(merged)) {
            for (const auto kind : {QueryKind::NonStrict, QueryKind::Strict}) {
                const auto got = per_group_predecessors(chain, q, kind, counter);
                REQUIRE(got.size() == groups.size());
                for (std::size_t i = 0; i < groups.size(); ++i) {
                    REQUIRE(got[i] == group_pred_oracle(groups[i], q, kind));
                }
            }
        }
    }
}

TEST_CASE("chain_query equals the oracle on random instances", "[cascade]") {
    std::mt19937_64 rng(16);
    auto c = random_collection(rng, 512, 16);
    ComparisonCounter counter;
    const auto chain = build_chain(make_groups(c, 4), counter);
    const auto merged = oracle_build(c);
    for (int i = 0; i < 10000; ++i) {
        const auto q = static_cast<std::int64_t>(rng());
        for (const auto kind : {QueryKind::NonStrict, QueryKind::Strict}) {
            REQUIRE(chain_query(chain, q, kind, counter) == oracle_query(merged, q, kind));
        }
    }
}

TEST_CASE("query comparisons stay logarithmic plus constant per hop", "[cascade]") {
    std::mt19937_64 rng(17);
    auto c = random_collection(rng, 2048, 32);
    ComparisonCounter build_counter;
    const auto chain = build_chain(make_groups(c, 2), build_counter);
    const double search_term =
        std::ceil(std::log2(static_cast<double>(chain.lists[0].size()) + 1.0));
    for (int i = 0; i < 2000; ++i) {
        ComparisonCounter counter;
        chain_query(chain, static_cast<std::int64_t>(rng()), QueryKind::Strict, counter);
        REQUIRE(static_cast<double>(counter.count) <=
                2.0 * search_term + 4.0 * static_cast<double>(chain.list_count()));
    }
}

TEST_CASE("empty groups yield copied-only lists and correct queries", "[cascade]") {
    ArrayCollection<std::int64_t> c{{{}, {1, 2, 3, 4, 5, 6}}};
    ComparisonCounter counter;
    const auto chain = build_chain(make_groups(c, 1), counter);
    REQUIRE(chain.lists[0].own_count == 0);
    for (const auto& e : chain.lists[0].entries) REQUIRE(e.kind == EntryKind::Copied);

    const auto merged = oracle_build(c);
    for (const auto q : query_sweep(merged)) {
        for (const auto kind : {QueryKind::NonStrict, QueryKind::Strict}) {
            REQUIRE(chain_query(chain, q, kind, counter) == oracle_query(merged, q, kind));
        }
    }

    // every group empty
    ArrayCollection<std::int64_t> empty{{{}, {}, {}}};
    const auto empty_chain = build_chain(make_groups(empty, 1), counter);
    REQUIRE_FALSE(chain_query(empty_chain, std::int64_t{0}, QueryKind::NonStrict, counter).present);
}
