// Command-line front end: build and query index files, run benchmark sweeps,
// and run the swap-class counting lab. Exit codes: 0 success, 1 violated
// counting bound, 2 bad arguments or parse error, 3 I/O error.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kpred/bench.hpp"
#include "kpred/core.hpp"
#include "kpred/index.hpp"
#include "kpred/io.hpp"
#include "kpred/lowerbound.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundViolated = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;

int cmd_build(const std::string& input_path, const std::string& out_path,
              std::optional<std::size_t> group_size) {
    if (group_size && *group_size == 0) {
        std::cerr << "error: group size must be >= 1\n";
        return kExitBadInput;
    }
    kpred::ArrayCollection<std::int64_t> collection;
    try {
        collection = kpred::parse_instance_file(input_path);
    } catch (const kpred::ParseError& e) {
        std::cerr << "error: " << input_path << ": " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    const auto index = kpred::build_index(collection, group_size);
    try {
        kpred::save_index_file(index, out_path);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    std::printf("n=%zu k=%zu s=%zu t=%zu comparisons=%" PRIu64 " ms=%.3f\n", index.n, index.k,
                index.plan.group_size, index.plan.group_count(), index.build_stats.comparisons,
                index.build_stats.wall_ms);
    return kExitOk;
}

int cmd_query(const std::string& index_path, const std::vector<std::int64_t>& queries,
              bool strict) {
    kpred::PredIndex<std::int64_t> index;
    try {
        index = kpred::load_index_file(index_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << index_path << ": " << e.what() << "\n";
        return kExitIo;
    }
    const auto kind = strict ? kpred::QueryKind::Strict : kpred::QueryKind::NonStrict;
    for (const std::int64_t q : queries) {
        const auto answer = kpred::query(index, q, kind);
        if (answer.present) {
            // Arrays are numbered by input line (1-based); positions are
            // 0-based offsets within the line.
            std::printf("%" PRId64 " %" PRId64 " %zu:%zu\n", q, answer.value,
                        answer.source.array + 1, answer.source.pos);
        } else {
            std::printf("%" PRId64 " ABSENT\n", q);
        }
    }
    return kExitOk;
}

int cmd_bench(std::size_t n, std::size_t k, bool sweep, std::uint64_t seed,
              const std::string& csv_path, bool wall_time) {
    if (n == 0 || k == 0) {
        std::cerr << "error: need --n >= 1 and --k >= 1\n";
        return kExitBadInput;
    }
    const auto collection = kpred::make_instance(n, k, seed);
    const auto queries = kpred::make_queries(kpred::kBenchQueryCount, seed ^ 0x9e3779b97f4a7c15ull);

    std::vector<std::size_t> group_sizes;
    if (sweep) {
        group_sizes = kpred::sweep_group_sizes(k);
    } else {
        group_sizes.push_back(kpred::choose_group_size(n, k));
    }
    std::vector<kpred::BenchRow> rows;
    rows.reserve(group_sizes.size());
    for (const std::size_t s : group_sizes) {
        rows.push_back(
            kpred::run_bench_row(collection, s, queries, kpred::QueryKind::Strict, wall_time));
    }

    std::ofstream out(csv_path);
    if (!out) {
        std::cerr << "error: cannot open '" << csv_path << "' for writing\n";
        return kExitIo;
    }
    kpred::write_bench_csv(rows, out);
    if (!out.flush()) {
        std::cerr << "error: write to '" << csv_path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

int cmd_classes(std::size_t n, const std::vector<std::size_t>& k_values, std::size_t block,
                const std::vector<std::size_t>& sizes) {
    try {
        std::vector<kpred::ScalingRow> rows;
        bool all_hold = true;
        if (!sizes.empty()) {
            kpred::SwapClassInstance inst{sizes, block};
            const auto report = kpred::check_bound(inst);
            all_hold = report.holds;
            kpred::ScalingRow row;
            row.k = sizes.size();
            row.n = inst.total();
            row.block = block;
            row.classes = report.classes;
            row.log2_classes = report.classes_log2();
            row.bound_log2 = static_cast<double>(row.n) *
                             (std::log2(static_cast<double>(row.k)) -
                              std::log2(static_cast<double>(block)));
            rows.push_back(row);
        } else {
            rows = kpred::scaling_table(k_values, n, block);
            for (const auto& row : rows) {
                kpred::SwapClassInstance inst{std::vector<std::size_t>(row.k, n / row.k), block};
                if (!kpred::check_bound(inst).holds) all_hold = false;
            }
        }
        kpred::write_classes_csv(rows, std::cout);
        if (!all_hold) {
            std::cout << "BOUND VIOLATED\n";
            return kExitBoundViolated;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Predecessor search over k sorted arrays via grouped merging "
                 "and fractional cascading"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "Build an index file from a text instance");
    std::string build_input, build_out;
    std::optional<std::size_t> build_group_size;
    build->add_option("--input", build_input, "Instance file: one sorted array per line")
        ->required();
    build->add_option("--out", build_out, "Output index file")->required();
    build->add_option("--group-size", build_group_size,
                      "Arrays per merged group (default: chosen from n and k)");

    // query
    auto* query = app.add_subcommand("query", "Run predecessor queries against an index file");
    std::string query_index;
    std::vector<std::int64_t> query_values;
    bool query_strict = false;
    query->add_option("--index", query_index, "Index file produced by build")->required();
    query->add_option("--q", query_values, "Query values")->required()->expected(-1);
    query->add_flag("--strict", query_strict, "Largest value < q instead of <= q");

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark build and query comparison counts");
    std::size_t bench_n = 0, bench_k = 0;
    std::uint64_t bench_seed = 1;
    bool bench_sweep = false, bench_wall_time = false;
    std::string bench_csv;
    bench->add_option("--n", bench_n, "Total number of values")->required();
    bench->add_option("--k", bench_k, "Number of arrays")->required();
    bench->add_flag("--sweep-s", bench_sweep, "One row per group size in {1,2,4,...,k}");
    bench->add_option("--seed", bench_seed, "Instance and query seed (default 1)");
    bench->add_option("--csv", bench_csv, "Output CSV file")->required();
    bench->add_flag("--wall-time", bench_wall_time,
                    "Fill the wall-clock columns (off by default so identical "
                    "seeds produce byte-identical files)");

    // classes
    auto* classes = app.add_subcommand("classes", "Count swap-equivalence classes (CSV on stdout)");
    std::size_t classes_n = 0, classes_block = 0;
    std::vector<std::size_t> classes_k;
    std::vector<std::size_t> classes_sizes;
    classes->add_option("--n", classes_n, "Total entries (balanced over the colors)");
    classes->add_option("--k", classes_k, "Color counts; one CSV row each")->expected(-1);
    classes->add_option("--block", classes_block, "Entries between consecutive separators")
        ->required();
    classes->add_option("--sizes", classes_sizes, "Explicit per-color counts (overrides --n/--k)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    if (build->parsed()) return cmd_build(build_input, build_out, build_group_size);
    if (query->parsed()) return cmd_query(query_index, query_values, query_strict);
    if (bench->parsed())
        return cmd_bench(bench_n, bench_k, bench_sweep, bench_seed, bench_csv, bench_wall_time);
    if (classes->parsed()) {
        if (classes_sizes.empty() && (classes_n == 0 || classes_k.empty())) {
            std::cerr << "error: need --sizes or both --n and --k\n";
            return kExitBadInput;
        }
        return cmd_classes(classes_n, classes_k, classes_block, classes_sizes);
    }
    return kExitBadInput;
}
