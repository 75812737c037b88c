#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toptree/dynops.hpp"

namespace toptree::cli {

struct BenchParams {
    std::vector<std::uint32_t> sizes = {64, 128, 256, 512, 1024, 2048, 4096};
    std::uint64_t ops = 100000;
    std::uint64_t seed = 1;
    ExposeStrategy strategy = ExposeStrategy::FullSplay;
};

struct BenchRow {
    std::uint32_t n = 0;
    std::uint64_t ops = 0;
    std::uint64_t rotations = 0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t summary_rebuilds = 0;
    double work_per_op = 0.0;
    double work_per_op_per_log_n = 0.0;
    double millis = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::uint64_t bound_failures = 0;
    std::string first_failure;
    std::string table() const;
    // spread of work/op/log2(n) across sizes; the amortized O(log n) bound
    // shows up as this staying near 1
    double slope_ratio() const;
};

// Random structural workload per size, ledger enabled, every splay call
// checked against its depth and potential bound. Work counts rotations,
// traversal steps and summary rebuilds; wall time is reported secondarily.
BenchResult bench(const BenchParams& params);

} // namespace toptree::cli
