#include "toptree/cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "toptree/cli/rng.hpp"
#include "toptree/top_tree.hpp"

namespace toptree::cli {

namespace {

// Structural workload without an oracle mirror: maintains its own edge list
// and keeps at most two vertices exposed per tree via paired expose/deexpose.
void run_size(std::uint32_t n, std::uint64_t ops, std::uint64_t seed,
              ExposeStrategy strategy, BenchResult& result) {
    typename TopTree<PathMax>::Config cfg;
    cfg.strategy = strategy;
    cfg.check_bounds = true;
    TopTree<PathMax> tree(cfg);
    Rng rng(seed ^ (std::uint64_t(n) << 32));

    std::vector<VertexId> verts(n);
    for (std::uint32_t i = 0; i < n; ++i)
        verts[i] = tree.add_vertex();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    auto try_link = [&] {
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::uint32_t u = std::uint32_t(rng.below(n));
            std::uint32_t v = std::uint32_t(rng.below(n));
            if (u == v || tree.connected(verts[u], verts[v]))
                continue;
            tree.link(verts[u], verts[v], double(1 + rng.below(1u << 30)));
            edges.push_back({u, v});
            return true;
        }
        return false;
    };
    auto try_cut = [&] {
        if (edges.empty())
            return false;
        std::size_t i = rng.below(edges.size());
        auto [u, v] = edges[i];
        tree.cut(*tree.edge_between(verts[u], verts[v]));
        edges[i] = edges.back();
        edges.pop_back();
        return true;
    };
    auto try_query = [&] {
        if (edges.empty())
            return false;
        auto [u, v] = edges[rng.below(edges.size())];
        tree.expose(verts[u]);
        NodeId root = *tree.expose(verts[v]);
        volatile double sink = query_path_max(tree, root);
        (void)sink;
        tree.deexpose(verts[u]);
        tree.deexpose(verts[v]);
        return true;
    };

    tree.diag().reset_counters();
    tree.diag().check_bounds = true;
    auto start = std::chrono::steady_clock::now();
    for (std::uint64_t op = 0; op < ops; ++op) {
        std::uint64_t r = rng.below(100);
        bool done = r < 35 ? try_link() : (r < 60 ? try_cut() : try_query());
        if (!done && !try_link() && !try_query())
            try_cut();
    }
    auto elapsed = std::chrono::steady_clock::now() - start;

    const Diagnostics& d = tree.diag();
    BenchRow row;
    row.n = n;
    row.ops = ops;
    row.rotations = d.rotations;
    row.nodes_visited = d.nodes_visited;
    row.summary_rebuilds = d.summary_rebuilds;
    row.work_per_op = double(d.rotations + d.nodes_visited + d.summary_rebuilds) / double(ops);
    row.work_per_op_per_log_n = row.work_per_op / std::log2(double(n));
    row.millis = std::chrono::duration<double, std::milli>(elapsed).count();
    result.rows.push_back(row);

    std::uint64_t failures = d.depth_bound_failures + d.potential_bound_failures +
                             d.pattern_soundness_failures;
    result.bound_failures += failures;
    if (failures && result.first_failure.empty())
        result.first_failure = "n=" + std::to_string(n) + ": " + d.first_violation;
}

} // namespace

std::string BenchResult::table() const {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%8s %10s %12s %14s %10s %10s %12s %10s\n", "n", "ops",
                  "rotations", "nodes_visited", "rebuilds", "work/op", "work/op/lg n",
                  "millis");
    os << buf;
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%8u %10llu %12llu %14llu %10llu %10.3f %12.4f %10.1f\n",
                      r.n, (unsigned long long)r.ops, (unsigned long long)r.rotations,
                      (unsigned long long)r.nodes_visited,
                      (unsigned long long)r.summary_rebuilds, r.work_per_op,
                      r.work_per_op_per_log_n, r.millis);
        os << buf;
    }
    return os.str();
}

double BenchResult::slope_ratio() const {
    double lo = 0.0, hi = 0.0;
    for (const BenchRow& r : rows) {
        if (lo == 0.0 || r.work_per_op_per_log_n < lo)
            lo = r.work_per_op_per_log_n;
        hi = std::max(hi, r.work_per_op_per_log_n);
    }
    return lo > 0.0 ? hi / lo : 0.0;
}

BenchResult bench(const BenchParams& p) {
    BenchResult result;
    for (std::uint32_t n : p.sizes)
        run_size(n, p.ops, p.seed, p.strategy, result);
    return result;
}

} // namespace toptree::cli
