#pragma once

#include <optional>
#include <utility>

#include "toptree/dynops.hpp"
#include "toptree/forest.hpp"
#include "toptree/oracle.hpp"
#include "toptree/summaries.hpp"
#include "toptree/topnodes.hpp"

namespace toptree {

// The assembled structure: forest + node arena + summary store, with the
// external operations wired to eager summary rebuilds so queries never
// mutate. Copying yields an independent deep copy (used by the validator).
template <SummarySpec S = PathMax>
class TopTree {
public:
    using Spec = S;
    using Value = typename S::Value;

    struct Config {
        ExposeStrategy strategy = ExposeStrategy::FullSplay;
        bool enable_ledger = false;
        bool check_bounds = false;    // implies the ledger
        bool check_rotations = false; // brute-force validity check per rotation
    };

    TopTree() : TopTree(Config{}) {}

    explicit TopTree(Config cfg)
        : cfg_(cfg), arena_(&forest_, nullptr), store_(&forest_, &arena_) {
        arena_.rebind(&forest_, &store_);
        if (cfg_.check_bounds)
            cfg_.enable_ledger = true;
        arena_.set_ledger_enabled(cfg_.enable_ledger);
        arena_.diag().check_bounds = cfg_.check_bounds;
        arena_.diag().check_rotation_validity = cfg_.check_rotations;
    }

    TopTree(const TopTree& other)
        : cfg_(other.cfg_), forest_(other.forest_), arena_(other.arena_),
          store_(other.store_) {
        arena_.rebind(&forest_, &store_);
        store_.rebind(&forest_, &arena_);
    }
    TopTree& operator=(const TopTree&) = delete;

    // ---- external operations ----
    VertexId add_vertex() { return forest_.add_vertex(); }

    std::optional<NodeId> expose(VertexId v) {
        auto root = dynops::expose(forest_, arena_, v, cfg_.strategy);
        if (root)
            store_.rebuild_tree(*root);
        return root;
    }

    std::optional<NodeId> deexpose(VertexId v) {
        auto root = dynops::deexpose(forest_, arena_, v);
        if (root)
            store_.rebuild_tree(*root);
        return root;
    }

    NodeId link(VertexId u, VertexId v, double weight = 0.0) {
        NodeId root = dynops::link(forest_, arena_, u, v, weight, cfg_.strategy);
        store_.rebuild_tree(root);
        return root;
    }

    std::pair<std::optional<NodeId>, std::optional<NodeId>> cut(EdgeId e) {
        auto roots = dynops::cut(forest_, arena_, e);
        if (roots.first)
            store_.rebuild_tree(*roots.first);
        if (roots.second)
            store_.rebuild_tree(*roots.second);
        return roots;
    }

    // ---- read-only queries ----
    bool connected(VertexId u, VertexId v) const {
        if (u == v) {
            forest_.is_exposed(u); // handle check
            return true;
        }
        auto ru = tree_root(u);
        auto rv = tree_root(v);
        return ru && rv && *ru == *rv;
    }

    std::optional<NodeId> tree_root(VertexId v) const {
        auto e = forest_.any_incident_edge(v);
        if (!e)
            return std::nullopt;
        return arena_.root_of(arena_.leaf_of_edge(*e));
    }

    std::optional<EdgeId> edge_between(VertexId u, VertexId v) const {
        return forest_.find_edge(u, v);
    }

    const Value& summary(NodeId n) const { return store_.value(n); }

    // ---- maintenance / inspection ----
    void materialize_flips(NodeId root) { arena_.materialize_flips(root); }

    ValidationReport validate() const {
        TopTree copy(*this);
        ValidationReport rep = validate_structure_inplace(copy.forest_, copy.arena_);
        // summary coherence on the materialized copy
        for (std::uint32_t ns = 0; ns < copy.arena_.node_slots(); ++ns) {
            if (!copy.arena_.node_live(ns))
                continue;
            NodeId n = copy.arena_.node_at(ns);
            if (!copy.arena_.summary_valid(n)) {
                rep.violations.push_back(
                    {"summary-validity", ns, "summary missing after a completed operation"});
                continue;
            }
            if (!S::equal(copy.store_.value(n), copy.store_.recompute(n)))
                rep.violations.push_back(
                    {"summary-coherence", ns, "stored summary differs from recomputation"});
        }
        return rep;
    }

    const Config& config() const { return cfg_; }
    Diagnostics& diag() { return arena_.diag(); }
    const Diagnostics& diag() const { return arena_.diag(); }

    ForestStore& forest() { return forest_; }
    const ForestStore& forest() const { return forest_; }
    NodeArena& arena() { return arena_; }
    const NodeArena& arena() const { return arena_; }
    SummaryStore<S>& summaries() { return store_; }
    const SummaryStore<S>& summaries() const { return store_; }

private:
    Config cfg_;
    ForestStore forest_;
    NodeArena arena_;
    SummaryStore<S> store_;
};

// Maximum edge weight on the path between the two exposed vertices defining
// the root path cluster.
inline double query_path_max(const TopTree<PathMax>& t, NodeId root) {
    if (!t.arena().is_path(root))
        throw Error("query_path_max: root is not a path cluster");
    return t.summary(root).max_weight;
}

} // namespace toptree
