#pragma once

#include <array>
#include <cassert>
#include <string>
#include <vector>

#include "toptree/forest.hpp"
#include "toptree/handles.hpp"

namespace toptree {

enum class ClusterKind { Point, Path };

// Implemented by the summary store. push_flip mirrors a node's stored child
// order, so a summary kept in that raw frame has to be reversed to stay
// coherent.
struct SummaryHooks {
    virtual ~SummaryHooks() = default;
    virtual void reverse_summary(NodeId n) = 0;
};

// Shared counters and switches for the structural modules. The check_* flags
// are off by default; tests, the fuzzer and the acceptance suite turn them on.
struct Diagnostics {
    // configuration
    bool check_rotation_validity = false; // brute-force validity recount before each rotation
    bool check_bounds = false;            // depth/potential bound assertions around splays (needs ledger)
    bool log_rotations = false;

    // work counters
    unsigned long long rotations = 0;
    unsigned long long nodes_visited = 0;
    unsigned long long summary_rebuilds = 0;
    unsigned long long semi_splay_calls = 0;
    unsigned long long full_splay_calls = 0;
    unsigned long long rotation_checks_passed = 0;
    unsigned long long bound_checks_passed = 0;

    // violation counters; first_violation describes the earliest one
    unsigned long long depth_bound_failures = 0;
    unsigned long long potential_bound_failures = 0;
    unsigned long long pattern_soundness_failures = 0;
    std::string first_violation;

    int max_depth_after_full_splay = 0;

    std::vector<std::uint32_t> rotation_log; // node slots, when log_rotations

    void note_violation(unsigned long long& counter, const std::string& what) {
        ++counter;
        if (first_violation.empty())
            first_violation = what;
    }
    void reset_counters() {
        Diagnostics fresh;
        fresh.check_rotation_validity = check_rotation_validity;
        fresh.check_bounds = check_bounds;
        fresh.log_rotations = log_rotations;
        *this = std::move(fresh);
    }
};

// One top-tree node. Leaves reference a forest edge (endpoint order as stored
// there); internal nodes own exactly two children. num_boundary counts the
// cluster's boundary vertices (0..2). flip marks the subtree as conceptually
// mirrored relative to its parent.
struct TopNode {
    NodeId parent{};
    std::array<NodeId, 2> children{};
    EdgeId edge{};
    std::uint32_t leaf_count = 0; // s(x), maintained incrementally
    std::uint8_t num_boundary = 0;
    bool is_leaf = false;
    bool flip = false;
    bool summary_valid = false;
    std::uint32_t gen = 0;
    bool live = false;
};

// Arena of top-tree nodes. Handles are stable across rotations; destruction
// never moves other nodes. The arena also carries the potential ledger:
// per-node leaf counts are always maintained, and when the ledger is enabled
// an incremental Phi = sum of log2(leaf_count) over live nodes is kept in
// sync at every structural change.
class NodeArena {
public:
    explicit NodeArena(ForestStore* forest, SummaryHooks* hooks = nullptr)
        : forest_(forest), hooks_(hooks) {}

    // Rebinds after a deep copy.
    void rebind(ForestStore* forest, SummaryHooks* hooks) {
        forest_ = forest;
        hooks_ = hooks;
    }
    const ForestStore& forest() const { return *forest_; }

    NodeId create_leaf(EdgeId e, int num_boundary);
    NodeId create_internal(NodeId c0, NodeId c1, int num_boundary, bool flip = false);
    void destroy(NodeId n);

    // accessors -------------------------------------------------------------
    NodeId parent(NodeId n) const { return get(n).parent; }
    NodeId child(NodeId n, bool idx) const;
    bool is_leaf(NodeId n) const { return get(n).is_leaf; }
    EdgeId edge_of_leaf(NodeId n) const;
    NodeId leaf_of_edge(EdgeId e) const; // inverse of the leaf<->edge bijection
    int num_boundary(NodeId n) const { return get(n).num_boundary; }
    bool flip(NodeId n) const { return get(n).flip; }
    std::uint32_t leaf_count(NodeId n) const { return get(n).leaf_count; }
    bool is_root(NodeId n) const { return get(n).parent.is_none(); }

    bool is_path(NodeId n) const { return get(n).num_boundary == 2; }
    bool is_point(NodeId n) const { return !is_path(n); }
    ClusterKind kind(NodeId n) const {
        return is_path(n) ? ClusterKind::Path : ClusterKind::Point;
    }

    NodeId sibling(NodeId n) const;
    NodeId root_of(NodeId n) const;
    int depth(NodeId n) const;

    // Boundary-position predicates. Each consults the node's own flip bit and
    // ignores the ancestors' bits, i.e. the answer is as if push_flip had run
    // on the node first.
    bool has_left_boundary(NodeId n) const;
    bool has_middle_boundary(NodeId n) const;
    bool has_right_boundary(NodeId n) const;

    // mutators --------------------------------------------------------------
    void set_parent(NodeId n, NodeId p) { get(n).parent = p; }
    void set_child(NodeId n, bool idx, NodeId c);
    void set_flip(NodeId n, bool f) { get(n).flip = f; }
    void toggle_flip(NodeId n) { get(n).flip = !get(n).flip; }
    void set_num_boundary(NodeId n, int b);
    void add_num_boundary(NodeId n, int delta);

    // Clears the flip bit of an internal node by swapping its children and
    // inverting their bits; no-op on leaves (their bit keys the endpoint
    // order and is consulted by the predicates directly).
    void push_flip(NodeId n);

    // Pushes flips top-down over the whole subtree. Afterwards every internal
    // node in the subtree has flip=false; leaves keep their bit as the record
    // of their conceptual endpoint order.
    void materialize_flips(NodeId root);

    // Recomputes s(n) from the children and adjusts Phi. Called after a
    // rotation rewires a node's children.
    void refresh_leaf_count(NodeId n);

    // summary validity ------------------------------------------------------
    bool summary_valid(NodeId n) const { return get(n).summary_valid; }
    void set_summary_valid(NodeId n, bool v) { get(n).summary_valid = v; }
    // Marks n and all its ancestors dirty. Every structural mutation calls
    // this before touching the tree, so the dirty set stays upward-closed.
    void invalidate_root_path(NodeId n);

    // ledger ----------------------------------------------------------------
    void set_ledger_enabled(bool enabled);
    bool ledger_enabled() const { return ledger_enabled_; }
    double rank(NodeId n) const; // log2 s(n)
    double potential() const;    // incremental when enabled, else recomputed
    double potential_recomputed() const;

    Diagnostics& diag() const { return diag_; }

    // slot enumeration for oracle/validator ---------------------------------
    std::size_t node_slots() const { return nodes_.size(); }
    bool node_live(std::uint32_t slot) const { return slot < nodes_.size() && nodes_[slot].live; }
    NodeId node_at(std::uint32_t slot) const;
    std::size_t live_node_count() const { return live_nodes_; }

    const TopNode& raw(NodeId n) const { return get(n); }

private:
    TopNode& get(NodeId n);
    const TopNode& get(NodeId n) const { return const_cast<NodeArena*>(this)->get(n); }
    void phi_add(double r) {
        if (ledger_enabled_)
            phi_ += r;
    }

    ForestStore* forest_;
    SummaryHooks* hooks_;
    std::vector<TopNode> nodes_;
    std::vector<std::uint32_t> free_nodes_;
    std::vector<std::uint32_t> edge_leaf_; // edge slot -> node slot
    std::size_t live_nodes_ = 0;
    bool ledger_enabled_ = false;
    double phi_ = 0.0;
    mutable Diagnostics diag_;
};

} // namespace toptree
