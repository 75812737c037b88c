#pragma once

#include <concepts>
#include <cstdint>
#include <limits>

#include "toptree/forest.hpp"
#include "toptree/topnodes.hpp"

namespace toptree {

// What a summary gets to see when two clusters merge. Values handed to merge
// are already oriented in the parent's stored frame (a child with its flip
// bit set arrives reversed), so "left"/"right" here line up with the
// parent's own raw child order.
struct MergeContext {
    ClusterKind parent_kind;
    ClusterKind left_kind;
    ClusterKind right_kind;
    bool parent_has_left;   // left child is a path cluster
    bool parent_has_middle; // the central vertex is a boundary vertex of the parent
    bool parent_has_right;  // right child is a path cluster
};

// The edge a leaf summary is built from, endpoints in stored order.
struct EdgeView {
    EdgeId id;
    VertexId left;
    VertexId right;
    double weight;
};

// Boundary status of the leaf's endpoints in stored order.
struct LeafContext {
    bool left_is_boundary;
    bool right_is_boundary;
};

// A summary spec provides the value type plus the three operations the tree
// needs: building a value for a single edge, merging two oriented child
// values, and reversing a value's orientation. Values must be functions of
// the cluster's leaf multiset and orientation only.
template <class S>
concept SummarySpec = requires(const EdgeView& ev, const LeafContext& lc,
                               const typename S::Value& val, const MergeContext& ctx) {
    { S::from_edge(ev, lc) } -> std::same_as<typename S::Value>;
    { S::merge(val, val, ctx) } -> std::same_as<typename S::Value>;
    { S::reverse(val) } -> std::same_as<typename S::Value>;
    { S::equal(val, val) } -> std::same_as<bool>;
};

// Maximum edge weight on the path between a path cluster's two boundary
// vertices, together with the edge realizing it. Point clusters hold the
// neutral marker (-infinity, no edge). Enough to drive the incremental
// minimum-spanning-tree swap rule.
struct PathMax {
    struct Value {
        double max_weight = -std::numeric_limits<double>::infinity();
        EdgeId max_edge{};
    };

    static Value from_edge(const EdgeView& ev, const LeafContext&) {
        return Value{ev.weight, ev.id};
    }

    static Value merge(const Value& l, const Value& r, const MergeContext& ctx) {
        if (ctx.parent_kind == ClusterKind::Point)
            return Value{};
        bool from_l = ctx.left_kind == ClusterKind::Path;
        bool from_r = ctx.right_kind == ClusterKind::Path;
        if (from_l && from_r)
            return l.max_weight >= r.max_weight ? l : r;
        if (from_l)
            return l;
        if (from_r)
            return r;
        // a path parent always draws its boundary path through at least one
        // path child
        throw Error("PathMax: path cluster with two point children");
    }

    static Value reverse(Value v) { return v; }

    static bool equal(const Value& a, const Value& b) {
        if (a.max_edge.is_none() != b.max_edge.is_none())
            return false;
        if (a.max_edge.is_none())
            return true;
        return a.max_weight == b.max_weight && a.max_edge == b.max_edge;
    }
};

// Number of edges in the cluster.
struct Count {
    using Value = std::int64_t;
    static Value from_edge(const EdgeView&, const LeafContext&) { return 1; }
    static Value merge(const Value& l, const Value& r, const MergeContext&) { return l + r; }
    static Value reverse(Value v) { return v; }
    static bool equal(Value a, Value b) { return a == b; }
};

// Per-node summary storage. Values live alongside the arena (indexed by node
// slot, validity bit in the node record) in the node's raw stored frame:
// push_flip mirrors that frame, so the arena calls back through SummaryHooks
// and the value is reversed in place. Everything else the splay machinery
// does leaves raw frames alone, which is what lets rotations run without
// touching user data.
template <SummarySpec S>
class SummaryStore final : public SummaryHooks {
public:
    using Value = typename S::Value;

    SummaryStore(ForestStore* f, NodeArena* a) : f_(f), a_(a) {}
    void rebind(ForestStore* f, NodeArena* a) {
        f_ = f;
        a_ = a;
    }

    void reverse_summary(NodeId n) override {
        if (a_->summary_valid(n) && n.slot < vals_.size())
            vals_[n.slot] = S::reverse(std::move(vals_[n.slot]));
    }

    // Marks n and its ancestors dirty; every mutation runs this before it
    // touches the tree (the structural ops call the arena directly).
    void invalidate_root_path(NodeId n) { a_->invalidate_root_path(n); }

    // Recomputes every dirty summary in n's tree bottom-up. Dirty nodes form
    // an upward-closed set, so descending from the root through dirty nodes
    // reaches them all.
    void rebuild_root_path(NodeId n) { rebuild_tree(a_->root_of(n)); }

    void rebuild_tree(NodeId root) {
        std::vector<std::pair<NodeId, bool>> stack{{root, false}};
        while (!stack.empty()) {
            auto [n, ready] = stack.back();
            stack.pop_back();
            if (a_->summary_valid(n))
                continue;
            if (a_->is_leaf(n)) {
                store(n, leaf_value(n));
                continue;
            }
            NodeId c0 = a_->child(n, 0);
            NodeId c1 = a_->child(n, 1);
            if (!ready) {
                stack.push_back({n, true});
                if (!a_->summary_valid(c1))
                    stack.push_back({c1, false});
                if (!a_->summary_valid(c0))
                    stack.push_back({c0, false});
                continue;
            }
            store(n, merged_value(n, c0, c1));
        }
    }

    const Value& value(NodeId n) const {
        if (!a_->summary_valid(n))
            throw Error("summaries: reading an invalidated summary");
        return vals_[n.slot];
    }

    // The value a fresh bottom-up computation would give, without consulting
    // or touching the stored ones. The validator compares it against value().
    Value recompute(NodeId n) const {
        if (a_->is_leaf(n))
            return leaf_value(n);
        return merged_for(n, recompute(a_->child(n, 0)), recompute(a_->child(n, 1)));
    }

private:
    Value leaf_value(NodeId n) const {
        EdgeId e = a_->edge_of_leaf(n);
        auto [l, r] = f_->endpoints(e);
        auto boundary = [&](VertexId x) {
            return f_->is_exposed(x) || f_->degree_at_least_two(x);
        };
        return S::from_edge(EdgeView{e, l, r, f_->weight(e)},
                            LeafContext{boundary(l), boundary(r)});
    }

    Value oriented(NodeId child, const Value& raw) const {
        return a_->flip(child) ? S::reverse(Value(raw)) : raw;
    }

    Value merged_for(NodeId n, const Value& raw0, const Value& raw1) const {
        NodeId c0 = a_->child(n, 0);
        NodeId c1 = a_->child(n, 1);
        bool left_path = a_->is_path(c0);
        bool right_path = a_->is_path(c1);
        MergeContext ctx{a_->kind(n), a_->kind(c0), a_->kind(c1), left_path,
                         a_->num_boundary(n) - int(left_path) - int(right_path) != 0,
                         right_path};
        return S::merge(oriented(c0, raw0), oriented(c1, raw1), ctx);
    }

    Value merged_value(NodeId n, NodeId c0, NodeId c1) const {
        return merged_for(n, vals_[c0.slot], vals_[c1.slot]);
    }

    void store(NodeId n, Value v) {
        if (vals_.size() <= n.slot)
            vals_.resize(n.slot + 1);
        vals_[n.slot] = std::move(v);
        a_->set_summary_valid(n, true);
        a_->diag().summary_rebuilds++;
    }

    ForestStore* f_;
    NodeArena* a_;
    std::vector<Value> vals_;
};

} // namespace toptree
