#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "toptree/cli/rng.hpp"
#include "toptree/oracle.hpp"
#include "toptree/top_tree.hpp"

namespace toptree::testing {

// Asymmetric summary used to exercise orientation handling: tracks the
// identities of the cluster's boundary vertices by position. reverse() swaps
// left and right, so any flip bookkeeping mistake shows up as incoherence.
struct OrderedBoundary {
    struct Value {
        std::optional<std::uint32_t> left, mid, right;
        friend bool operator==(const Value&, const Value&) = default;
    };

    static Value from_edge(const EdgeView& ev, const LeafContext& lc) {
        Value v;
        if (lc.left_is_boundary)
            v.left = ev.left.slot;
        if (lc.right_is_boundary)
            v.right = ev.right.slot;
        return v;
    }

    static std::optional<std::uint32_t> rightmost(const Value& v) {
        return v.right ? v.right : v.mid;
    }
    static std::optional<std::uint32_t> leftmost(const Value& v) {
        return v.left ? v.left : v.mid;
    }
    // the child's boundary vertex that is not consumed as the central vertex
    static std::optional<std::uint32_t> besides(const Value& v,
                                                std::optional<std::uint32_t> central) {
        for (auto x : {v.left, v.mid, v.right})
            if (x && x != central)
                return x;
        return std::nullopt;
    }

    static Value merge(const Value& l, const Value& r, const MergeContext& ctx) {
        auto central = rightmost(l);
        if (!central || leftmost(r) != central)
            throw Error("OrderedBoundary: orientation invariant broken in merge");
        Value v;
        if (ctx.parent_has_left)
            v.left = besides(l, central);
        if (ctx.parent_has_middle)
            v.mid = central;
        if (ctx.parent_has_right)
            v.right = besides(r, central);
        return v;
    }

    static Value reverse(Value v) {
        std::swap(v.left, v.right);
        return v;
    }

    static bool equal(const Value& a, const Value& b) { return a == b; }
};

// Hand-construction of forests and top trees for the low-level module tests.
struct TreeBuilder {
    ForestStore forest;
    NodeArena arena{&forest, nullptr};

    VertexId vertex() { return forest.add_vertex(); }
    EdgeId edge(VertexId u, VertexId v, double w = 0.0) {
        EdgeId e = forest.insert_edge(u, v);
        forest.set_weight(e, w);
        return e;
    }
    NodeId leaf(EdgeId e, int nb, bool flip = false) {
        NodeId n = arena.create_leaf(e, nb);
        arena.set_flip(n, flip);
        return n;
    }
    NodeId internal(NodeId c0, NodeId c1, int nb, bool flip = false) {
        return arena.create_internal(c0, c1, nb, flip);
    }
    ValidationReport validate() const { return validate_structure(forest, arena); }
};

// Grows a random forest through the public operations, mirroring into a
// NaiveForest so op validity can be decided without looking at the tree.
template <class Tree>
struct RandomForest {
    Tree& tree;
    NaiveForest naive;
    std::vector<VertexId> verts;
    cli::Rng rng;

    RandomForest(Tree& t, std::uint32_t n, std::uint64_t seed) : tree(t), rng(seed) {
        for (std::uint32_t i = 0; i < n; ++i) {
            verts.push_back(tree.add_vertex());
            naive.add_vertex();
        }
    }

    std::uint32_t size() const { return std::uint32_t(verts.size()); }

    bool random_link() {
        for (int t = 0; t < 12; ++t) {
            std::uint32_t u = std::uint32_t(rng.below(size()));
            std::uint32_t v = std::uint32_t(rng.below(size()));
            if (u == v || naive.connected(u, v))
                continue;
            if (naive.exposed_count_in_tree(u) || naive.exposed_count_in_tree(v))
                continue;
            double w = double(1 + rng.below(1000000));
            tree.link(verts[u], verts[v], w);
            naive.add_edge(u, v, w);
            return true;
        }
        return false;
    }

    bool random_cut() {
        auto edges = naive.edges();
        if (edges.empty())
            return false;
        for (int t = 0; t < 12; ++t) {
            auto [u, v, w] = edges[rng.below(edges.size())];
            if (naive.exposed_count_in_tree(u))
                continue;
            tree.cut(*tree.edge_between(verts[u], verts[v]));
            naive.remove_edge(u, v);
            return true;
        }
        return false;
    }

    bool random_expose() {
        for (int t = 0; t < 12; ++t) {
            std::uint32_t v = std::uint32_t(rng.below(size()));
            if (naive.exposed(v) || naive.exposed_count_in_tree(v) > 1)
                continue;
            tree.expose(verts[v]);
            naive.set_exposed(v, true);
            return true;
        }
        return false;
    }

    bool random_deexpose() {
        std::vector<std::uint32_t> exposed;
        for (std::uint32_t v = 0; v < size(); ++v)
            if (naive.exposed(v))
                exposed.push_back(v);
        if (exposed.empty())
            return false;
        std::uint32_t v = exposed[rng.below(exposed.size())];
        tree.deexpose(verts[v]);
        naive.set_exposed(v, false);
        return true;
    }

    void step() {
        std::uint64_t r = rng.below(100);
        bool done = r < 40   ? random_link()
                    : r < 65 ? random_cut()
                    : r < 85 ? random_expose()
                             : random_deexpose();
        if (!done)
            random_link();
    }

    void grow(std::uint32_t links) {
        while (links--)
            if (!random_link())
                break;
    }
};

// Left-to-right leaf edges of the conceptual (flip-resolved) tree: at each
// node the accumulated flip parity decides which stored child is left.
inline void parity_leaf_order(const NodeArena& a, NodeId n, bool parity,
                              std::vector<std::uint32_t>& out) {
    if (a.is_leaf(n)) {
        out.push_back(a.edge_of_leaf(n).slot);
        return;
    }
    bool eff = a.flip(n) != parity;
    parity_leaf_order(a, a.child(n, eff), eff, out);
    parity_leaf_order(a, a.child(n, !eff), eff, out);
}

inline std::vector<std::uint32_t> parity_leaf_order(const NodeArena& a, NodeId root) {
    std::vector<std::uint32_t> out;
    parity_leaf_order(a, root, false, out);
    return out;
}

// Builds the left-leaning chain 0-1-2-...-n-1 via sequential links; with no
// exposed vertices each new edge lands at depth 1 and nothing rebalances, so
// the first edge's leaf ends at depth n-2.
template <class Tree>
std::vector<VertexId> chain(Tree& t, std::uint32_t n) {
    std::vector<VertexId> verts;
    for (std::uint32_t i = 0; i < n; ++i)
        verts.push_back(t.add_vertex());
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        t.link(verts[i], verts[i + 1], double(i + 1));
    return verts;
}

inline std::set<std::uint32_t> edge_slot_set(const NodeArena& a, NodeId n) {
    std::set<std::uint32_t> out;
    for (EdgeId e : cluster_edges(a, n))
        out.insert(e.slot);
    return out;
}

} // namespace toptree::testing
