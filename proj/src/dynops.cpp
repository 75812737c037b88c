#include "toptree/dynops.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "toptree/rotate.hpp"
#include "toptree/splay.hpp"

namespace toptree::dynops {

namespace {

// Number of exposed vertices in v's tree, read off the root's boundary
// counter (the root cluster spans the whole tree, so its boundary vertices
// are exactly the exposed ones). Isolated vertices have no top tree; their
// flag is the whole story.
int tree_exposed_count(const ForestStore& f, const NodeArena& a, VertexId v) {
    auto e = f.any_incident_edge(v);
    if (!e)
        return f.is_exposed(v) ? 1 : 0;
    return a.num_boundary(a.root_of(a.leaf_of_edge(*e)));
}

} // namespace

std::optional<NodeId> find_consuming_node(ForestStore& f, NodeArena& a, VertexId v) {
    auto e = f.any_incident_edge(v);
    if (!e)
        return std::nullopt;
    NodeId node = a.leaf_of_edge(*e);
    a.invalidate_root_path(node);
    semi_splay(a, node);
    if (!f.degree_at_least_two(v))
        return node;

    // Where is v a boundary vertex in node? (taking flip into account)
    auto [left_ep, right_ep] = f.endpoints(*e);
    bool is_left = (v == left_ep) != a.flip(node);
    bool is_middle = false;
    bool is_right = (v == right_ep) != a.flip(node);
    std::optional<NodeId> last_middle_node;

    while (!a.is_root(node)) {
        a.diag().nodes_visited++;
        NodeId parent = a.parent(node);
        bool is_left_child = a.child(parent, 0) == node;

        // Position of v in the parent, taking the parent's flip into account.
        is_middle = is_left_child ? (is_right || (is_middle && !a.has_right_boundary(node)))
                                  : (is_left || (is_middle && !a.has_left_boundary(node)));
        is_left = (is_left_child != a.flip(parent)) && !is_middle;
        is_right = (is_left_child == a.flip(parent)) && !is_middle;

        node = parent;

        if (is_middle) {
            if (!a.has_middle_boundary(node))
                return node; // only happens if the vertex is not exposed
            last_middle_node = node;
        }
    }
    // Only reached when the vertex is exposed.
    assert(last_middle_node.has_value());
    return last_middle_node;
}

std::optional<NodeId> expose(ForestStore& f, NodeArena& a, VertexId v,
                             ExposeStrategy strategy) {
    if (f.is_exposed(v))
        throw Error("expose: vertex is already exposed");
    if (tree_exposed_count(f, a, v) > 1)
        throw Error("expose: tree already has two exposed vertices");

    auto consuming = find_consuming_node(f, a, v);
    if (!consuming) {
        // The vertex has degree zero.
        f.set_exposed(v, true);
        return std::nullopt;
    }
    NodeId node = *consuming;

    if (strategy == ExposeStrategy::SemiSplayOnly) {
        node = prepare_expose(a, node);
        NodeId root = expose_prepared(a, node);
        f.set_exposed(v, true);
        return root;
    }

    while (a.is_path(node)) { // rotate_up until consuming node is a point cluster
        NodeId parent = a.parent(node);
        a.push_flip(node);
        bool node_idx = a.child(parent, 1) == node;
        rotate_up(a, a.child(node, node_idx));
        node = parent;
    }

    full_splay(a, node);

    // node is the consuming point cluster with depth <= 1; its boundary
    // vertex cannot sit in the middle, that position is v's.
    assert(!a.has_middle_boundary(node));
    assert(a.depth(node) <= 1);

    std::optional<NodeId> root;
    for (NodeId cur = node; !cur.is_none(); cur = a.parent(cur)) {
        a.diag().nodes_visited++;
        root = cur;
        a.add_num_boundary(cur, +1);
    }
    f.set_exposed(v, true);
    return root;
}

std::optional<NodeId> deexpose(ForestStore& f, NodeArena& a, VertexId v) {
    if (!f.is_exposed(v))
        throw Error("deexpose: vertex is not exposed");
    std::optional<NodeId> root;
    auto node = find_consuming_node(f, a, v);
    if (node) {
        for (NodeId cur = *node; !cur.is_none(); cur = a.parent(cur)) {
            a.diag().nodes_visited++;
            root = cur;
            a.add_num_boundary(cur, -1);
        }
    }
    f.set_exposed(v, false);
    return root;
}

NodeId link(ForestStore& f, NodeArena& a, VertexId u, VertexId v, double weight,
            ExposeStrategy strategy) {
    if (u == v)
        throw Error("link: endpoints must differ");
    if (tree_exposed_count(f, a, u) != 0 || tree_exposed_count(f, a, v) != 0)
        throw Error("link: a tree has exposed vertices");
    {
        auto eu = f.any_incident_edge(u);
        auto ev = f.any_incident_edge(v);
        if (eu && ev &&
            a.root_of(a.leaf_of_edge(*eu)) == a.root_of(a.leaf_of_edge(*ev)))
            throw Error("link: endpoints are already connected");
    }

    auto tree_u = expose(f, a, u, strategy);
    if (tree_u && a.has_left_boundary(*tree_u))
        a.toggle_flip(*tree_u);
    f.set_exposed(u, false);
    auto tree_v = expose(f, a, v, strategy);
    if (tree_v && a.has_right_boundary(*tree_v))
        a.toggle_flip(*tree_v);
    f.set_exposed(v, false);

    EdgeId e = f.insert_edge(u, v);
    f.set_weight(e, weight);

    double phi_before = a.diag().check_bounds ? a.potential() : 0.0;
    NodeId t = a.create_leaf(e, int(tree_u.has_value()) + int(tree_v.has_value()));
    if (tree_u)
        t = a.create_internal(*tree_u, t, tree_v ? 1 : 0);
    if (tree_v)
        t = a.create_internal(t, *tree_v, 0);
    if (a.diag().check_bounds) {
        // at most two new internal nodes, each of rank at most log2(n)
        double dphi = a.potential() - phi_before;
        double bound = 2.0 * std::log2(std::max(2.0, double(a.leaf_count(t))));
        if (dphi > bound + 1e-6)
            a.diag().note_violation(a.diag().potential_bound_failures,
                                    "link raised Phi by " + std::to_string(dphi) +
                                        ", bound " + std::to_string(bound));
        else
            a.diag().bound_checks_passed++;
    }
    return t;
}

void delete_all_ancestors(NodeArena& a, NodeId n) {
    double phi_before = a.diag().check_bounds ? a.potential() : 0.0;

    std::vector<NodeId> chain;
    for (NodeId cur = n; !cur.is_none(); cur = a.parent(cur))
        chain.push_back(cur);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        a.set_parent(a.sibling(chain[i]), NodeId{});
    for (NodeId dead : chain)
        a.destroy(dead);

    if (a.diag().check_bounds) {
        double dphi = a.potential() - phi_before;
        if (dphi > 1e-9)
            a.diag().note_violation(a.diag().potential_bound_failures,
                                    "delete_all_ancestors increased Phi by " +
                                        std::to_string(dphi));
        else
            a.diag().bound_checks_passed++;
    }
}

std::pair<std::optional<NodeId>, std::optional<NodeId>> cut(ForestStore& f,
                                                            NodeArena& a, EdgeId e) {
    auto [u, v] = f.endpoints(e);
    NodeId leaf = a.leaf_of_edge(e);
    if (a.num_boundary(a.root_of(leaf)) != 0)
        throw Error("cut: tree has exposed vertices");

    a.invalidate_root_path(leaf);
    full_splay(a, leaf);
    // now depth(leaf) <= 2, and <= 1 when the edge is a point cluster
    delete_all_ancestors(a, leaf);
    f.delete_edge(e);

    // The surviving counters still count u and v as boundary vertices
    // everywhere; marking both exposed makes that reading correct, and the
    // deexposes repair the counters.
    f.set_exposed(u, true);
    f.set_exposed(v, true);
    auto tree_u = deexpose(f, a, u);
    auto tree_v = deexpose(f, a, v);
    return {tree_u, tree_v};
}

NodeId prepare_expose(NodeArena& a, NodeId consuming) {
    NodeId node = consuming;
    while (!a.is_root(node)) {
        a.diag().nodes_visited++;
        NodeId parent = a.parent(node);
        if (a.is_point(node)) {
            node = parent;
            continue;
        }
        a.push_flip(parent);
        a.push_flip(node);

        NodeId sib = a.sibling(node);
        bool sibling_idx = a.child(parent, 1) == sib;
        NodeId same_side_child = a.child(node, sibling_idx);
        if (a.is_path(same_side_child) || a.is_point(sib)) {
            // Cases (a),(b),(c),(d)
            NodeId other_side_child = a.child(node, !sibling_idx);
            rotate_up(a, other_side_child);
            if (node == consuming) {
                // Cases (a),(b)
                consuming = parent;
            }
            node = parent;
        } else {
            NodeId uncle = a.sibling(parent);
            NodeId gparent = a.parent(parent);
            bool uncle_idx = a.child(gparent, 1) == uncle;

            if (sibling_idx == uncle_idx) {
                // Case (e)
                rotate_up(a, node);
            } else {
                // Case (f)
                rotate_up(a, sib);
            }
        }
    }
    return consuming;
}

NodeId expose_prepared(NodeArena& a, NodeId consuming) {
    bool from_left = false;
    bool from_right = false;
    NodeId node = consuming;
    for (;;) {
        a.diag().nodes_visited++;
        a.add_num_boundary(node, +1);
        NodeId parent = a.parent(node);
        if (parent.is_none())
            return node;

        bool is_left_child_of_parent = a.child(parent, 0) == node;
        bool is_right_child_of_parent = !is_left_child_of_parent;

        if ((is_left_child_of_parent && from_right) ||
            (is_right_child_of_parent && from_left))
            a.toggle_flip(node);

        from_left = is_left_child_of_parent != a.flip(parent);
        from_right = is_right_child_of_parent != a.flip(parent);
        node = parent;
    }
}

} // namespace toptree::dynops
