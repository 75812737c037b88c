#include "toptree/rotate.hpp"

#include <string>

#include "toptree/oracle.hpp"

namespace toptree {

namespace {

// Brute-force check that sibling ∪ uncle is a valid cluster: connected with
// at most two boundary vertices, recounted from the underlying tree.
void verify_rotation_validity(NodeArena& a, NodeId node, NodeId sib, NodeId uncle) {
    const ForestStore& f = a.forest();
    std::vector<EdgeId> merged = cluster_edges(a, sib);
    std::vector<EdgeId> uncle_edges = cluster_edges(a, uncle);
    merged.insert(merged.end(), uncle_edges.begin(), uncle_edges.end());
    try {
        std::vector<VertexId> bvs = naive_boundary_vertices(f, merged);
        if (bvs.size() > 2)
            throw Error("rotate_up: sibling/uncle union has " + std::to_string(bvs.size()) +
                        " boundary vertices");
    } catch (const Error& e) {
        a.diag().note_violation(a.diag().pattern_soundness_failures,
                                std::string("rotate_up(node slot ") +
                                    std::to_string(node.slot) + "): " + e.what());
        throw;
    }
    a.diag().rotation_checks_passed++;
}

} // namespace

void rotate_up(NodeArena& a, NodeId node) {
    NodeId parent = a.parent(node);
    if (parent.is_none())
        throw Error("rotate_up: node has no parent");
    NodeId grandparent = a.parent(parent);
    if (grandparent.is_none())
        throw Error("rotate_up: node has no grandparent");
    NodeId sib = a.sibling(node);
    NodeId uncle = a.sibling(parent);

    if (a.diag().check_rotation_validity)
        verify_rotation_validity(a, node, sib, uncle);
    if (a.diag().log_rotations)
        a.diag().rotation_log.push_back(node.slot);

    a.push_flip(grandparent);
    a.push_flip(parent);

    bool uncle_is_left_child = a.child(grandparent, 0) == uncle;
    bool sibling_is_left_child = a.child(parent, 0) == sib;
    bool to_same_side = uncle_is_left_child == sibling_is_left_child;
    bool sibling_is_path = a.is_path(sib);
    bool uncle_is_path = a.is_path(uncle);
    bool gp_is_path = a.is_path(grandparent);

    bool new_parent_is_path;
    bool flip_new_parent;
    bool flip_grandparent;
    if (to_same_side && sibling_is_path) {
        // Rotation on path.
        bool gp_middle = a.has_middle_boundary(grandparent);
        new_parent_is_path = gp_middle || uncle_is_path;
        flip_new_parent = false;
        flip_grandparent = false;
        if (gp_middle && !gp_is_path) {
            NodeId ggp = a.parent(grandparent);
            if (!ggp.is_none()) {
                bool gp_is_left_child = a.child(ggp, 0) == grandparent;
                flip_grandparent = gp_is_left_child == uncle_is_left_child;
            }
        }
    } else {
        // Rotation on star.
        if (!to_same_side) {
            new_parent_is_path = sibling_is_path || uncle_is_path;
            flip_new_parent = sibling_is_path;
            flip_grandparent = sibling_is_path;
            a.toggle_flip(node);
        } else {
            new_parent_is_path = uncle_is_path;
            flip_new_parent = false;
            flip_grandparent = false;
            a.toggle_flip(sib);
        }
    }

    a.set_child(parent, uncle_is_left_child, sib);
    a.set_child(parent, !uncle_is_left_child, uncle);
    a.set_flip(parent, flip_new_parent);
    a.set_num_boundary(parent, new_parent_is_path ? 2 : 1);

    a.set_child(grandparent, uncle_is_left_child, node);
    a.set_child(grandparent, !uncle_is_left_child, parent);
    a.set_flip(grandparent, flip_grandparent);

    a.set_parent(node, grandparent);
    a.set_parent(uncle, parent);

    a.refresh_leaf_count(parent);
    a.diag().rotations++;
}

bool check_point_rotate_precondition(NodeArena& a, NodeId n) {
    NodeId parent = a.parent(n);
    if (parent.is_none())
        return false;
    NodeId grandparent = a.parent(parent);
    if (grandparent.is_none())
        return false;
    return a.is_point(n) && a.is_point(grandparent);
}

bool check_path_rotate_precondition(NodeArena& a, NodeId n) {
    NodeId parent = a.parent(n);
    if (parent.is_none())
        return false;
    NodeId grandparent = a.parent(parent);
    if (grandparent.is_none())
        return false;
    if (!a.is_path(parent))
        return false;
    a.push_flip(grandparent);
    a.push_flip(parent);
    bool node_is_left = a.child(parent, 0) == n;
    bool parent_is_left = a.child(grandparent, 0) == parent;
    return node_is_left == parent_is_left;
}

} // namespace toptree
