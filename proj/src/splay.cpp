#include "toptree/splay.hpp"

#include <algorithm>
#include <string>

#include "toptree/rotate.hpp"

namespace toptree {

namespace {

// Pattern soundness: every rotation a semi-splay step performs must be
// sanctioned by the point or the path rotation precondition.
void check_pattern(NodeArena& a, NodeId target) {
    if (!a.diag().check_bounds)
        return;
    if (check_point_rotate_precondition(a, target) ||
        check_path_rotate_precondition(a, target)) {
        a.diag().bound_checks_passed++;
        return;
    }
    a.diag().note_violation(a.diag().pattern_soundness_failures,
                            "semi_splay_step chose a rotation not covered by the "
                            "point/path rotation preconditions (node slot " +
                                std::to_string(target.slot) + ")");
}

struct SplayProbe {
    bool active = false;
    int depth0 = 0;
    double phi0 = 0.0;
    double r_node = 0.0;
    double r_root = 0.0;
    bool node_point = false;
    bool root_point = false;

    SplayProbe(NodeArena& a, NodeId node) {
        if (!a.diag().check_bounds)
            return;
        active = true;
        depth0 = a.depth(node);
        phi0 = a.potential();
        r_node = a.rank(node);
        NodeId root = a.root_of(node);
        r_root = a.rank(root);
        node_point = a.is_point(node);
        root_point = a.is_point(root);
    }
};

} // namespace

std::optional<NodeId> semi_splay_step(NodeArena& a, NodeId node) {
    for (;;) {
        a.diag().nodes_visited++;
        NodeId parent = a.parent(node);
        if (parent.is_none())
            return std::nullopt;
        NodeId gparent = a.parent(parent);
        if (gparent.is_none())
            return std::nullopt;

        if (a.is_point(node) && a.is_point(gparent)) {
            check_pattern(a, node);
            rotate_up(a, node);
            return gparent;
        }

        NodeId ggparent = a.parent(gparent);
        if (ggparent.is_none())
            return std::nullopt;
        if (a.is_path(parent) && (a.is_path(gparent) || a.is_point(ggparent))) {
            a.push_flip(gparent);
            a.push_flip(parent);

            bool node_is_left = a.child(parent, 0) == node;
            bool parent_is_left = a.child(gparent, 0) == parent;
            bool gparent_is_left = a.child(ggparent, 0) == gparent;
            if (node_is_left == parent_is_left) {
                check_pattern(a, node);
                rotate_up(a, node);
                return gparent;
            }
            if (parent_is_left == gparent_is_left) {
                check_pattern(a, parent);
                rotate_up(a, parent);
                return ggparent;
            }
            // Here `node_is_left == gparent_is_left` holds.
            NodeId sib = a.sibling(node);
            check_pattern(a, sib);
            rotate_up(a, sib); // swaps sibling(node) and sibling(parent)
            check_pattern(a, parent);
            rotate_up(a, parent); // parent is still node.parent here
            return ggparent;
        }
        node = parent;
    }
}

void semi_splay(NodeArena& a, NodeId node) {
    a.diag().semi_splay_calls++;
    SplayProbe probe(a, node);

    std::optional<NodeId> top = node;
    while (top)
        top = semi_splay_step(a, *top);

    if (probe.active) {
        Diagnostics& d = a.diag();
        int depth1 = a.depth(node);
        int limit = (4 * probe.depth0 + 4) / 5; // ceil(4/5 * depth0)
        if (depth1 > limit)
            d.note_violation(d.depth_bound_failures,
                             "semi_splay depth " + std::to_string(probe.depth0) + " -> " +
                                 std::to_string(depth1) + " exceeds ceil(4/5*d)=" +
                                 std::to_string(limit));
        double dphi = a.potential() - probe.phi0;
        double bound = 5.0 * (8.0 / 25.0 + probe.r_root - probe.r_node) -
                       0.4 * double(probe.depth0);
        if (dphi > bound + 1e-6)
            d.note_violation(d.potential_bound_failures,
                             "semi_splay dPhi=" + std::to_string(dphi) + " exceeds " +
                                 std::to_string(bound));
        else
            d.bound_checks_passed++;
    }
}

void full_splay(NodeArena& a, NodeId node) {
    a.diag().full_splay_calls++;
    SplayProbe probe(a, node);

    for (;;) {
        std::optional<NodeId> top = semi_splay_step(a, node);
        if (!top)
            break;
        semi_splay_step(a, *top);
    }

    if (probe.active) {
        Diagnostics& d = a.diag();
        int depth1 = a.depth(node);
        int limit = probe.node_point && probe.root_point ? 1
                    : probe.root_point                   ? 2
                    : probe.node_point                   ? 3
                                                         : 4;
        d.max_depth_after_full_splay = std::max(d.max_depth_after_full_splay, depth1);
        if (depth1 > limit)
            d.note_violation(d.depth_bound_failures,
                             "full_splay final depth " + std::to_string(depth1) +
                                 " exceeds bound " + std::to_string(limit));
        double dphi = a.potential() - probe.phi0;
        double bound = 9.0 * (1.0 + probe.r_root - probe.r_node) - double(probe.depth0);
        if (dphi > bound + 1e-6)
            d.note_violation(d.potential_bound_failures,
                             "full_splay dPhi=" + std::to_string(dphi) + " exceeds " +
                                 std::to_string(bound));
        else
            d.bound_checks_passed++;
    }
}

} // namespace toptree
