#pragma once

#include "toptree/topnodes.hpp"

namespace toptree {

// Moves `node` up by swapping it with its parent's sibling. Allowed exactly
// when sibling(node) union sibling(parent(node)) is a valid cluster; with
// diag().check_rotation_validity set, that condition is verified by a
// brute-force boundary recount before anything is mutated, and an Error is
// thrown on failure. Afterwards the parent handle denotes the merged
// sibling/uncle cluster and the grandparent handle the unchanged outer
// cluster; boundary counters, flip bits and leaf counts are kept consistent.
void rotate_up(NodeArena& a, NodeId node);

// Sufficient conditions under which rotate_up(n) is guaranteed valid:
// the point variant holds when n and its grandparent are both point clusters;
// the path variant when parent(n) is a path cluster and n hangs off to the
// same side as parent(n) (sides read after pushing the grandparent's and
// parent's flips). Both require a parent and grandparent to exist.
bool check_point_rotate_precondition(NodeArena& a, NodeId n);
bool check_path_rotate_precondition(NodeArena& a, NodeId n);

} // namespace toptree
