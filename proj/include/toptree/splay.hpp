#pragma once

#include <optional>

#include "toptree/topnodes.hpp"

namespace toptree {

// Finds and executes one or two valid rotations that together reduce the
// depth of `node` by exactly one, and returns the root of the changed
// subtree. Returns nullopt (tree untouched) only when no pattern matches,
// which bounds depth(node) by 4 (3 if node is a point cluster, 2 if the root
// is, 1 if both). Patterns on b0b1b2 are preferred over b1b2b3.
std::optional<NodeId> semi_splay_step(NodeArena& a, NodeId node);

// Repeats semi_splay_step along the root path; reduces depth(node) to at most
// ceil(4/5 * depth(node)) in O(depth) work. With diag().check_bounds set, the
// depth bound and the potential bound
//   dPhi <= 5*(8/25 + r(root) - r(node)) - (2/5)*depth(node)
// are asserted (1e-6 slack) and violations counted.
void semi_splay(NodeArena& a, NodeId node);

// Alternates semi_splay_step on `node` and on the returned subtree root until
// no step applies; afterwards depth(node) satisfies the step-failure bounds.
// Checked potential bound: dPhi <= 9*(1 + r(root) - r(node)) - depth(node).
void full_splay(NodeArena& a, NodeId node);

} // namespace toptree
