#pragma once

#include <optional>
#include <utility>

#include "toptree/forest.hpp"
#include "toptree/topnodes.hpp"

namespace toptree {

// Expose comes in two observationally equivalent flavours: the default rotates
// the consuming node into a point cluster and full-splays it; the alternative
// avoids the full splay entirely via prepare_expose/expose_prepared. The trees
// they produce differ in shape but answer the same queries.
enum class ExposeStrategy { FullSplay, SemiSplayOnly };

namespace dynops {

// Lowest common ancestor of the leaves of all edges incident to v; nullopt
// iff v is isolated. Semi-splays an incident leaf first, so the caller pays
// amortized O(log n) and may afterwards do O(depth(result)) work for free.
std::optional<NodeId> find_consuming_node(ForestStore& f, NodeArena& a, VertexId v);

// Marks v exposed so every cluster containing it counts it as a boundary
// vertex. Returns the root of v's top tree (nullopt iff v is isolated; the
// root node identity is unchanged). Requires v unexposed and at most one
// other exposed vertex in its tree.
std::optional<NodeId> expose(ForestStore& f, NodeArena& a, VertexId v,
                             ExposeStrategy strategy = ExposeStrategy::FullSplay);

// Undoes an expose: decrements boundary counters on the consuming node and
// its ancestors and clears the flag. Requires v exposed.
std::optional<NodeId> deexpose(ForestStore& f, NodeArena& a, VertexId v);

// Creates the forest edge (u,v) and joins the two top trees; returns the new
// root. Requires u,v in disjoint trees, neither with exposed vertices.
NodeId link(ForestStore& f, NodeArena& a, VertexId u, VertexId v, double weight,
            ExposeStrategy strategy = ExposeStrategy::FullSplay);

// Removes edge e; returns the roots of the two remaining trees as
// (side of left endpoint, side of right endpoint), nullopt for endpoints that
// become isolated. Requires the tree of e to have no exposed vertices.
std::pair<std::optional<NodeId>, std::optional<NodeId>> cut(ForestStore& f,
                                                            NodeArena& a, EdgeId e);

// Destroys n and all its proper ancestors; the detached siblings along the
// path become roots. Never increases the potential.
void delete_all_ancestors(NodeArena& a, NodeId n);

// Appendix-style expose plumbing. prepare_expose rotates until every ancestor
// of the consuming node is a point cluster and returns the (possibly updated)
// consuming node; expose_prepared then increments the counters along the root
// path, adjusting flips, and returns the root.
NodeId prepare_expose(NodeArena& a, NodeId consuming);
NodeId expose_prepared(NodeArena& a, NodeId consuming);

} // namespace dynops
} // namespace toptree
