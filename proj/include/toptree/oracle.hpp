#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "toptree/forest.hpp"
#include "toptree/topnodes.hpp"

namespace toptree {

// Brute-force mirror of the forest, keyed by dense vertex indices (the same
// numbering the CLI scripts use). All queries are exact traversals; this is
// the ground truth the top tree is fuzzed against.
class NaiveForest {
public:
    std::uint32_t add_vertex();
    void add_edge(std::uint32_t u, std::uint32_t v, double w);
    void remove_edge(std::uint32_t u, std::uint32_t v);
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
    double edge_weight(std::uint32_t u, std::uint32_t v) const;

    void set_exposed(std::uint32_t v, bool flag) { exposed_.at(v) = flag; }
    bool exposed(std::uint32_t v) const { return exposed_.at(v) != 0; }

    bool connected(std::uint32_t u, std::uint32_t v) const;

    // Maximum edge weight on the u..v path; -infinity for the empty path
    // (u == v), nullopt when disconnected.
    std::optional<double> path_max(std::uint32_t u, std::uint32_t v) const;

    std::vector<std::vector<std::uint32_t>> components() const;
    int exposed_count_in_tree(std::uint32_t v) const;
    std::size_t degree(std::uint32_t v) const { return adj_.at(v).size(); }

    std::size_t vertex_count() const { return adj_.size(); }
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> edges() const;

private:
    std::vector<std::map<std::uint32_t, double>> adj_;
    std::vector<char> exposed_;
};

// Total weight of a minimum spanning forest; ties broken by edge index.
double kruskal(const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges);

// Leaf edges under a top-tree node.
std::vector<EdgeId> cluster_edges(const NodeArena& a, NodeId n);

// Boundary vertices of a connected nonempty edge set, by definition: incident
// to an edge in the set and either exposed or incident to an edge outside it.
// Throws if the set is empty or disconnected.
std::vector<VertexId> naive_boundary_vertices(const ForestStore& f,
                                              const std::vector<EdgeId>& edges);

// Explicit LCA over parent links of the leaves of all edges incident to v.
std::optional<NodeId> naive_consuming_node(const ForestStore& f, const NodeArena& a,
                                           VertexId v);

struct Violation {
    std::string invariant;
    std::uint32_t node_slot = detail::npos;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const; // "VIOLATION <invariant> node=<id> <detail>" lines
};

// Runs every structural invariant (forest consistency, leaf-edge bijection,
// parent/child consistency, cluster decomposition, boundary counters vs the
// naive recount, orientation invariant, exposure limits, ledger consistency)
// against a deep copy; the live structure is never mutated.
ValidationReport validate_structure(const ForestStore& f, const NodeArena& a);

// Same checks but run directly on (and materializing) the given copy. Used by
// the templated full validator so it can inspect summaries afterwards.
ValidationReport validate_structure_inplace(ForestStore& f, NodeArena& a);

// Canonical dump of forest + node arena; equal strings mean equal structures.
std::string serialize_structure(const ForestStore& f, const NodeArena& a);

} // namespace toptree
