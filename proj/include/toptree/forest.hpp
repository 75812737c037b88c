#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "toptree/handles.hpp"

namespace toptree {

// The underlying forest. Edges are kept in per-vertex doubly-linked incidence
// lists so deletion is O(1), and the degree queries the top tree needs
// ("zero or one" vs "at least two") are answered by inspecting the first two
// incidence records instead of a counter.
//
// Acyclicity is the caller's contract (dynops::link only joins distinct
// trees); the validator checks it after the fact. Endpoint order is fixed at
// insertion and defines the unflipped left/right endpoints of the leaf node
// for that edge.
//
// Single mutator per store; concurrent readers only while no mutation is in
// flight.
class ForestStore {
public:
    VertexId add_vertex();

    // Requires u != v and both live. O(1). The new edge is prepended to both
    // incidence lists.
    EdgeId insert_edge(VertexId u, VertexId v);

    // O(1) unlink from both incidence lists.
    void delete_edge(EdgeId e);

    // Head of v's incidence list; deterministic given the insert/delete
    // history (most recently inserted surviving edge first).
    std::optional<EdgeId> any_incident_edge(VertexId v) const;

    bool degree_at_least_two(VertexId v) const;

    // (left, right) in insertion order.
    std::pair<VertexId, VertexId> endpoints(EdgeId e) const;

    bool is_exposed(VertexId v) const;
    void set_exposed(VertexId v, bool flag); // called by dynops only

    double weight(EdgeId e) const;
    void set_weight(EdgeId e, double w);

    // Scans u's incidence list. Used by script commands addressing edges by
    // endpoint pair.
    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

    template <class Fn> // Fn(EdgeId)
    void for_each_incident(VertexId v, Fn fn) const {
        const VertexRec& rec = vert(v);
        for (std::uint32_t inc = rec.head; inc != detail::npos;) {
            std::uint32_t slot = inc >> 1;
            fn(edge_id(slot));
            inc = edges_[slot].next[inc & 1];
        }
    }

    std::size_t live_vertex_count() const { return live_vertices_; }
    std::size_t live_edge_count() const { return live_edges_; }

    // Slot enumeration for the oracle/validator.
    std::size_t vertex_slots() const { return verts_.size(); }
    std::size_t edge_slots() const { return edges_.size(); }
    bool vertex_live(std::uint32_t slot) const { return slot < verts_.size() && verts_[slot].live; }
    bool edge_live(std::uint32_t slot) const { return slot < edges_.size() && edges_[slot].live; }
    VertexId vertex_at(std::uint32_t slot) const;
    EdgeId edge_at(std::uint32_t slot) const;

private:
    struct VertexRec {
        std::uint32_t head = detail::npos; // encoded incidence: edge slot << 1 | side
        std::uint32_t gen = 0;
        bool exposed = false;
        bool live = false;
    };
    struct EdgeRec {
        std::uint32_t v[2] = {detail::npos, detail::npos};
        std::uint32_t next[2] = {detail::npos, detail::npos};
        std::uint32_t prev[2] = {detail::npos, detail::npos};
        double weight = 0.0;
        std::uint32_t gen = 0;
        bool live = false;
    };

    VertexRec& vert(VertexId v);
    const VertexRec& vert(VertexId v) const;
    EdgeRec& edge(EdgeId e);
    const EdgeRec& edge(EdgeId e) const;
    EdgeId edge_id(std::uint32_t slot) const {
        return EdgeId{slot, edges_[slot].gen};
    }

    std::vector<VertexRec> verts_;
    std::vector<EdgeRec> edges_;
    std::vector<std::uint32_t> free_verts_;
    std::vector<std::uint32_t> free_edges_;
    std::size_t live_vertices_ = 0;
    std::size_t live_edges_ = 0;
};

} // namespace toptree
