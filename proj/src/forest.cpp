#include "toptree/forest.hpp"

namespace toptree {

ForestStore::VertexRec& ForestStore::vert(VertexId v) {
    if (v.slot >= verts_.size() || !verts_[v.slot].live || verts_[v.slot].gen != v.gen)
        throw Error("forest: unknown or stale vertex handle");
    return verts_[v.slot];
}

const ForestStore::VertexRec& ForestStore::vert(VertexId v) const {
    return const_cast<ForestStore*>(this)->vert(v);
}

ForestStore::EdgeRec& ForestStore::edge(EdgeId e) {
    if (e.slot >= edges_.size() || !edges_[e.slot].live || edges_[e.slot].gen != e.gen)
        throw Error("forest: unknown or stale edge handle");
    return edges_[e.slot];
}

const ForestStore::EdgeRec& ForestStore::edge(EdgeId e) const {
    return const_cast<ForestStore*>(this)->edge(e);
}

VertexId ForestStore::add_vertex() {
    std::uint32_t slot;
    if (!free_verts_.empty()) {
        slot = free_verts_.back();
        free_verts_.pop_back();
    } else {
        slot = static_cast<std::uint32_t>(verts_.size());
        verts_.emplace_back();
    }
    VertexRec& rec = verts_[slot];
    rec.head = detail::npos;
    rec.exposed = false;
    rec.live = true;
    ++live_vertices_;
    return VertexId{slot, rec.gen};
}

EdgeId ForestStore::insert_edge(VertexId u, VertexId v) {
    vert(u);
    vert(v);
    if (u.slot == v.slot)
        throw Error("forest: insert_edge endpoints must differ");

    std::uint32_t slot;
    if (!free_edges_.empty()) {
        slot = free_edges_.back();
        free_edges_.pop_back();
    } else {
        slot = static_cast<std::uint32_t>(edges_.size());
        edges_.emplace_back();
    }
    EdgeRec& rec = edges_[slot];
    rec.v[0] = u.slot;
    rec.v[1] = v.slot;
    rec.weight = 0.0;
    rec.live = true;
    ++live_edges_;

    for (int side = 0; side < 2; ++side) {
        VertexRec& vr = verts_[rec.v[side]];
        std::uint32_t enc = (slot << 1) | std::uint32_t(side);
        rec.prev[side] = detail::npos;
        rec.next[side] = vr.head;
        if (vr.head != detail::npos)
            edges_[vr.head >> 1].prev[vr.head & 1] = enc;
        vr.head = enc;
    }
    return EdgeId{slot, rec.gen};
}

void ForestStore::delete_edge(EdgeId e) {
    EdgeRec& rec = edge(e);
    for (int side = 0; side < 2; ++side) {
        std::uint32_t p = rec.prev[side];
        std::uint32_t n = rec.next[side];
        if (p != detail::npos)
            edges_[p >> 1].next[p & 1] = n;
        else
            verts_[rec.v[side]].head = n;
        if (n != detail::npos)
            edges_[n >> 1].prev[n & 1] = p;
    }
    rec.live = false;
    ++rec.gen;
    --live_edges_;
    free_edges_.push_back(e.slot);
}

std::optional<EdgeId> ForestStore::any_incident_edge(VertexId v) const {
    const VertexRec& rec = vert(v);
    if (rec.head == detail::npos)
        return std::nullopt;
    return edge_id(rec.head >> 1);
}

bool ForestStore::degree_at_least_two(VertexId v) const {
    const VertexRec& rec = vert(v);
    if (rec.head == detail::npos)
        return false;
    return edges_[rec.head >> 1].next[rec.head & 1] != detail::npos;
}

std::pair<VertexId, VertexId> ForestStore::endpoints(EdgeId e) const {
    const EdgeRec& rec = edge(e);
    return {VertexId{rec.v[0], verts_[rec.v[0]].gen}, VertexId{rec.v[1], verts_[rec.v[1]].gen}};
}

bool ForestStore::is_exposed(VertexId v) const { return vert(v).exposed; }

void ForestStore::set_exposed(VertexId v, bool flag) { vert(v).exposed = flag; }

double ForestStore::weight(EdgeId e) const { return edge(e).weight; }

void ForestStore::set_weight(EdgeId e, double w) { edge(e).weight = w; }

std::optional<EdgeId> ForestStore::find_edge(VertexId u, VertexId v) const {
    vert(v);
    std::optional<EdgeId> found;
    for_each_incident(u, [&](EdgeId e) {
        const EdgeRec& rec = edges_[e.slot];
        if (!found && (rec.v[0] == v.slot || rec.v[1] == v.slot))
            found = e;
    });
    return found;
}

VertexId ForestStore::vertex_at(std::uint32_t slot) const {
    if (!vertex_live(slot))
        throw Error("forest: vertex_at on dead slot");
    return VertexId{slot, verts_[slot].gen};
}

EdgeId ForestStore::edge_at(std::uint32_t slot) const {
    if (!edge_live(slot))
        throw Error("forest: edge_at on dead slot");
    return EdgeId{slot, edges_[slot].gen};
}

} // namespace toptree
