#include "toptree/topnodes.hpp"

#include <cmath>

namespace toptree {

TopNode& NodeArena::get(NodeId n) {
    if (n.slot >= nodes_.size() || !nodes_[n.slot].live || nodes_[n.slot].gen != n.gen)
        throw Error("topnodes: unknown or stale node handle");
    return nodes_[n.slot];
}

NodeId NodeArena::create_leaf(EdgeId e, int num_boundary) {
    forest_->endpoints(e); // handle check
    std::uint32_t slot;
    if (!free_nodes_.empty()) {
        slot = free_nodes_.back();
        free_nodes_.pop_back();
    } else {
        slot = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
    }
    TopNode& nd = nodes_[slot];
    nd.parent = NodeId{};
    nd.children = {NodeId{}, NodeId{}};
    nd.edge = e;
    nd.leaf_count = 1;
    nd.num_boundary = static_cast<std::uint8_t>(num_boundary);
    nd.is_leaf = true;
    nd.flip = false;
    nd.summary_valid = false;
    nd.live = true;
    ++live_nodes_;

    if (edge_leaf_.size() <= e.slot)
        edge_leaf_.resize(e.slot + 1, detail::npos);
    assert(edge_leaf_[e.slot] == detail::npos);
    edge_leaf_[e.slot] = slot;

    phi_add(0.0); // log2(1)
    return NodeId{slot, nd.gen};
}

NodeId NodeArena::create_internal(NodeId c0, NodeId c1, int num_boundary, bool flip) {
    std::uint32_t s0 = get(c0).leaf_count;
    std::uint32_t s1 = get(c1).leaf_count;
    std::uint32_t slot;
    if (!free_nodes_.empty()) {
        slot = free_nodes_.back();
        free_nodes_.pop_back();
    } else {
        slot = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
    }
    TopNode& nd = nodes_[slot];
    nd.parent = NodeId{};
    nd.children = {c0, c1};
    nd.edge = EdgeId{};
    nd.leaf_count = s0 + s1;
    nd.num_boundary = static_cast<std::uint8_t>(num_boundary);
    nd.is_leaf = false;
    nd.flip = flip;
    nd.summary_valid = false;
    nd.live = true;
    ++live_nodes_;

    NodeId id{slot, nd.gen};
    get(c0).parent = id;
    get(c1).parent = id;
    phi_add(std::log2(double(nd.leaf_count)));
    return id;
}

void NodeArena::destroy(NodeId n) {
    TopNode& nd = get(n);
    phi_add(-std::log2(double(nd.leaf_count)));
    if (nd.is_leaf)
        edge_leaf_[nd.edge.slot] = detail::npos;
    nd.live = false;
    nd.summary_valid = false;
    ++nd.gen;
    --live_nodes_;
    free_nodes_.push_back(n.slot);
}

NodeId NodeArena::child(NodeId n, bool idx) const {
    const TopNode& nd = get(n);
    if (nd.is_leaf)
        throw Error("topnodes: leaf has no children");
    return nd.children[idx];
}

EdgeId NodeArena::edge_of_leaf(NodeId n) const {
    const TopNode& nd = get(n);
    if (!nd.is_leaf)
        throw Error("topnodes: edge_of_leaf on internal node");
    return nd.edge;
}

NodeId NodeArena::leaf_of_edge(EdgeId e) const {
    forest_->endpoints(e);
    if (e.slot >= edge_leaf_.size() || edge_leaf_[e.slot] == detail::npos)
        throw Error("topnodes: edge has no leaf node");
    std::uint32_t slot = edge_leaf_[e.slot];
    return NodeId{slot, nodes_[slot].gen};
}

NodeId NodeArena::sibling(NodeId n) const {
    NodeId p = get(n).parent;
    if (p.is_none())
        throw Error("topnodes: sibling of a root");
    const TopNode& pd = get(p);
    return pd.children[0] == n ? pd.children[1] : pd.children[0];
}

NodeId NodeArena::root_of(NodeId n) const {
    NodeId cur = n;
    for (NodeId p = get(cur).parent; !p.is_none(); p = get(cur).parent)
        cur = p;
    return cur;
}

int NodeArena::depth(NodeId n) const {
    int d = 0;
    for (NodeId p = get(n).parent; !p.is_none(); p = get(p).parent)
        ++d;
    return d;
}

bool NodeArena::has_left_boundary(NodeId n) const {
    const TopNode& nd = get(n);
    if (nd.is_leaf) {
        auto [l, r] = forest_->endpoints(nd.edge);
        VertexId endpoint = nd.flip ? r : l;
        return forest_->is_exposed(endpoint) || forest_->degree_at_least_two(endpoint);
    }
    return is_path(nd.children[nd.flip]);
}

bool NodeArena::has_right_boundary(NodeId n) const {
    const TopNode& nd = get(n);
    if (nd.is_leaf) {
        auto [l, r] = forest_->endpoints(nd.edge);
        VertexId endpoint = nd.flip ? l : r;
        return forest_->is_exposed(endpoint) || forest_->degree_at_least_two(endpoint);
    }
    return is_path(nd.children[!nd.flip]);
}

bool NodeArena::has_middle_boundary(NodeId n) const {
    const TopNode& nd = get(n);
    if (nd.is_leaf || nd.num_boundary == 0)
        return false;
    return nd.num_boundary - int(is_path(nd.children[0])) - int(is_path(nd.children[1])) != 0;
}

void NodeArena::set_child(NodeId n, bool idx, NodeId c) {
    TopNode& nd = get(n);
    if (nd.is_leaf)
        throw Error("topnodes: set_child on a leaf");
    nd.children[idx] = c;
}

void NodeArena::set_num_boundary(NodeId n, int b) {
    if (b < 0 || b > 2)
        throw Error("topnodes: boundary counter out of range");
    get(n).num_boundary = static_cast<std::uint8_t>(b);
}

void NodeArena::add_num_boundary(NodeId n, int delta) {
    set_num_boundary(n, num_boundary(n) + delta);
}

void NodeArena::push_flip(NodeId n) {
    TopNode& nd = get(n);
    if (!nd.flip)
        return;
    if (nd.is_leaf)
        return; // predicates index endpoints through the bit
    std::swap(nd.children[0], nd.children[1]);
    get(nd.children[0]).flip ^= true;
    get(nd.children[1]).flip ^= true;
    nd.flip = false;
    if (hooks_)
        hooks_->reverse_summary(n); // raw child order mirrored
}

void NodeArena::materialize_flips(NodeId root) {
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        if (is_leaf(n))
            continue;
        push_flip(n);
        stack.push_back(child(n, 0));
        stack.push_back(child(n, 1));
    }
}

void NodeArena::refresh_leaf_count(NodeId n) {
    TopNode& nd = get(n);
    if (nd.is_leaf)
        return;
    std::uint32_t s = get(nd.children[0]).leaf_count + get(nd.children[1]).leaf_count;
    if (s == nd.leaf_count)
        return;
    if (ledger_enabled_)
        phi_ += std::log2(double(s)) - std::log2(double(nd.leaf_count));
    nd.leaf_count = s;
}

void NodeArena::invalidate_root_path(NodeId n) {
    for (NodeId cur = n; !cur.is_none(); cur = get(cur).parent) {
        TopNode& nd = get(cur);
        if (!nd.summary_valid)
            break; // dirty set is upward-closed, ancestors already marked
        nd.summary_valid = false;
    }
}

void NodeArena::set_ledger_enabled(bool enabled) {
    if (enabled && !ledger_enabled_) {
        ledger_enabled_ = true;
        phi_ = potential_recomputed();
    } else if (!enabled) {
        ledger_enabled_ = false;
        phi_ = 0.0;
    }
}

double NodeArena::rank(NodeId n) const { return std::log2(double(get(n).leaf_count)); }

double NodeArena::potential() const {
    return ledger_enabled_ ? phi_ : potential_recomputed();
}

double NodeArena::potential_recomputed() const {
    // From-scratch: recompute every s(x) by post-order walks from the roots,
    // ignoring the incrementally maintained leaf counts.
    std::vector<std::uint32_t> fresh(nodes_.size(), 0);
    double phi = 0.0;
    std::vector<std::pair<std::uint32_t, bool>> stack;
    for (std::uint32_t slot = 0; slot < nodes_.size(); ++slot) {
        if (!nodes_[slot].live || !nodes_[slot].parent.is_none())
            continue;
        stack.push_back({slot, false});
        while (!stack.empty()) {
            auto [cur, ready] = stack.back();
            stack.pop_back();
            const TopNode& nd = nodes_[cur];
            if (nd.is_leaf) {
                fresh[cur] = 1;
                continue;
            }
            if (!ready) {
                stack.push_back({cur, true});
                stack.push_back({nd.children[0].slot, false});
                stack.push_back({nd.children[1].slot, false});
                continue;
            }
            fresh[cur] = fresh[nd.children[0].slot] + fresh[nd.children[1].slot];
        }
    }
    for (std::uint32_t slot = 0; slot < nodes_.size(); ++slot)
        if (nodes_[slot].live)
            phi += std::log2(double(fresh[slot]));
    return phi;
}

NodeId NodeArena::node_at(std::uint32_t slot) const {
    if (!node_live(slot))
        throw Error("topnodes: node_at on dead slot");
    return NodeId{slot, nodes_[slot].gen};
}

} // namespace toptree
