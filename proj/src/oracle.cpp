#include "toptree/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace toptree {

// ---------------------------------------------------------------------------
// NaiveForest

std::uint32_t NaiveForest::add_vertex() {
    adj_.emplace_back();
    exposed_.push_back(0);
    return static_cast<std::uint32_t>(adj_.size() - 1);
}

void NaiveForest::add_edge(std::uint32_t u, std::uint32_t v, double w) {
    adj_.at(u)[v] = w;
    adj_.at(v)[u] = w;
}

void NaiveForest::remove_edge(std::uint32_t u, std::uint32_t v) {
    adj_.at(u).erase(v);
    adj_.at(v).erase(u);
}

bool NaiveForest::has_edge(std::uint32_t u, std::uint32_t v) const {
    return u < adj_.size() && adj_[u].count(v) > 0;
}

double NaiveForest::edge_weight(std::uint32_t u, std::uint32_t v) const {
    return adj_.at(u).at(v);
}

bool NaiveForest::connected(std::uint32_t u, std::uint32_t v) const {
    if (u == v)
        return true;
    std::vector<char> seen(adj_.size(), 0);
    std::deque<std::uint32_t> queue{u};
    seen[u] = 1;
    while (!queue.empty()) {
        std::uint32_t x = queue.front();
        queue.pop_front();
        if (x == v)
            return true;
        for (auto& [y, w] : adj_[x])
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
    }
    return false;
}

std::optional<double> NaiveForest::path_max(std::uint32_t u, std::uint32_t v) const {
    if (u == v)
        return -std::numeric_limits<double>::infinity();
    // DFS carrying the running max; the graph is a forest so the path is unique.
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::tuple<std::uint32_t, double>> stack{{u, -std::numeric_limits<double>::infinity()}};
    seen[u] = 1;
    while (!stack.empty()) {
        auto [x, mx] = stack.back();
        stack.pop_back();
        if (x == v)
            return mx;
        for (auto& [y, w] : adj_[x])
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back({y, std::max(mx, w)});
            }
    }
    return std::nullopt;
}

std::vector<std::vector<std::uint32_t>> NaiveForest::components() const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t s = 0; s < adj_.size(); ++s) {
        if (seen[s])
            continue;
        out.emplace_back();
        std::vector<std::uint32_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            out.back().push_back(x);
            for (auto& [y, w] : adj_[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

int NaiveForest::exposed_count_in_tree(std::uint32_t v) const {
    int count = 0;
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::uint32_t> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        std::uint32_t x = stack.back();
        stack.pop_back();
        count += exposed_[x] ? 1 : 0;
        for (auto& [y, w] : adj_[x])
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    return count;
}

std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> NaiveForest::edges() const {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> out;
    for (std::uint32_t u = 0; u < adj_.size(); ++u)
        for (auto& [v, w] : adj_[u])
            if (u < v)
                out.push_back({u, v, w});
    return out;
}

// ---------------------------------------------------------------------------
// Kruskal

namespace {
struct Dsu {
    std::vector<std::uint32_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[a] = b;
        return true;
    }
};
} // namespace

double kruskal(const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges) {
    std::uint32_t max_v = 0;
    for (auto& [u, v, w] : edges)
        max_v = std::max({max_v, u + 1, v + 1});
    std::vector<std::uint32_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::get<2>(edges[a]) < std::get<2>(edges[b]);
    });
    Dsu dsu(max_v);
    double total = 0.0;
    for (std::uint32_t i : order) {
        auto& [u, v, w] = edges[i];
        if (u != v && dsu.unite(u, v))
            total += w;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Cluster helpers

std::vector<EdgeId> cluster_edges(const NodeArena& a, NodeId n) {
    std::vector<EdgeId> out;
    std::vector<NodeId> stack{n};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        if (a.is_leaf(cur)) {
            out.push_back(a.edge_of_leaf(cur));
        } else {
            stack.push_back(a.child(cur, 0));
            stack.push_back(a.child(cur, 1));
        }
    }
    return out;
}

std::vector<VertexId> naive_boundary_vertices(const ForestStore& f,
                                              const std::vector<EdgeId>& edges) {
    if (edges.empty())
        throw Error("naive_boundary_vertices: empty edge set");

    std::unordered_set<std::uint32_t> in_set;
    for (EdgeId e : edges)
        in_set.insert(e.slot);

    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> incident; // vertex -> edge slots
    for (EdgeId e : edges) {
        auto [u, v] = f.endpoints(e);
        incident[u.slot].push_back(e.slot);
        incident[v.slot].push_back(e.slot);
    }

    // connectivity over the induced subgraph
    std::unordered_set<std::uint32_t> seen_edges;
    std::vector<std::uint32_t> stack{incident.begin()->first};
    std::unordered_set<std::uint32_t> seen_verts{stack[0]};
    while (!stack.empty()) {
        std::uint32_t x = stack.back();
        stack.pop_back();
        for (std::uint32_t es : incident[x]) {
            if (!seen_edges.insert(es).second)
                continue;
            auto [u, v] = f.endpoints(f.edge_at(es));
            for (std::uint32_t y : {u.slot, v.slot})
                if (seen_verts.insert(y).second)
                    stack.push_back(y);
        }
    }
    if (seen_edges.size() != in_set.size())
        throw Error("naive_boundary_vertices: disconnected edge set");

    std::vector<VertexId> out;
    for (auto& [vs, inc] : incident) {
        VertexId v = f.vertex_at(vs);
        bool boundary = f.is_exposed(v);
        if (!boundary) {
            f.for_each_incident(v, [&](EdgeId e) {
                if (!in_set.count(e.slot))
                    boundary = true;
            });
        }
        if (boundary)
            out.push_back(v);
    }
    std::sort(out.begin(), out.end(),
              [](VertexId a, VertexId b) { return a.slot < b.slot; });
    return out;
}

std::optional<NodeId> naive_consuming_node(const ForestStore& f, const NodeArena& a,
                                           VertexId v) {
    std::vector<NodeId> leaves;
    f.for_each_incident(v, [&](EdgeId e) { leaves.push_back(a.leaf_of_edge(e)); });
    if (leaves.empty())
        return std::nullopt;
    NodeId lca = leaves[0];
    int lca_depth = a.depth(lca);
    for (std::size_t i = 1; i < leaves.size(); ++i) {
        NodeId other = leaves[i];
        int od = a.depth(other);
        while (od > lca_depth) {
            other = a.parent(other);
            --od;
        }
        while (lca_depth > od) {
            lca = a.parent(lca);
            --lca_depth;
        }
        while (lca != other) {
            lca = a.parent(lca);
            other = a.parent(other);
            --lca_depth;
        }
    }
    return lca;
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const Violation& v : violations) {
        os << "VIOLATION " << v.invariant << " node=";
        if (v.node_slot == detail::npos)
            os << "-";
        else
            os << v.node_slot;
        os << " " << v.detail << "\n";
    }
    return os.str();
}

namespace {

struct NodeFacts {
    std::vector<std::uint32_t> edges; // edge slots
    std::vector<std::uint32_t> verts; // sorted vertex slots
    std::uint32_t central = detail::npos;
    int naive_boundary = -1;
    std::uint32_t fresh_leaf_count = 0;
    // boundary vertex identities by position (npos = absent)
    std::uint32_t left = detail::npos, mid = detail::npos, right = detail::npos;
};

class Validator {
public:
    Validator(ForestStore& f, NodeArena& a, ValidationReport& rep)
        : f_(f), a_(a), rep_(rep) {}

    void run() {
        check_forest();
        check_node_structure();
        if (structure_broken_)
            return; // cluster checks would walk broken links
        check_clusters();
        check_ledger();
    }

private:
    void fail(const std::string& invariant, std::uint32_t slot, std::string detail) {
        rep_.violations.push_back({invariant, slot, std::move(detail)});
    }

    void check_forest() {
        // every live edge appears exactly once in each endpoint's list
        std::unordered_map<std::uint64_t, int> seen; // (edge slot, side) -> count
        for (std::uint32_t vs = 0; vs < f_.vertex_slots(); ++vs) {
            if (!f_.vertex_live(vs))
                continue;
            VertexId v = f_.vertex_at(vs);
            f_.for_each_incident(v, [&](EdgeId e) {
                auto [a, b] = f_.endpoints(e);
                int side = a.slot == vs ? 0 : (b.slot == vs ? 1 : -1);
                if (side < 0)
                    fail("forest-incidence", detail::npos,
                         "edge " + std::to_string(e.slot) + " listed at non-endpoint vertex " +
                             std::to_string(vs));
                else
                    seen[(std::uint64_t(e.slot) << 1) | unsigned(side)]++;
            });
        }
        for (std::uint32_t es = 0; es < f_.edge_slots(); ++es) {
            if (!f_.edge_live(es))
                continue;
            for (int side = 0; side < 2; ++side) {
                auto it = seen.find((std::uint64_t(es) << 1) | unsigned(side));
                int count = it == seen.end() ? 0 : it->second;
                if (count != 1)
                    fail("forest-incidence", detail::npos,
                         "edge " + std::to_string(es) + " side " + std::to_string(side) +
                             " appears " + std::to_string(count) + " times");
            }
        }

        // acyclicity
        Dsu dsu(f_.vertex_slots());
        for (std::uint32_t es = 0; es < f_.edge_slots(); ++es) {
            if (!f_.edge_live(es))
                continue;
            auto [u, v] = f_.endpoints(f_.edge_at(es));
            if (!dsu.unite(u.slot, v.slot))
                fail("forest-acyclic", detail::npos,
                     "edge " + std::to_string(es) + " closes a cycle");
        }

        // at most two exposed vertices per tree
        std::unordered_map<std::uint32_t, int> exposed_per_tree;
        for (std::uint32_t vs = 0; vs < f_.vertex_slots(); ++vs) {
            if (!f_.vertex_live(vs))
                continue;
            if (f_.is_exposed(f_.vertex_at(vs)))
                exposed_per_tree[dsu.find(vs)]++;
        }
        for (auto& [root, count] : exposed_per_tree)
            if (count > 2)
                fail("exposure-limit", detail::npos,
                     "tree of vertex " + std::to_string(root) + " has " +
                         std::to_string(count) + " exposed vertices");
    }

    void check_node_structure() {
        std::size_t live = 0;
        for (std::uint32_t ns = 0; ns < a_.node_slots(); ++ns) {
            if (!a_.node_live(ns))
                continue;
            ++live;
            NodeId n = a_.node_at(ns);
            if (a_.num_boundary(n) > 2) {
                fail("boundary-range", ns, "counter exceeds two");
                structure_broken_ = true;
            }
            if (a_.is_leaf(n)) {
                EdgeId e = a_.edge_of_leaf(n);
                if (!f_.edge_live(e.slot) || f_.edge_at(e.slot) != e) {
                    fail("leaf-edge-bijection", ns, "leaf references dead edge");
                    structure_broken_ = true;
                } else if (a_.leaf_of_edge(e) != n) {
                    fail("leaf-edge-bijection", ns, "edge->leaf map disagrees");
                    structure_broken_ = true;
                }
            } else {
                for (int side = 0; side < 2; ++side) {
                    NodeId c = a_.child(n, side);
                    bool live_child =
                        !c.is_none() && a_.node_live(c.slot) && a_.node_at(c.slot) == c;
                    if (!live_child) {
                        fail("child-consistency", ns,
                             "child " + std::to_string(side) + " is not a live node");
                        structure_broken_ = true;
                    } else if (a_.parent(c) != n) {
                        fail("child-consistency", ns,
                             "child " + std::to_string(side) + " has a different parent");
                        structure_broken_ = true;
                    }
                }
            }
        }
        // every live edge has a leaf
        for (std::uint32_t es = 0; es < f_.edge_slots(); ++es) {
            if (!f_.edge_live(es))
                continue;
            try {
                a_.leaf_of_edge(f_.edge_at(es));
            } catch (const Error&) {
                fail("leaf-edge-bijection", detail::npos,
                     "edge " + std::to_string(es) + " has no leaf node");
                structure_broken_ = true;
            }
        }
        if (structure_broken_)
            return;
        // reachability from roots covers every node exactly once (no cycles,
        // no orphaned sharing)
        std::vector<char> seen(a_.node_slots(), 0);
        std::size_t visited = 0;
        for (std::uint32_t ns = 0; ns < a_.node_slots(); ++ns) {
            if (!a_.node_live(ns) || !a_.is_root(a_.node_at(ns)))
                continue;
            std::vector<NodeId> stack{a_.node_at(ns)};
            while (!stack.empty()) {
                NodeId cur = stack.back();
                stack.pop_back();
                if (seen[cur.slot]) {
                    fail("tree-shape", cur.slot, "node reached twice");
                    structure_broken_ = true;
                    return;
                }
                seen[cur.slot] = 1;
                ++visited;
                if (!a_.is_leaf(cur)) {
                    stack.push_back(a_.child(cur, 0));
                    stack.push_back(a_.child(cur, 1));
                }
            }
        }
        if (visited != live) {
            fail("tree-shape", detail::npos,
                 "parent links contain a cycle: " + std::to_string(visited) + " of " +
                     std::to_string(live) + " nodes reachable from roots");
            structure_broken_ = true;
        }
    }

    void check_clusters() {
        // materialize flips on this (already copied) structure first, then
        // compute cluster facts bottom-up per root
        facts_.assign(a_.node_slots(), NodeFacts{});
        std::vector<std::uint32_t> total_degree(f_.vertex_slots(), 0);
        for (std::uint32_t es = 0; es < f_.edge_slots(); ++es) {
            if (!f_.edge_live(es))
                continue;
            auto [u, v] = f_.endpoints(f_.edge_at(es));
            total_degree[u.slot]++;
            total_degree[v.slot]++;
        }

        for (std::uint32_t ns = 0; ns < a_.node_slots(); ++ns) {
            if (!a_.node_live(ns) || !a_.is_root(a_.node_at(ns)))
                continue;
            NodeId root = a_.node_at(ns);
            a_.materialize_flips(root);
            std::vector<std::pair<NodeId, bool>> stack{{root, false}};
            while (!stack.empty()) {
                auto [n, ready] = stack.back();
                stack.pop_back();
                if (!ready && !a_.is_leaf(n)) {
                    stack.push_back({n, true});
                    stack.push_back({a_.child(n, 1), false});
                    stack.push_back({a_.child(n, 0), false});
                    continue;
                }
                check_one_cluster(n, total_degree);
            }
        }
    }

    void check_one_cluster(NodeId n, const std::vector<std::uint32_t>& total_degree) {
        NodeFacts& fact = facts_[n.slot];
        if (a_.is_leaf(n)) {
            EdgeId e = a_.edge_of_leaf(n);
            auto [u, v] = f_.endpoints(e);
            fact.edges = {e.slot};
            fact.verts = {u.slot, v.slot};
            std::sort(fact.verts.begin(), fact.verts.end());
            fact.fresh_leaf_count = 1;
            // identities, honouring the leaf's remaining flip bit
            std::uint32_t l = a_.flip(n) ? v.slot : u.slot;
            std::uint32_t r = a_.flip(n) ? u.slot : v.slot;
            auto is_b = [&](std::uint32_t x) {
                return f_.is_exposed(f_.vertex_at(x)) || total_degree[x] >= 2;
            };
            fact.left = is_b(l) ? l : detail::npos;
            fact.right = is_b(r) ? r : detail::npos;
            fact.naive_boundary = int(fact.left != detail::npos) + int(fact.right != detail::npos);
        } else {
            const NodeFacts& lf = facts_[a_.child(n, 0).slot];
            const NodeFacts& rf = facts_[a_.child(n, 1).slot];
            fact.fresh_leaf_count = lf.fresh_leaf_count + rf.fresh_leaf_count;
            fact.edges.reserve(lf.edges.size() + rf.edges.size());
            fact.edges = lf.edges;
            fact.edges.insert(fact.edges.end(), rf.edges.begin(), rf.edges.end());
            std::vector<std::uint32_t> shared;
            std::set_intersection(lf.verts.begin(), lf.verts.end(), rf.verts.begin(),
                                  rf.verts.end(), std::back_inserter(shared));
            if (shared.size() != 1) {
                fail("cluster-decomposition", n.slot,
                     "children share " + std::to_string(shared.size()) +
                         " vertices (need exactly the central vertex)");
                return;
            }
            fact.central = shared[0];
            std::set_union(lf.verts.begin(), lf.verts.end(), rf.verts.begin(), rf.verts.end(),
                           std::back_inserter(fact.verts));

            // per-cluster vertex degrees for the boundary recount
            std::unordered_map<std::uint32_t, std::uint32_t> in_degree;
            for (std::uint32_t es : fact.edges) {
                auto [u, v] = f_.endpoints(f_.edge_at(es));
                in_degree[u.slot]++;
                in_degree[v.slot]++;
            }
            int boundary = 0;
            for (auto& [vs, din] : in_degree)
                if (f_.is_exposed(f_.vertex_at(vs)) || total_degree[vs] > din)
                    ++boundary;
            fact.naive_boundary = boundary;

            // orientation invariant on the materialized tree
            std::uint32_t rightmost_l = lf.right != detail::npos ? lf.right : lf.mid;
            std::uint32_t leftmost_r = rf.left != detail::npos ? rf.left : rf.mid;
            if (rightmost_l != fact.central || leftmost_r != fact.central)
                fail("orientation-invariant", n.slot,
                     "rightmost(left child)/leftmost(right child) do not both equal the "
                     "central vertex " +
                         std::to_string(fact.central));

            // identities of this node's boundary vertices
            auto remaining = [](const NodeFacts& cf, std::uint32_t consumed) {
                for (std::uint32_t x : {cf.left, cf.mid, cf.right})
                    if (x != detail::npos && x != consumed)
                        return x;
                return detail::npos;
            };
            fact.left = remaining(lf, rightmost_l);
            fact.right = remaining(rf, leftmost_r);
            bool central_boundary =
                f_.is_exposed(f_.vertex_at(fact.central)) ||
                total_degree[fact.central] > in_degree[fact.central];
            fact.mid = central_boundary ? fact.central : detail::npos;
        }

        int counter = a_.num_boundary(n);
        if (fact.naive_boundary != counter)
            fail("boundary-counter", n.slot,
                 "stored " + std::to_string(counter) + " but recount gives " +
                     std::to_string(fact.naive_boundary));

        int identity_count = int(fact.left != detail::npos) + int(fact.mid != detail::npos) +
                             int(fact.right != detail::npos);
        if (identity_count != fact.naive_boundary)
            fail("boundary-positions", n.slot,
                 "positioned " + std::to_string(identity_count) + " boundary vertices, expected " +
                     std::to_string(fact.naive_boundary));

        // predicate agreement (flips are materialized, leaves keep their bit
        // which the predicates consult)
        if (a_.has_left_boundary(n) != (fact.left != detail::npos) ||
            a_.has_middle_boundary(n) != (fact.mid != detail::npos) ||
            a_.has_right_boundary(n) != (fact.right != detail::npos))
            fail("boundary-predicates", n.slot,
                 "has_left/middle/right disagree with recomputed positions");
    }

    void check_ledger() {
        for (std::uint32_t ns = 0; ns < a_.node_slots(); ++ns) {
            if (!a_.node_live(ns))
                continue;
            NodeId n = a_.node_at(ns);
            if (ns < facts_.size() && facts_[ns].fresh_leaf_count != 0 &&
                facts_[ns].fresh_leaf_count != a_.leaf_count(n))
                fail("leaf-count", ns,
                     "stored s=" + std::to_string(a_.leaf_count(n)) + " recomputed s=" +
                         std::to_string(facts_[ns].fresh_leaf_count));
        }
        if (a_.ledger_enabled()) {
            double inc = a_.potential();
            double scratch = a_.potential_recomputed();
            double tol = 1e-9 * std::max({1.0, std::abs(inc), std::abs(scratch)});
            if (std::abs(inc - scratch) > tol)
                fail("potential-ledger", detail::npos,
                     "incremental Phi=" + std::to_string(inc) + " recomputed Phi=" +
                         std::to_string(scratch));
        }
    }

    ForestStore& f_;
    NodeArena& a_;
    ValidationReport& rep_;
    std::vector<NodeFacts> facts_;
    bool structure_broken_ = false;
};

} // namespace

ValidationReport validate_structure_inplace(ForestStore& f, NodeArena& a) {
    ValidationReport rep;
    Validator(f, a, rep).run();
    return rep;
}

ValidationReport validate_structure(const ForestStore& f, const NodeArena& a) {
    ForestStore fc = f;
    NodeArena ac = a;
    ac.rebind(&fc, nullptr);
    return validate_structure_inplace(fc, ac);
}

std::string serialize_structure(const ForestStore& f, const NodeArena& a) {
    std::ostringstream os;
    os.precision(17);
    os << "forest\n";
    for (std::uint32_t vs = 0; vs < f.vertex_slots(); ++vs) {
        if (!f.vertex_live(vs))
            continue;
        os << "v " << vs << (f.is_exposed(f.vertex_at(vs)) ? " exposed" : "") << "\n";
    }
    for (std::uint32_t es = 0; es < f.edge_slots(); ++es) {
        if (!f.edge_live(es))
            continue;
        EdgeId e = f.edge_at(es);
        auto [u, v] = f.endpoints(e);
        os << "e " << es << " " << u.slot << " " << v.slot << " " << f.weight(e) << "\n";
    }
    os << "nodes\n";
    for (std::uint32_t ns = 0; ns < a.node_slots(); ++ns) {
        if (!a.node_live(ns))
            continue;
        NodeId n = a.node_at(ns);
        os << "n " << ns << " p=";
        if (a.is_root(n))
            os << "-";
        else
            os << a.parent(n).slot;
        if (a.is_leaf(n))
            os << " leaf e" << a.edge_of_leaf(n).slot;
        else
            os << " int " << a.child(n, 0).slot << "," << a.child(n, 1).slot;
        os << " flip=" << int(a.flip(n)) << " nb=" << a.num_boundary(n)
           << " s=" << a.leaf_count(n) << " sv=" << int(a.summary_valid(n)) << "\n";
    }
    return os.str();
}

} // namespace toptree
