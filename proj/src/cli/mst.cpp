#include "toptree/cli/mst.hpp"

#include <sstream>
#include <unordered_set>
#include <vector>

#include "toptree/cli/rng.hpp"
#include "toptree/oracle.hpp"
#include "toptree/top_tree.hpp"

namespace toptree::cli {

std::string MstResult::summary() const {
    std::ostringstream os;
    os.precision(17);
    os << "toptree_total=" << toptree_total << " kruskal_total=" << kruskal_total
       << " links=" << links << " swaps=" << swaps << " rejected=" << rejected << " "
       << (equal() ? "EQUAL" : "DIFFER");
    return os.str();
}

MstResult mst_demo(const MstParams& p) {
    Rng rng(p.seed);
    typename TopTree<PathMax>::Config cfg;
    cfg.strategy = p.strategy;
    TopTree<PathMax> tree(cfg);
    std::vector<VertexId> verts;
    verts.reserve(p.vertices);
    for (std::uint32_t i = 0; i < p.vertices; ++i)
        verts.push_back(tree.add_vertex());

    // distinct integer-valued weights keep both totals exact in doubles
    std::unordered_set<std::uint64_t> used;
    auto fresh_weight = [&] {
        for (;;) {
            std::uint64_t w = 1 + (rng.next() & ((1ull << 40) - 1));
            if (used.insert(w).second)
                return double(w);
        }
    };

    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> all_edges;
    MstResult res;

    for (std::uint64_t i = 0; i < p.edges; ++i) {
        std::uint32_t u = std::uint32_t(rng.below(p.vertices));
        std::uint32_t v = std::uint32_t(rng.below(p.vertices));
        if (u == v) {
            // self-loops can never enter a spanning forest; record for
            // Kruskal anyway, which skips them the same way
            double w = fresh_weight();
            all_edges.push_back({u, u, w});
            res.rejected++;
            continue;
        }
        double w = fresh_weight();
        all_edges.push_back({u, v, w});

        if (!tree.connected(verts[u], verts[v])) {
            tree.link(verts[u], verts[v], w);
            res.toptree_total += w;
            res.links++;
            continue;
        }
        tree.expose(verts[u]);
        NodeId root = *tree.expose(verts[v]);
        PathMax::Value best = tree.summary(root);
        tree.deexpose(verts[u]);
        tree.deexpose(verts[v]);
        if (w < best.max_weight) {
            tree.cut(best.max_edge);
            tree.link(verts[u], verts[v], w);
            res.toptree_total += w - best.max_weight;
            res.swaps++;
        } else {
            res.rejected++;
        }
    }

    res.kruskal_total = kruskal(all_edges);
    return res;
}

} // namespace toptree::cli
