#pragma once

#include <cstdint>
#include <string>

#include "toptree/dynops.hpp"

namespace toptree::cli {

struct MstParams {
    std::uint64_t seed = 1;
    std::uint32_t vertices = 64;
    std::uint64_t edges = 256;
    ExposeStrategy strategy = ExposeStrategy::FullSplay;
};

struct MstResult {
    double toptree_total = 0.0;
    double kruskal_total = 0.0;
    std::uint64_t links = 0;
    std::uint64_t swaps = 0;
    std::uint64_t rejected = 0;
    bool equal() const { return toptree_total == kruskal_total; }
    std::string summary() const;
};

// Streams random weighted edges (distinct integer-valued weights): an edge
// joining two components is linked; otherwise the current tree path between
// its endpoints is inspected and the heaviest edge is swapped out when the
// new edge is lighter. The final total is compared against Kruskal on the
// full edge list.
MstResult mst_demo(const MstParams& params);

} // namespace toptree::cli
