#pragma once

#include <cstdint>
#include <string>

#include "toptree/cli/script.hpp"
#include "toptree/topnodes.hpp"

namespace toptree::cli {

struct FuzzParams {
    std::uint64_t seed = 1;
    std::uint32_t vertices = 16;
    std::uint64_t ops = 1000;
    std::uint64_t validate_every = 100;
    ExposeStrategy strategy = ExposeStrategy::FullSplay;
    bool check_bounds = true;
    bool check_rotations = true;
    bool keep_transcript = false; // fill FuzzReport::transcript even on success
};

struct FuzzReport {
    std::uint64_t ops_executed = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t validator_violations = 0;
    int max_depth_after_full_splay = 0;
    Diagnostics diagnostics;           // counters accumulated over the run
    std::string text;                  // deterministic given (seed, params)
    std::string transcript;            // executed commands (keep_transcript)
    std::string failing_script;        // minimized reproduction, when failing
    // rotation counts per public expose call, for strategy comparisons
    std::vector<std::uint64_t> expose_rotation_counts;

    bool ok() const { return mismatches == 0 && validator_violations == 0; }
};

// Runs a random valid operation mix against the oracle: links only across
// components, cuts only existing edges, exposes respecting the two-per-tree
// limit. Every query is cross-checked; validate() runs every validate_every
// ops and once at the end. On failure a minimized reproduction script is
// produced.
FuzzReport fuzz(const FuzzParams& params);

} // namespace toptree::cli
