#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "toptree/dynops.hpp"

namespace toptree::cli {

// Line-oriented operation scripts. One command per line, `#` starts a
// comment, vertices are dense indices in creation order:
//   addv | link u v w | cut u v | expose v | deexpose v
//   | connected u v | pathmax u v | validate
struct Command {
    enum class Kind { AddV, Link, Cut, Expose, Deexpose, Connected, PathMax, Validate };
    Kind kind;
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double w = 0.0;
};

struct ParseError {
    int line;
    std::string message;
};

struct OpScript {
    std::vector<Command> commands;

    static OpScript parse(const std::string& text); // throws ParseError
    std::string print() const;                      // canonical form; parse(print()) == *this
};

struct RunOptions {
    ExposeStrategy strategy = ExposeStrategy::FullSplay;
    bool check_bounds = false;
    bool check_rotations = false;
};

struct RunResult {
    int exit_code = 0; // 0 ok, 1 semantic failure (mismatch/violation/op error)
    std::string output;
    std::uint64_t mismatches = 0;
    std::uint64_t op_errors = 0;
    std::uint64_t validator_violations = 0;
    std::uint64_t bound_failures = 0; // depth/potential/pattern checks, when enabled
};

// Executes the script against both the top tree and the brute-force mirror,
// cross-checking every query and precondition verdict.
RunResult run_script(const OpScript& script, const RunOptions& opts = {});

// Reads the file, parses and runs. Parse errors print to `err` and yield 2.
int run_script_file(const std::string& path, const RunOptions& opts, std::ostream& out,
                    std::ostream& err);

std::string format_weight(double w); // 6 significant digits

} // namespace toptree::cli
