#include "toptree/cli/script.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "toptree/oracle.hpp"
#include "toptree/top_tree.hpp"

namespace toptree::cli {

std::string format_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", w);
    return buf;
}

// ---------------------------------------------------------------------------
// Parsing / printing

OpScript OpScript::parse(const std::string& text) {
    OpScript script;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word))
            continue;

        auto want_u32 = [&](std::uint32_t& out) {
            long long tmp;
            if (!(ls >> tmp) || tmp < 0 || tmp > 0xfffffffell)
                throw ParseError{lineno, "expected a vertex index"};
            out = std::uint32_t(tmp);
        };
        auto want_double = [&](double& out) {
            if (!(ls >> out))
                throw ParseError{lineno, "expected a weight"};
        };
        auto done = [&] {
            std::string extra;
            if (ls >> extra)
                throw ParseError{lineno, "trailing tokens after command"};
        };

        Command cmd{};
        if (word == "addv") {
            cmd.kind = Command::Kind::AddV;
        } else if (word == "link") {
            cmd.kind = Command::Kind::Link;
            want_u32(cmd.u);
            want_u32(cmd.v);
            want_double(cmd.w);
        } else if (word == "cut") {
            cmd.kind = Command::Kind::Cut;
            want_u32(cmd.u);
            want_u32(cmd.v);
        } else if (word == "expose") {
            cmd.kind = Command::Kind::Expose;
            want_u32(cmd.v);
        } else if (word == "deexpose") {
            cmd.kind = Command::Kind::Deexpose;
            want_u32(cmd.v);
        } else if (word == "connected") {
            cmd.kind = Command::Kind::Connected;
            want_u32(cmd.u);
            want_u32(cmd.v);
        } else if (word == "pathmax") {
            cmd.kind = Command::Kind::PathMax;
            want_u32(cmd.u);
            want_u32(cmd.v);
        } else if (word == "validate") {
            cmd.kind = Command::Kind::Validate;
        } else {
            throw ParseError{lineno, "unknown command '" + word + "'"};
        }
        done();
        script.commands.push_back(cmd);
    }
    return script;
}

std::string OpScript::print() const {
    std::ostringstream os;
    for (const Command& c : commands) {
        switch (c.kind) {
        case Command::Kind::AddV:
            os << "addv";
            break;
        case Command::Kind::Link: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", c.w);
            os << "link " << c.u << " " << c.v << " " << buf;
            break;
        }
        case Command::Kind::Cut:
            os << "cut " << c.u << " " << c.v;
            break;
        case Command::Kind::Expose:
            os << "expose " << c.v;
            break;
        case Command::Kind::Deexpose:
            os << "deexpose " << c.v;
            break;
        case Command::Kind::Connected:
            os << "connected " << c.u << " " << c.v;
            break;
        case Command::Kind::PathMax:
            os << "pathmax " << c.u << " " << c.v;
            break;
        case Command::Kind::Validate:
            os << "validate";
            break;
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Runner

namespace {

class Runner {
public:
    Runner(const RunOptions& opts) {
        typename TopTree<PathMax>::Config cfg;
        cfg.strategy = opts.strategy;
        cfg.check_bounds = opts.check_bounds;
        cfg.check_rotations = opts.check_rotations;
        tree_ = std::make_unique<TopTree<PathMax>>(cfg);
    }

    RunResult run(const OpScript& script) {
        for (const Command& c : script.commands)
            step(c);
        const Diagnostics& d = tree_->diag();
        result_.bound_failures = d.depth_bound_failures + d.potential_bound_failures +
                                 d.pattern_soundness_failures;
        result_.output = out_.str();
        if (result_.mismatches || result_.op_errors || result_.validator_violations ||
            result_.bound_failures)
            result_.exit_code = 1;
        return std::move(result_);
    }

private:
    void mismatch(const std::string& what) {
        out_ << "mismatch: " << what << "\n";
        result_.mismatches++;
    }
    void op_error(const std::string& what) {
        out_ << "error: " << what << "\n";
        result_.op_errors++;
    }
    bool in_range(std::uint32_t v) const { return v < vmap_.size(); }

    // Runs `action` (the top-tree side of a command) and cross-checks its
    // accept/reject verdict against the mirror's precondition check.
    template <class Fn>
    void mirrored(bool naive_ok, const std::string& label, Fn action) {
        bool tree_ok = true;
        std::string tree_err;
        try {
            action();
        } catch (const Error& e) {
            tree_ok = false;
            tree_err = e.what();
        }
        if (tree_ok != naive_ok) {
            mismatch("verdicts differ for '" + label + "': tree " +
                     (tree_ok ? "accepted" : std::string("rejected (") + tree_err + ")") +
                     ", oracle says " + (naive_ok ? "valid" : "invalid"));
        } else if (!tree_ok) {
            op_error(label + ": " + tree_err);
        }
    }

    void step(const Command& c) {
        switch (c.kind) {
        case Command::Kind::AddV: {
            vmap_.push_back(tree_->add_vertex());
            naive_.add_vertex();
            break;
        }
        case Command::Kind::Link: {
            std::string label = "link " + std::to_string(c.u) + " " + std::to_string(c.v) +
                                " " + format_weight(c.w);
            if (!in_range(c.u) || !in_range(c.v)) {
                op_error(label + ": vertex out of range");
                break;
            }
            bool naive_ok = c.u != c.v && !naive_.connected(c.u, c.v) &&
                            naive_.exposed_count_in_tree(c.u) == 0 &&
                            naive_.exposed_count_in_tree(c.v) == 0;
            mirrored(naive_ok, label, [&] { tree_->link(vmap_[c.u], vmap_[c.v], c.w); });
            if (naive_ok)
                naive_.add_edge(c.u, c.v, c.w);
            break;
        }
        case Command::Kind::Cut: {
            std::string label = "cut " + std::to_string(c.u) + " " + std::to_string(c.v);
            if (!in_range(c.u) || !in_range(c.v)) {
                op_error(label + ": vertex out of range");
                break;
            }
            bool naive_ok = naive_.has_edge(c.u, c.v) &&
                            naive_.exposed_count_in_tree(c.u) == 0;
            mirrored(naive_ok, label, [&] {
                auto e = tree_->edge_between(vmap_[c.u], vmap_[c.v]);
                if (!e)
                    throw Error("no such edge");
                tree_->cut(*e);
            });
            if (naive_ok)
                naive_.remove_edge(c.u, c.v);
            break;
        }
        case Command::Kind::Expose: {
            std::string label = "expose " + std::to_string(c.v);
            if (!in_range(c.v)) {
                op_error(label + ": vertex out of range");
                break;
            }
            bool naive_ok = !naive_.exposed(c.v) && naive_.exposed_count_in_tree(c.v) <= 1;
            mirrored(naive_ok, label, [&] { tree_->expose(vmap_[c.v]); });
            if (naive_ok)
                naive_.set_exposed(c.v, true);
            break;
        }
        case Command::Kind::Deexpose: {
            std::string label = "deexpose " + std::to_string(c.v);
            if (!in_range(c.v)) {
                op_error(label + ": vertex out of range");
                break;
            }
            bool naive_ok = naive_.exposed(c.v);
            mirrored(naive_ok, label, [&] { tree_->deexpose(vmap_[c.v]); });
            if (naive_ok)
                naive_.set_exposed(c.v, false);
            break;
        }
        case Command::Kind::Connected: {
            if (!in_range(c.u) || !in_range(c.v)) {
                op_error("connected: vertex out of range");
                break;
            }
            bool tt = tree_->connected(vmap_[c.u], vmap_[c.v]);
            bool nv = naive_.connected(c.u, c.v);
            out_ << "connected " << c.u << " " << c.v << " " << (tt ? "true" : "false")
                 << "\n";
            if (tt != nv)
                mismatch("connected " + std::to_string(c.u) + " " + std::to_string(c.v) +
                         ": tree says " + (tt ? "true" : "false"));
            break;
        }
        case Command::Kind::PathMax:
            path_max(c);
            break;
        case Command::Kind::Validate: {
            ValidationReport rep = tree_->validate();
            if (rep.ok() && mirror_consistent())
                out_ << "ok\n";
            else {
                out_ << rep.to_string();
                result_.validator_violations += rep.violations.size();
            }
            break;
        }
        }
    }

    void path_max(const Command& c) {
        std::string label = "pathmax " + std::to_string(c.u) + " " + std::to_string(c.v);
        if (!in_range(c.u) || !in_range(c.v)) {
            op_error(label + ": vertex out of range");
            return;
        }
        if (c.u == c.v) {
            op_error(label + ": endpoints must differ");
            return;
        }
        bool nv_conn = naive_.connected(c.u, c.v);
        bool tt_conn = tree_->connected(vmap_[c.u], vmap_[c.v]);
        if (nv_conn != tt_conn)
            mismatch(label + ": connectivity disagrees");
        if (!tt_conn) {
            out_ << label << " disconnected\n";
            return;
        }
        // the tree's exposed set must already be a subset of {u, v}
        bool exposable = true;
        for (std::uint32_t x = 0; x < vmap_.size(); ++x)
            if (naive_.exposed(x) && naive_.connected(x, c.u) && x != c.u && x != c.v)
                exposable = false;
        if (!exposable) {
            op_error(label + ": tree has other exposed vertices");
            return;
        }
        try {
            bool did_u = false, did_v = false;
            if (!naive_.exposed(c.u)) {
                tree_->expose(vmap_[c.u]);
                did_u = true;
            }
            if (!naive_.exposed(c.v)) {
                tree_->expose(vmap_[c.v]);
                did_v = true;
            }
            NodeId root = *tree_->tree_root(vmap_[c.u]);
            double got = query_path_max(*tree_, root);
            if (did_v)
                tree_->deexpose(vmap_[c.v]);
            if (did_u)
                tree_->deexpose(vmap_[c.u]);
            out_ << label << " " << format_weight(got) << "\n";
            auto expect = naive_.path_max(c.u, c.v);
            if (!expect || *expect != got)
                mismatch(label + ": tree says " + format_weight(got) + ", oracle says " +
                         (expect ? format_weight(*expect) : std::string("disconnected")));
        } catch (const Error& e) {
            mismatch(label + ": unexpected error: " + e.what());
        }
    }

    // full diff between the naive mirror and the forest store
    bool mirror_consistent() {
        const ForestStore& f = tree_->forest();
        bool ok = true;
        std::size_t live_edges = 0;
        for (std::uint32_t es = 0; es < f.edge_slots(); ++es) {
            if (!f.edge_live(es))
                continue;
            ++live_edges;
            auto [u, v] = f.endpoints(f.edge_at(es));
            if (!naive_.has_edge(u.slot, v.slot)) {
                mismatch("forest edge " + std::to_string(u.slot) + "-" +
                         std::to_string(v.slot) + " missing from oracle");
                ok = false;
            }
        }
        if (live_edges != naive_.edges().size()) {
            mismatch("edge counts differ between forest and oracle");
            ok = false;
        }
        for (std::uint32_t x = 0; x < vmap_.size(); ++x) {
            if (naive_.exposed(x) != tree_->forest().is_exposed(vmap_[x])) {
                mismatch("exposed flag differs for vertex " + std::to_string(x));
                ok = false;
            }
        }
        return ok;
    }

    std::unique_ptr<TopTree<PathMax>> tree_;
    NaiveForest naive_;
    std::vector<VertexId> vmap_;
    std::ostringstream out_;
    RunResult result_;
};

} // namespace

RunResult run_script(const OpScript& script, const RunOptions& opts) {
    return Runner(opts).run(script);
}

int run_script_file(const std::string& path, const RunOptions& opts, std::ostream& out,
                    std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "cannot open " << path << "\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    OpScript script;
    try {
        script = OpScript::parse(buffer.str());
    } catch (const ParseError& e) {
        err << path << ":" << e.line << ": " << e.message << "\n";
        return 2;
    }
    RunResult res = run_script(script, opts);
    out << res.output;
    return res.exit_code;
}

} // namespace toptree::cli
