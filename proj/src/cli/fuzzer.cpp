#include "toptree/cli/fuzzer.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "toptree/cli/rng.hpp"
#include "toptree/oracle.hpp"
#include "toptree/top_tree.hpp"

namespace toptree::cli {

namespace {

// The generator consults only the oracle mirror and the RNG, never the top
// tree, so matched seeds produce identical command streams under either
// expose strategy.
class Fuzzer {
public:
    explicit Fuzzer(const FuzzParams& p) : p_(p), rng_(p.seed) {
        typename TopTree<PathMax>::Config cfg;
        cfg.strategy = p.strategy;
        cfg.check_bounds = p.check_bounds;
        cfg.check_rotations = p.check_rotations;
        tree_ = std::make_unique<TopTree<PathMax>>(cfg);
    }

    FuzzReport run() {
        for (std::uint32_t i = 0; i < p_.vertices; ++i) {
            vmap_.push_back(tree_->add_vertex());
            naive_.add_vertex();
            transcript_.commands.push_back({Command::Kind::AddV, 0, 0, 0.0});
        }
        for (std::uint64_t op = 0; op < p_.ops; ++op) {
            step();
            ++report_.ops_executed;
            if (p_.validate_every && (op + 1) % p_.validate_every == 0)
                run_validate();
        }
        run_validate();
        finish();
        return std::move(report_);
    }

private:
    void note_mismatch(const std::string& what) {
        report_.mismatches++;
        if (first_failure_.empty())
            first_failure_ = what;
    }

    void run_validate() {
        transcript_.commands.push_back({Command::Kind::Validate, 0, 0, 0.0});
        ValidationReport rep = tree_->validate();
        if (!rep.ok()) {
            report_.validator_violations += rep.violations.size();
            if (first_failure_.empty())
                first_failure_ = rep.violations.front().invariant + ": " +
                                 rep.violations.front().detail;
        }
    }

    std::uint32_t rand_vertex() { return std::uint32_t(rng_.below(p_.vertices)); }

    std::vector<std::uint32_t> exposed_vertices() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t v = 0; v < p_.vertices; ++v)
            if (naive_.exposed(v))
                out.push_back(v);
        return out;
    }

    void step() {
        std::uint64_t r = rng_.below(100);
        bool done = false;
        if (r < 24)
            done = try_link();
        else if (r < 42)
            done = try_cut();
        else if (r < 54)
            done = try_expose();
        else if (r < 66)
            done = try_deexpose();
        else if (r < 82)
            done = do_connected();
        else
            done = try_pathmax();
        if (!done && !try_link() && !try_cut())
            do_connected();
    }

    bool try_link() {
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::uint32_t u = rand_vertex();
            std::uint32_t v = rand_vertex();
            if (u == v || naive_.connected(u, v))
                continue;
            if (naive_.exposed_count_in_tree(u) != 0 || naive_.exposed_count_in_tree(v) != 0)
                continue;
            double w = double(1 + rng_.below(1u << 30));
            transcript_.commands.push_back({Command::Kind::Link, u, v, w});
            try {
                tree_->link(vmap_[u], vmap_[v], w);
            } catch (const Error& e) {
                note_mismatch("link rejected a valid operation: " + std::string(e.what()));
            }
            naive_.add_edge(u, v, w);
            return true;
        }
        return false;
    }

    bool try_cut() {
        auto edges = naive_.edges();
        if (edges.empty())
            return false;
        for (int attempt = 0; attempt < 8; ++attempt) {
            auto [u, v, w] = edges[rng_.below(edges.size())];
            if (naive_.exposed_count_in_tree(u) != 0)
                continue;
            transcript_.commands.push_back({Command::Kind::Cut, u, v, 0.0});
            try {
                auto e = tree_->edge_between(vmap_[u], vmap_[v]);
                if (!e)
                    throw Error("edge missing from forest");
                tree_->cut(*e);
            } catch (const Error& e) {
                note_mismatch("cut rejected a valid operation: " + std::string(e.what()));
            }
            naive_.remove_edge(u, v);
            return true;
        }
        return false;
    }

    bool try_expose() {
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::uint32_t v = rand_vertex();
            if (naive_.exposed(v) || naive_.exposed_count_in_tree(v) > 1)
                continue;
            transcript_.commands.push_back({Command::Kind::Expose, 0, v, 0.0});
            do_expose(v);
            naive_.set_exposed(v, true);
            return true;
        }
        return false;
    }

    void do_expose(std::uint32_t v) {
        auto before = tree_->diag().rotations;
        try {
            tree_->expose(vmap_[v]);
        } catch (const Error& e) {
            note_mismatch("expose rejected a valid operation: " + std::string(e.what()));
        }
        report_.expose_rotation_counts.push_back(tree_->diag().rotations - before);
    }

    bool try_deexpose() {
        auto exposed = exposed_vertices();
        if (exposed.empty())
            return false;
        std::uint32_t v = exposed[rng_.below(exposed.size())];
        transcript_.commands.push_back({Command::Kind::Deexpose, 0, v, 0.0});
        try {
            tree_->deexpose(vmap_[v]);
        } catch (const Error& e) {
            note_mismatch("deexpose rejected a valid operation: " + std::string(e.what()));
        }
        naive_.set_exposed(v, false);
        return true;
    }

    bool do_connected() {
        std::uint32_t u = rand_vertex();
        std::uint32_t v = rand_vertex();
        transcript_.commands.push_back({Command::Kind::Connected, u, v, 0.0});
        bool tt = tree_->connected(vmap_[u], vmap_[v]);
        bool nv = naive_.connected(u, v);
        if (tt != nv)
            note_mismatch("connected " + std::to_string(u) + " " + std::to_string(v) +
                          ": tree=" + (tt ? "true" : "false"));
        return true;
    }

    bool try_pathmax() {
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::uint32_t u = rand_vertex();
            if (naive_.degree(u) == 0)
                continue;
            // random other vertex of u's component
            std::vector<std::uint32_t> comp;
            for (std::uint32_t x = 0; x < p_.vertices; ++x)
                if (x != u && naive_.connected(u, x))
                    comp.push_back(x);
            if (comp.empty())
                continue;
            std::uint32_t v = comp[rng_.below(comp.size())];
            bool exposable = true;
            for (std::uint32_t x : exposed_vertices())
                if (x != u && x != v && naive_.connected(x, u))
                    exposable = false;
            if (!exposable)
                continue;
            transcript_.commands.push_back({Command::Kind::PathMax, u, v, 0.0});
            do_pathmax(u, v);
            return true;
        }
        return false;
    }

    void do_pathmax(std::uint32_t u, std::uint32_t v) {
        try {
            bool did_u = !naive_.exposed(u);
            bool did_v = !naive_.exposed(v);
            if (did_u)
                do_expose(u);
            if (did_v)
                do_expose(v);
            NodeId root = *tree_->tree_root(vmap_[u]);
            double got = query_path_max(*tree_, root);
            if (did_v)
                tree_->deexpose(vmap_[v]);
            if (did_u)
                tree_->deexpose(vmap_[u]);
            auto expect = naive_.path_max(u, v);
            if (!expect || *expect != got)
                note_mismatch("pathmax " + std::to_string(u) + " " + std::to_string(v) +
                              ": tree=" + format_weight(got) + " oracle=" +
                              (expect ? format_weight(*expect) : std::string("disconnected")));
        } catch (const Error& e) {
            note_mismatch("pathmax raised: " + std::string(e.what()));
        }
    }

    void finish() {
        if (p_.keep_transcript)
            report_.transcript = transcript_.print();
        report_.diagnostics = tree_->diag();
        report_.max_depth_after_full_splay = tree_->diag().max_depth_after_full_splay;
        report_.mismatches += tree_->diag().depth_bound_failures +
                              tree_->diag().potential_bound_failures +
                              tree_->diag().pattern_soundness_failures;
        if (!report_.ok())
            report_.failing_script = minimize();

        std::ostringstream os;
        os << "fuzz seed=" << p_.seed << " vertices=" << p_.vertices << " ops="
           << report_.ops_executed << " strategy="
           << (p_.strategy == ExposeStrategy::FullSplay ? "full" : "semi") << "\n"
           << "mismatches=" << report_.mismatches << " validator_violations="
           << report_.validator_violations << "\n"
           << "rotations=" << report_.diagnostics.rotations << " nodes_visited="
           << report_.diagnostics.nodes_visited << " summary_rebuilds="
           << report_.diagnostics.summary_rebuilds << "\n"
           << "max_depth_after_full_splay=" << report_.max_depth_after_full_splay << "\n";
        if (!first_failure_.empty())
            os << "first_failure: " << first_failure_ << "\n";
        report_.text = os.str();
    }

    // Shrinks the transcript to a small script that still fails: first the
    // shortest failing prefix (binary search), then a greedy chunked deletion
    // pass.
    std::string minimize() {
        RunOptions opts;
        opts.strategy = p_.strategy;
        opts.check_bounds = p_.check_bounds;
        opts.check_rotations = p_.check_rotations;
        auto fails = [&](const std::vector<Command>& cmds) {
            OpScript s;
            s.commands = cmds;
            s.commands.push_back({Command::Kind::Validate, 0, 0, 0.0});
            RunResult r = run_script(s, opts);
            return r.mismatches > 0 || r.validator_violations > 0 || r.bound_failures > 0;
        };

        std::vector<Command> cur = transcript_.commands;
        if (!fails(cur)) // failure not reproducible through the runner
            return transcript_.print();

        std::size_t lo = 0, hi = cur.size(); // smallest failing prefix length
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            std::vector<Command> prefix(cur.begin(), cur.begin() + mid);
            if (fails(prefix))
                hi = mid;
            else
                lo = mid + 1;
        }
        cur.resize(lo);

        for (std::size_t chunk = std::max<std::size_t>(1, cur.size() / 2); chunk >= 1;
             chunk /= 2) {
            bool removed_any = true;
            while (removed_any) {
                removed_any = false;
                for (std::size_t start = 0; start + chunk <= cur.size();) {
                    std::vector<Command> candidate;
                    candidate.reserve(cur.size() - chunk);
                    candidate.insert(candidate.end(), cur.begin(), cur.begin() + start);
                    candidate.insert(candidate.end(), cur.begin() + start + chunk, cur.end());
                    if (fails(candidate)) {
                        cur = std::move(candidate);
                        removed_any = true;
                    } else {
                        start += chunk;
                    }
                }
            }
            if (chunk == 1)
                break;
        }
        OpScript out;
        out.commands = cur;
        out.commands.push_back({Command::Kind::Validate, 0, 0, 0.0});
        return out.print();
    }

    FuzzParams p_;
    Rng rng_;
    std::unique_ptr<TopTree<PathMax>> tree_;
    NaiveForest naive_;
    std::vector<VertexId> vmap_;
    OpScript transcript_;
    FuzzReport report_;
    std::string first_failure_;
};

} // namespace

FuzzReport fuzz(const FuzzParams& params) { return Fuzzer(params).run(); }

} // namespace toptree::cli
