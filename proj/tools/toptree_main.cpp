#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "toptree/cli/bench.hpp"
#include "toptree/cli/fuzzer.hpp"
#include "toptree/cli/mst.hpp"
#include "toptree/cli/script.hpp"

using namespace toptree;

namespace {

ExposeStrategy parse_strategy(const std::string& s) {
    if (s == "full")
        return ExposeStrategy::FullSplay;
    if (s == "semi")
        return ExposeStrategy::SemiSplayOnly;
    throw CLI::ValidationError("strategy must be 'full' or 'semi'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"splay-based top trees over a dynamic forest"};
    app.require_subcommand(1);

    // run ---------------------------------------------------------------
    std::string script_path;
    std::string run_strategy = "full";
    bool run_checks = false;
    auto* run = app.add_subcommand("run", "execute an operation script against the oracle");
    run->add_option("file", script_path, "script file")->required();
    run->add_option("--strategy", run_strategy, "expose strategy: full|semi");
    run->add_flag("--paranoid", run_checks, "enable per-rotation and bound checks");

    // fuzz --------------------------------------------------------------
    cli::FuzzParams fp;
    std::string fuzz_strategy = "full";
    std::string fail_out = "fuzz_failure.txt";
    auto* fz = app.add_subcommand("fuzz", "random valid workload cross-checked per query");
    fz->add_option("--seed", fp.seed, "rng seed")->capture_default_str();
    fz->add_option("--vertices", fp.vertices, "number of vertices")->capture_default_str();
    fz->add_option("--ops", fp.ops, "operations to run")->capture_default_str();
    fz->add_option("--validate-every", fp.validate_every, "validator cadence (0 = end only)")
        ->capture_default_str();
    fz->add_option("--strategy", fuzz_strategy, "expose strategy: full|semi");
    fz->add_option("--fail-script", fail_out, "where to write a minimized failing script");

    // mst ---------------------------------------------------------------
    cli::MstParams mp;
    std::string mst_strategy = "full";
    auto* mst = app.add_subcommand("mst", "incremental MST vs Kruskal on a random graph");
    mst->add_option("--seed", mp.seed, "rng seed")->capture_default_str();
    mst->add_option("--vertices", mp.vertices, "number of vertices")->capture_default_str();
    mst->add_option("--edges", mp.edges, "number of streamed edges")->capture_default_str();
    mst->add_option("--strategy", mst_strategy, "expose strategy: full|semi");

    // bench -------------------------------------------------------------
    cli::BenchParams bp;
    std::string bench_sizes = "64,128,256,512,1024,2048,4096";
    std::string bench_strategy = "full";
    std::string samples_path;
    auto* bch = app.add_subcommand("bench", "structural work per op with bound assertions");
    bch->add_option("--sizes", bench_sizes, "comma-separated vertex counts")
        ->capture_default_str();
    bch->add_option("--ops", bp.ops, "operations per size")->capture_default_str();
    bch->add_option("--seed", bp.seed, "rng seed")->capture_default_str();
    bch->add_option("--strategy", bench_strategy, "expose strategy: full|semi");
    bch->add_option("--samples", samples_path, "write raw rows to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage and parse problems exit 2
    }

    try {
        if (*run) {
            cli::RunOptions opts;
            opts.strategy = parse_strategy(run_strategy);
            opts.check_bounds = run_checks;
            opts.check_rotations = run_checks;
            return cli::run_script_file(script_path, opts, std::cout, std::cerr);
        }

        if (*fz) {
            fp.strategy = parse_strategy(fuzz_strategy);
            cli::FuzzReport rep = cli::fuzz(fp);
            std::cout << rep.text;
            if (!rep.ok()) {
                if (!rep.failing_script.empty()) {
                    std::ofstream out(fail_out);
                    out << rep.failing_script;
                    std::cout << "minimized failing script written to " << fail_out << "\n";
                }
                return 1;
            }
            return 0;
        }

        if (*mst) {
            mp.strategy = parse_strategy(mst_strategy);
            cli::MstResult res = cli::mst_demo(mp);
            std::cout << res.summary() << "\n";
            return res.equal() ? 0 : 1;
        }

        if (*bch) {
            bp.strategy = parse_strategy(bench_strategy);
            bp.sizes.clear();
            std::stringstream ss(bench_sizes);
            for (std::string tok; std::getline(ss, tok, ',');)
                bp.sizes.push_back(std::uint32_t(std::stoul(tok)));
            cli::BenchResult res = cli::bench(bp);
            std::cout << res.table();
            std::cout << "slope_ratio=" << res.slope_ratio() << "\n";
            if (!samples_path.empty()) {
                std::ofstream out(samples_path);
                out << res.table();
            }
            if (res.bound_failures) {
                std::cerr << "bound violations: " << res.bound_failures << " first at "
                          << res.first_failure << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
