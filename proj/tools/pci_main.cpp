#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pci/bench.hpp"
#include "pci/instances.hpp"
#include "pci/pipeline.hpp"
#include "pci/util.hpp"

#include <json.hpp>

namespace {

using namespace pci;
namespace fs = std::filesystem;

constexpr uint64_t kSeedStreamGenerate = 100;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// plan.json -> plan.report.json / plan.trace.csv
std::string sibling(const std::string& out, const std::string& suffix) {
    fs::path p(out);
    fs::path base = p.parent_path() / p.stem();
    return base.string() + suffix;
}

std::string numbered(const std::string& out, int index) {
    fs::path p(out);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "_%03d", index);
    fs::path base = p.parent_path() / (p.stem().string() + buf);
    return base.string() + p.extension().string();
}

void print_stats(const std::string& path, const InterferenceGraph& g) {
    const GraphStats st = compute_stats(g);
    std::printf("%s: n=%d |e1|=%zu |e2|=%zu density=%.4f max_clique=%d%s avg_degree=%.3f clustering=%.3f\n",
                path.c_str(), g.n, g.e1.size(), g.e2.size(), st.density, st.max_clique,
                st.max_clique_exact ? "" : "(approx)", st.avg_degree, st.clustering_coef);
}

void add_solver_flags(CLI::App* cmd, SolverConfig& cfg, int* threads) {
    cmd->add_option("--rho0", cfg.rho0, "initial penalty");
    cmd->add_option("--gamma", cfg.gamma, "penalty growth factor");
    cmd->add_option("--eps1", cfg.eps1, "inner-loop tolerance");
    cmd->add_option("--eps2", cfg.eps2, "outer-loop orthogonality tolerance");
    cmd->add_option("--max-inner", cfg.max_inner, "inner iteration cap");
    cmd->add_option("--max-outer", cfg.max_outer, "outer iteration cap");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    if (threads) cmd->add_option("--threads", *threads, "worker pool size (0 = auto)");
}

int cmd_generate(const std::string& kind, int n, double radius, double b, uint64_t seed,
                 int count, const std::string& out, const std::string& coords) {
    for (int i = 0; i < count; ++i) {
        const uint64_t inst_seed = count == 1 ? seed : derive_seed(seed, kSeedStreamGenerate, i);
        const std::string path = count == 1 ? out : numbered(out, i);
        if (kind == "rgg") {
            RggInstance inst = generate_rgg(RggConfig{n, radius, inst_seed});
            store_instance(inst.graph, path);
            if (!coords.empty())
                store_coordinates(inst, count == 1 ? coords : numbered(coords, i));
            print_stats(path, inst.graph);
        } else {
            InterferenceGraph g = generate_random_w(SyntheticWConfig{n, b, inst_seed});
            store_instance(g, path);
            print_stats(path, g);
        }
    }
    return 0;
}

int cmd_solve(const std::string& in, std::string out, std::string report_path,
              std::string trace_path, const std::string& result_path,
              const std::string& partial_path, const std::string& method,
              const SolverConfig& cfg, int threads) {
    const InterferenceGraph g = load_instance(in);
    PipelineOptions options;
    options.strategy = strategy_from_string(method);
    options.threads = threads;

    PipelineResult res;
    if (!partial_path.empty()) {
        const ChangeableSet cs = load_changeable(partial_path);
        res = assign_pci_partial(g, cs, cfg, options);
    } else {
        res = assign_pci(g, cfg, options);
    }

    if (report_path.empty()) report_path = sibling(out, ".report.json");
    if (trace_path.empty()) trace_path = sibling(out, ".trace.csv");
    store_plan(res.plan, out);
    write_text(report_path, res.report.to_json() + "\n");
    write_text(trace_path, res.traces_csv());
    if (!result_path.empty()) write_text(result_path, res.to_json() + "\n");

    std::printf("plan=%s report=%s trace=%s collisions=%lld confusions=%lld mod3=%s mod30=%s\n",
                out.c_str(), report_path.c_str(), trace_path.c_str(),
                static_cast<long long>(res.report.collisions),
                static_cast<long long>(res.report.confusions),
                format_double(res.report.mod3_interference).c_str(),
                format_double(res.report.mod30_interference).c_str());
    if (res.solver_capped) {
        log(LogLevel::Warn, "solver hit an iteration cap; result may be improvable");
        return 2;
    }
    return 0;
}

int cmd_bench(const std::vector<std::string>& instances, const std::string& methods_arg,
              const std::string& out, const SolverConfig& cfg, int threads, bool no_timing) {
    BenchSpec spec;
    spec.instance_paths = instances;
    spec.config = cfg;
    spec.threads = threads;
    spec.timing = !no_timing;
    std::string token;
    for (char c : methods_arg + ",") {
        if (c == ',') {
            if (!token.empty()) spec.methods.push_back(strategy_from_string(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (spec.methods.empty()) throw std::invalid_argument("bench: no methods given");
    write_text(out, run_bench(spec));
    std::printf("wrote %s (%zu rows)\n", out.c_str(),
                spec.instance_paths.size() * spec.methods.size());
    return 0;
}

int cmd_partition(const std::string& in, int k, const std::string& method, std::string out,
                  std::string trace_path, const std::string& inner_trace_path,
                  const SolverConfig& cfg) {
    const InterferenceGraph g = load_instance(in);

    std::string inner_csv = "outer_iter,inner_iter,rho,t,F,kl\n";
    StepObserver observer;
    if (!inner_trace_path.empty()) {
        observer = [&inner_csv](const StepInfo& s) {
            inner_csv += std::to_string(s.outer_iter) + "," + std::to_string(s.inner_iter) + "," +
                         format_double(s.rho) + "," + format_double(s.step) + "," +
                         format_double(s.f_after) + "," + format_double(s.kl) + "\n";
        };
    }

    SolveResult res;
    if (method == "pmd") {
        res = solve_min_k_partition(g, k, cfg, observer);
    } else if (method == "pgp") {
        res = solve_pgp_variant(g, k, cfg, observer);
    } else {
        throw std::invalid_argument("partition: method must be pmd or pgp");
    }

    nlohmann::json doc;
    doc["k"] = k;
    doc["labels"] = res.labels;
    write_text(out, doc.dump(1) + "\n");
    if (trace_path.empty()) trace_path = sibling(out, ".trace.csv");
    write_text(trace_path, res.trace.to_csv());
    if (!inner_trace_path.empty()) write_text(inner_trace_path, inner_csv);

    std::printf("labels=%s trace=%s outer_iters=%zu\n", out.c_str(), trace_path.c_str(),
                res.trace.rows.size());
    if (res.capped()) {
        log(LogLevel::Warn, "solver hit an iteration cap; result may be improvable");
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PCI assignment: CRT-decomposed graph partitioning with penalized mirror descent"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "generate synthetic instances");
    generate->require_subcommand(1);
    int gen_n = 100, gen_count = 1;
    double gen_radius = 0.1, gen_b = 1.0;
    uint64_t gen_seed = 0;
    std::string gen_out, gen_coords;
    auto* rgg = generate->add_subcommand("rgg", "random geometric graph");
    rgg->add_option("--n", gen_n, "cell count");
    rgg->add_option("--radius", gen_radius, "connection radius");
    rgg->add_option("--seed", gen_seed, "RNG seed");
    rgg->add_option("--count", gen_count, "number of instances (distinct derived seeds)");
    rgg->add_option("--out", gen_out, "output instance path")->required();
    rgg->add_option("--coords", gen_coords, "optional coordinates sidecar path");
    auto* randw = generate->add_subcommand("randw", "dense random symmetric W");
    randw->add_option("--n", gen_n, "cell count");
    randw->add_option("--b", gen_b, "uniform upper bound");
    randw->add_option("--seed", gen_seed, "RNG seed");
    randw->add_option("--count", gen_count, "number of instances (distinct derived seeds)");
    randw->add_option("--out", gen_out, "output instance path")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "run the PCI assignment pipeline");
    std::string solve_in, solve_out = "plan.json", solve_report, solve_trace, solve_result;
    std::string solve_partial_file, solve_method = "gp-pmd";
    SolverConfig solve_cfg;
    int solve_threads = 1;
    solve->add_option("--in", solve_in, "instance file")->required();
    solve->add_option("--out", solve_out, "plan output path");
    solve->add_option("--report", solve_report, "report output path");
    solve->add_option("--trace", solve_trace, "stage trace CSV path");
    solve->add_option("--result", solve_result, "full result JSON path");
    solve->add_option("--partial", solve_partial_file, "changeable-set file (partial update)");
    solve->add_option("--method", solve_method, "gp-pmd | gp-pgp | gp-ls | ggc");
    add_solver_flags(solve, solve_cfg, &solve_threads);

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark methods over instances");
    std::vector<std::string> bench_in;
    std::string bench_methods = "gp-pmd,gp-pgp,gp-ls,ggc", bench_out = "bench.csv";
    SolverConfig bench_cfg;
    int bench_threads = 1;
    bool bench_no_timing = false;
    bench->add_option("--in", bench_in, "instance files")->required();
    bench->add_option("--methods", bench_methods, "comma-separated method list");
    bench->add_option("--out", bench_out, "output CSV path");
    bench->add_flag("--no-timing", bench_no_timing, "write 0 in the time column (byte-reproducible output)");
    add_solver_flags(bench, bench_cfg, &bench_threads);

    // partition
    auto* partition = app.add_subcommand("partition", "single Min-k-Partition solve");
    std::string part_in, part_out = "labels.json", part_trace, part_inner_trace,
                part_method = "pmd";
    int part_k = 3;
    SolverConfig part_cfg;
    partition->add_option("--in", part_in, "instance file")->required();
    partition->add_option("--k", part_k, "partition count")->required();
    partition->add_option("--method", part_method, "pmd | pgp");
    partition->add_option("--out", part_out, "labels output path");
    partition->add_option("--trace", part_trace, "outer trace CSV path");
    partition->add_option("--inner-trace", part_inner_trace,
                          "per-iteration trace CSV (convergence curves)");
    add_solver_flags(partition, part_cfg, nullptr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (rgg->parsed()) return cmd_generate("rgg", gen_n, gen_radius, gen_b, gen_seed,
                                               gen_count, gen_out, gen_coords);
        if (randw->parsed()) return cmd_generate("randw", gen_n, gen_radius, gen_b, gen_seed,
                                                 gen_count, gen_out, "");
        if (solve->parsed())
            return cmd_solve(solve_in, solve_out, solve_report, solve_trace, solve_result,
                             solve_partial_file, solve_method, solve_cfg, solve_threads);
        if (bench->parsed())
            return cmd_bench(bench_in, bench_methods, bench_out, bench_cfg, bench_threads,
                             bench_no_timing);
        if (partition->parsed())
            return cmd_partition(part_in, part_k, part_method, part_out, part_trace,
                                 part_inner_trace, part_cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
