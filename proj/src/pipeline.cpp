#include "pci/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include <json.hpp>

#include "pci/coloring.hpp"
#include "pci/crt.hpp"
#include "pci/local_search.hpp"
#include "pci/util.hpp"

namespace pci {

namespace {

using Clock = std::chrono::steady_clock;

constexpr uint64_t kStageMod3 = 1;
constexpr uint64_t kStageMod10 = 2;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SolverConfig with_seed(const SolverConfig& base, uint64_t seed) {
    SolverConfig cfg = base;
    cfg.seed = seed;
    return cfg;
}

std::vector<int> random_labels(int n, int k, uint64_t seed) {
    Rng rng(seed);
    std::vector<int> labels(n);
    for (auto& l : labels) l = static_cast<int>(rng.below(k));
    return labels;
}

// One partition solve: strategy-dependent labels, then pairwise-swap
// refinement. The graph is the (sub)problem to partition.
std::vector<int> partition_labels(const InterferenceGraph& g, int k, const SolverConfig& cfg,
                                  Strategy strategy, SolveTrace* trace, bool* capped) {
    std::vector<int> labels;
    switch (strategy) {
        case Strategy::GpPmd: {
            SolveResult res = solve_min_k_partition(g, k, cfg);
            labels = std::move(res.labels);
            if (trace) *trace = std::move(res.trace);
            if (capped && res.capped()) *capped = true;
            break;
        }
        case Strategy::GpPgp: {
            SolveResult res = solve_pgp_variant(g, k, cfg);
            labels = std::move(res.labels);
            if (trace) *trace = std::move(res.trace);
            if (capped && res.capped()) *capped = true;
            break;
        }
        case Strategy::GpLs:
            labels = random_labels(g.n, k, cfg.seed);
            break;
        case Strategy::Ggc:
            throw std::logic_error("ggc has no partition stage");
    }
    RefineResult refined = refine(g, LabelAssignment{std::move(labels), k});
    return std::move(refined.assignment.labels);
}

PipelineResult ggc_assign(const InterferenceGraph& g, Clock::time_point t0) {
    ColoringGraph cg;
    cg.n_vertices = g.n;
    cg.edges = g.e1;
    cg.edges.insert(cg.edges.end(), g.e2.begin(), g.e2.end());
    std::sort(cg.edges.begin(), cg.edges.end());
    cg.edges.erase(std::unique(cg.edges.begin(), cg.edges.end()), cg.edges.end());

    PipelineResult out;
    out.plan.pci = greedy_color(cg);
    for (int p : out.plan.pci) {
        if (p >= kPciCount)
            throw std::runtime_error("ggc: conflict graph needs more than 1008 colors");
    }
    const PciDecomposition d = decompose_pci(out.plan);
    out.r3 = d.r3;
    out.r10 = d.r10;
    out.r30 = d.r;
    out.q = d.q;
    out.timings.push_back({"ggc_color", seconds_since(t0)});
    out.report = evaluate_plan(g, out.plan);
    return out;
}

}  // namespace

Strategy strategy_from_string(const std::string& name) {
    if (name == "gp-pmd") return Strategy::GpPmd;
    if (name == "gp-pgp") return Strategy::GpPgp;
    if (name == "gp-ls") return Strategy::GpLs;
    if (name == "ggc") return Strategy::Ggc;
    throw std::invalid_argument("unknown method: " + name +
                                " (expected gp-pmd, gp-pgp, gp-ls, or ggc)");
}

std::string strategy_to_string(Strategy s) {
    switch (s) {
        case Strategy::GpPmd: return "gp-pmd";
        case Strategy::GpPgp: return "gp-pgp";
        case Strategy::GpLs: return "gp-ls";
        case Strategy::Ggc: return "ggc";
    }
    return "?";
}

std::vector<int> assign_mod10(const InterferenceGraph& g, const std::vector<int>& r3,
                              const SolverConfig& config, const PipelineOptions& options,
                              std::vector<StageTrace>* traces, bool* capped) {
    std::vector<std::vector<int>> partitions(3);
    for (int i = 0; i < g.n; ++i) partitions[r3[i]].push_back(i);

    std::vector<int> r10(g.n, 0);
    std::vector<SolveTrace> part_traces(3);
    std::vector<char> part_capped(3, 0);
    parallel_for(3, options.threads, [&](std::size_t r) {
        const auto& cells = partitions[r];
        if (cells.empty()) return;
        const InterferenceGraph sub = induced_subgraph(g, cells);
        bool cap = false;
        const std::vector<int> labels =
            partition_labels(sub, 10, with_seed(config, derive_seed(config.seed, kStageMod10, r)),
                             options.strategy, &part_traces[r], &cap);
        part_capped[r] = cap;
        for (std::size_t a = 0; a < cells.size(); ++a) r10[cells[a]] = labels[a];
    });
    for (int r = 0; r < 3; ++r) {
        if (traces && !part_traces[r].rows.empty())
            traces->push_back({"mod10_p" + std::to_string(r), std::move(part_traces[r])});
        if (capped && part_capped[r]) *capped = true;
    }
    return r10;
}

PipelineResult assign_pci(const InterferenceGraph& g, const SolverConfig& config,
                          const PipelineOptions& options) {
    config.validate();
    const auto t0 = Clock::now();
    if (options.strategy == Strategy::Ggc) return ggc_assign(g, t0);

    PipelineResult out;

    // stage 1: mod-3 values on the full graph
    auto t = Clock::now();
    SolveTrace trace3;
    bool capped = false;
    out.r3 = partition_labels(g, 3, with_seed(config, derive_seed(config.seed, kStageMod3, 0)),
                              options.strategy, &trace3, &capped);
    if (!trace3.rows.empty()) out.traces.push_back({"mod3", std::move(trace3)});
    out.timings.push_back({"mod3", seconds_since(t)});

    // stage 2: mod-10 values per mod-3 partition
    t = Clock::now();
    out.r10 = assign_mod10(g, out.r3, config, options, &out.traces, &capped);
    out.timings.push_back({"mod10", seconds_since(t)});

    // stage 3: CRT merge
    t = Clock::now();
    Mod30Assignment r30 = crt_merge(out.r3, out.r10);
    out.r30 = r30.r30;
    out.timings.push_back({"crt", seconds_since(t)});

    // stage 4: quotients per mod-30 cluster
    t = Clock::now();
    QuotientAssignment quotients = assign_quotients(g, r30, options.threads);
    out.timings.push_back({"quotients", seconds_since(t)});

    // stage 5: range repair
    t = Clock::now();
    QuotientAssignment repaired = repair_range(g, r30, quotients);
    out.repair_changed = repaired.q != quotients.q;
    out.q = repaired.q;
    out.timings.push_back({"repair", seconds_since(t)});

    out.plan.pci.resize(g.n);
    for (int i = 0; i < g.n; ++i) out.plan.pci[i] = 30 * out.q[i] + out.r30[i];
    validate_plan(out.plan);
    out.solver_capped = capped;
    out.report = evaluate_plan(g, out.plan);
    return out;
}

PipelineResult assign_pci_partial(const InterferenceGraph& g, const ChangeableSet& cs,
                                  const SolverConfig& config, const PipelineOptions& options) {
    config.validate();
    if (options.strategy != Strategy::GpPmd)
        throw std::invalid_argument("partial update supports the gp-pmd strategy only");
    if (cs.baseline.size() != g.n)
        throw std::invalid_argument("partial: baseline plan size != graph size");
    validate_plan(cs.baseline);

    std::vector<int> changeable = cs.changeable;
    std::sort(changeable.begin(), changeable.end());
    changeable.erase(std::unique(changeable.begin(), changeable.end()), changeable.end());
    for (int i : changeable)
        if (i < 0 || i >= g.n) throw std::invalid_argument("partial: changeable index range");

    const PciDecomposition base = decompose_pci(cs.baseline);
    PipelineResult out;

    if (changeable.empty()) {
        out.plan = cs.baseline;
        out.r3 = base.r3;
        out.r10 = base.r10;
        out.r30 = base.r;
        out.q = base.q;
        out.report = evaluate_plan(g, out.plan);
        return out;
    }

    // stage 1: mod-3 over changeable cells, unchangeable fixed from baseline
    auto t = Clock::now();
    out.r3 = base.r3;
    {
        SolveResult res = solve_partial(g, 3, changeable, out.r3,
                                        with_seed(config, derive_seed(config.seed, kStageMod3, 0)));
        out.solver_capped = out.solver_capped || res.capped();
        for (std::size_t a = 0; a < changeable.size(); ++a)
            out.r3[changeable[a]] = res.labels[a];
        out.traces.push_back({"mod3", std::move(res.trace)});
        RefineResult refined = refine_subset(g, LabelAssignment{out.r3, 3}, changeable);
        out.r3 = std::move(refined.assignment.labels);
    }
    out.timings.push_back({"mod3", seconds_since(t)});

    // stage 2: mod-10 per mod-3 partition, changeable cells only
    t = Clock::now();
    out.r10 = base.r10;
    {
        std::vector<std::vector<int>> partitions(3);
        for (int i = 0; i < g.n; ++i) partitions[out.r3[i]].push_back(i);
        std::vector<bool> is_changeable(g.n, false);
        for (int i : changeable) is_changeable[i] = true;

        std::vector<SolveTrace> part_traces(3);
        std::vector<char> part_capped(3, 0);
        parallel_for(3, options.threads, [&](std::size_t r) {
            const auto& cells = partitions[r];
            std::vector<int> local_s;
            for (std::size_t a = 0; a < cells.size(); ++a)
                if (is_changeable[cells[a]]) local_s.push_back(static_cast<int>(a));
            if (local_s.empty()) return;

            const InterferenceGraph sub = induced_subgraph(g, cells);
            std::vector<int> local_fixed(cells.size());
            for (std::size_t a = 0; a < cells.size(); ++a) local_fixed[a] = out.r10[cells[a]];

            SolveResult res = solve_partial(
                sub, 10, local_s, local_fixed,
                with_seed(config, derive_seed(config.seed, kStageMod10, r)));
            part_capped[r] = res.capped();
            part_traces[r] = std::move(res.trace);
            std::vector<int> local_labels = local_fixed;
            for (std::size_t a = 0; a < local_s.size(); ++a)
                local_labels[local_s[a]] = res.labels[a];
            RefineResult refined = refine_subset(sub, LabelAssignment{local_labels, 10}, local_s);
            for (std::size_t a = 0; a < cells.size(); ++a)
                if (is_changeable[cells[a]]) out.r10[cells[a]] = refined.assignment.labels[a];
        });
        for (int r = 0; r < 3; ++r) {
            if (!part_traces[r].rows.empty())
                out.traces.push_back({"mod10_p" + std::to_string(r), std::move(part_traces[r])});
            if (part_capped[r]) out.solver_capped = true;
        }
    }
    out.timings.push_back({"mod10", seconds_since(t)});

    // stage 3: CRT merge (unchangeable cells recover their baseline r)
    t = Clock::now();
    Mod30Assignment r30 = crt_merge(out.r3, out.r10);
    out.r30 = r30.r30;
    out.timings.push_back({"crt", seconds_since(t)});

    // stage 4: quotients for changeable cells against fixed baseline ones
    t = Clock::now();
    QuotientAssignment quotients =
        assign_quotients_partial(g, r30, changeable, base.q, options.threads);
    out.timings.push_back({"quotients", seconds_since(t)});

    // stage 5: range repair (baseline cells already satisfy the range)
    t = Clock::now();
    QuotientAssignment repaired = repair_range(g, r30, quotients);
    out.repair_changed = repaired.q != quotients.q;
    out.q = repaired.q;
    out.timings.push_back({"repair", seconds_since(t)});

    out.plan.pci.resize(g.n);
    for (int i = 0; i < g.n; ++i) out.plan.pci[i] = 30 * out.q[i] + out.r30[i];
    validate_plan(out.plan);
    out.report = evaluate_plan(g, out.plan);
    return out;
}

double PipelineResult::total_seconds() const {
    double s = 0.0;
    for (const auto& t : timings) s += t.seconds;
    return s;
}

std::string PipelineResult::to_json() const {
    nlohmann::json doc;
    doc["plan"] = plan.pci;
    doc["report"] = nlohmann::json{{"mod3_interference", report.mod3_interference},
                                   {"mod30_interference", report.mod30_interference},
                                   {"collisions", report.collisions},
                                   {"confusions", report.confusions}};
    nlohmann::json timing = nlohmann::json::array();
    for (const auto& t : timings)
        timing.push_back(nlohmann::json{{"stage", t.stage}, {"seconds", t.seconds}});
    doc["timings"] = std::move(timing);
    doc["wall_time_s"] = total_seconds();
    doc["stage_products"] =
        nlohmann::json{{"r3", r3}, {"r10", r10}, {"r30", r30}, {"q", q}};
    doc["solver_capped"] = solver_capped;
    doc["repair_changed"] = repair_changed;
    return doc.dump(1);
}

std::string PipelineResult::traces_csv() const {
    std::string out = "stage," + SolveTrace::csv_header() + "\n";
    for (const auto& st : traces) {
        for (const auto& r : st.trace.rows) {
            out += st.stage + "," + std::to_string(r.outer_iter) + "," + format_double(r.rho) +
                   "," + std::to_string(r.inner_iters) + "," + format_double(r.f_value) + "," +
                   format_double(r.kl_gap) + "," + format_double(r.ortho) + "\n";
        }
    }
    return out;
}

}  // namespace pci
