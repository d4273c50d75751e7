#pragma once

#include <string>
#include <vector>

#include "pci/evaluate.hpp"
#include "pci/graph.hpp"
#include "pci/solver.hpp"

namespace pci {

// gp-pmd: partition by penalized mirror descent, then local search
// gp-pgp: partition by penalized gradient projection, then local search
// gp-ls:  random partition labels, then local search
// ggc:    greedy coloring of the conflict graph only (no partitioning)
enum class Strategy { GpPmd, GpPgp, GpLs, Ggc };

Strategy strategy_from_string(const std::string& name);
std::string strategy_to_string(Strategy s);

struct PipelineOptions {
    Strategy strategy = Strategy::GpPmd;
    int threads = 1;  // worker pool bound for stages 2 and 4; 0 = auto
};

struct StageTrace {
    std::string stage;
    SolveTrace trace;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct PipelineResult {
    PciPlan plan;
    EvalReport report;
    std::vector<StageTrace> traces;
    std::vector<StageTiming> timings;
    // stage products; plan == 30*q + r30 componentwise
    std::vector<int> r3, r10, r30, q;
    bool solver_capped = false;
    bool repair_changed = false;

    double total_seconds() const;
    std::string to_json() const;
    // stage-prefixed solver traces: stage,outer_iter,rho,inner_iters,F,kl_gap,ortho_criterion
    std::string traces_csv() const;
};

// Five-stage assignment: mod-3 partition, per-partition mod-10 partition,
// CRT merge, per-cluster quotient coloring, range repair.
PipelineResult assign_pci(const InterferenceGraph& g, const SolverConfig& config,
                          const PipelineOptions& options = {});

// Same stages restricted to the changeable cells; PCIs outside the set are
// preserved bit-exact. Only the gp-pmd strategy is supported.
PipelineResult assign_pci_partial(const InterferenceGraph& g, const ChangeableSet& cs,
                                  const SolverConfig& config,
                                  const PipelineOptions& options = {});

// Stage-2 helper: mod-10 labels per mod-3 partition (exposed for the
// partition-locality and determinism tests).
std::vector<int> assign_mod10(const InterferenceGraph& g, const std::vector<int>& r3,
                              const SolverConfig& config, const PipelineOptions& options,
                              std::vector<StageTrace>* traces = nullptr,
                              bool* capped = nullptr);

}  // namespace pci
