#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pci/graph.hpp"
#include "pci/util.hpp"

namespace pci {

// Column-stochastic k x n matrix: column j is the label distribution of
// cell j on the probability simplex. Row-major storage, rows are labels.
struct SimplexAssignment {
    int k = 0;
    int n = 0;
    std::vector<double> x;  // k*n row-major

    static SimplexAssignment zeros(int k, int n) {
        return SimplexAssignment{k, n, std::vector<double>(static_cast<std::size_t>(k) * n, 0.0)};
    }
    double at(int row, int col) const { return x[static_cast<std::size_t>(row) * n + col]; }
    double& at(int row, int col) { return x[static_cast<std::size_t>(row) * n + col]; }
    const double* row(int r) const { return x.data() + static_cast<std::size_t>(r) * n; }
    double* row(int r) { return x.data() + static_cast<std::size_t>(r) * n; }

    // argmax per column, lowest label index on ties
    std::vector<int> round_to_labels() const;
};

SimplexAssignment one_hot(const std::vector<int>& labels, int k);

// Strictly interior random start: per column, k uniforms normalized to sum 1.
SimplexAssignment random_interior_init(int k, int n, Rng& rng);

struct SolverConfig {
    double rho0 = 1e-8;   // initial penalty
    double gamma = 1.1;   // penalty growth factor
    double eps1 = 1e-5;   // inner-loop KL tolerance
    double eps2 = 1e-10;  // outer-loop orthogonality tolerance
    int max_inner = 100000;
    // The penalty ramp from rho0 past 2*lambda_max(W) takes ~log_gamma of
    // the ratio, then the vertex decay needs ~sqrt(n)*ln(1/eps2) more outer
    // rounds; 1000 covers both at desk scale.
    int max_outer = 1000;
    uint64_t seed = 0;

    void validate() const;
};

// One row per outer iteration.
struct TraceRow {
    int outer_iter = 0;
    double rho = 0.0;
    int inner_iters = 0;
    double f_value = 0.0;
    double kl_gap = 0.0;
    double ortho = 0.0;
};

struct SolveTrace {
    std::vector<TraceRow> rows;
    static std::string csv_header();  // outer_iter,rho,inner_iters,F,kl_gap,ortho_criterion
    std::string to_csv() const;
};

// Per-inner-iteration observer payload (convergence tests, Fig-style curves).
struct StepInfo {
    int outer_iter = 0;
    int inner_iter = 0;  // m, 0-based
    double rho = 0.0;
    double step = 0.0;      // t_m
    double l_smooth = 0.0;  // L
    double f_before = 0.0;
    double f_after = 0.0;
    double kl = 0.0;  // KL(X^{m+1}, X^m) for PMD, 0.5*||dX||_F^2 for PGP
};
using StepObserver = std::function<void(const StepInfo&)>;

struct SolveResult {
    std::vector<int> labels;
    SolveTrace trace;
    bool hit_inner_cap = false;
    bool hit_outer_cap = false;
    bool capped() const { return hit_inner_cap || hit_outer_cap; }
};

struct InnerResult {
    SimplexAssignment x;
    int iterations = 0;
    double final_kl = 0.0;
    bool hit_cap = false;
};

// F(X;rho) = Tr(X(W - rho/2 I)X^T) + n*rho/2
double penalized_objective(const InterferenceGraph& g, const SimplexAssignment& x, double rho);

// dF/dX = X(2W - rho I), row-major k x n
std::vector<double> gradient(const InterferenceGraph& g, const SimplexAssignment& x, double rho);

// Multiplicative update with per-column normalization; the exponent is
// shifted by the per-column minimum of t*grad so it never overflows.
SimplexAssignment md_step(const SimplexAssignment& x, const std::vector<double>& grad, double t);

// t_m = 1/(L + m + 1)
double step_size(int m, double l_smooth);

// L = ||2W - rho I||_F, from Frobenius norm and trace of W (no eigensolve).
double smoothness_constant(const InterferenceGraph& g, double rho);

// sum a*log(a/b); entries with a == 0 contribute 0.
double kl_divergence(const SimplexAssignment& a, const SimplexAssignment& b);

// ||Q X (Q X)^T - I_k||_F / k^2 with Q scaling rows to unit 2-norm. A row
// with norm < 1e-12 is an unused label; its diagonal entry counts as
// satisfied.
double orthogonality_criterion(const SimplexAssignment& x);

InnerResult run_inner(const InterferenceGraph& g, SimplexAssignment x0, double rho,
                      const SolverConfig& config, const StepObserver& observer = {});

SolveResult solve_min_k_partition(const InterferenceGraph& g, int k, const SolverConfig& config,
                                  const StepObserver& observer = {});

// Same as solve_min_k_partition but from an explicit start point (label-
// permutation equivariance tests, warm starts).
SolveResult solve_min_k_partition_from(const InterferenceGraph& g, SimplexAssignment x0,
                                       const SolverConfig& config,
                                       const StepObserver& observer = {});

struct LambdaMaxResult {
    double value = 0.0;
    bool converged = true;
    int iterations = 0;
};

// Largest eigenvalue of W by shifted power iteration, relative tol 1e-8.
LambdaMaxResult lambda_max(const InterferenceGraph& g);

// max(2*lambda_max(W), 0); penalty exactness threshold, diagnostics only.
double exactness_threshold(const InterferenceGraph& g);

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> y);

// Penalized gradient projection baseline: identical outer loop, Euclidean
// inner step and stopping criterion 0.5*||X+ - X||_F^2 <= eps1.
SolveResult solve_pgp_variant(const InterferenceGraph& g, int k, const SolverConfig& config,
                              const StepObserver& observer = {});

// PMD over the changeable columns only. `fixed_labels` is full-length; its
// entries are read for cells outside `changeable`. Returned labels follow the
// order of `changeable`.
SolveResult solve_partial(const InterferenceGraph& g, int k, const std::vector<int>& changeable,
                          const std::vector<int>& fixed_labels, const SolverConfig& config,
                          const StepObserver& observer = {});

}  // namespace pci
