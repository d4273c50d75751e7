#include "pci/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pci/kernels.hpp"

namespace pci {

namespace {

// Normalizes full and partial solves: an n x n quadratic term W plus an
// optional k x n linear term (gradient += 2*lin, objective += 2*<X,lin>).
struct Problem {
    int n = 0;
    int k = 0;
    const double* w = nullptr;
    const double* lin = nullptr;
    double w_sumsq = 0.0;
    double w_trace = 0.0;

    static Problem from(const InterferenceGraph& g, int k) {
        Problem p;
        p.n = g.n;
        p.k = k;
        p.w = g.w.data();
        p.w_sumsq = kernels::dot(g.w.data(), g.w.data(), g.w.size());
        for (int i = 0; i < g.n; ++i) p.w_trace += g.weight(i, i);
        return p;
    }

    // ||2W - rho I||_F; exact, no eigensolve.
    double l_smooth(double rho) const {
        const double sq = 4.0 * w_sumsq - 4.0 * rho * w_trace + n * rho * rho;
        return std::sqrt(std::max(sq, 0.0));
    }

    bool is_zero() const {
        if (w_sumsq != 0.0) return false;
        if (!lin) return true;
        for (std::size_t i = 0; i < static_cast<std::size_t>(k) * n; ++i)
            if (lin[i] != 0.0) return false;
        return true;
    }
};

void check_shape(const Problem& p, const SimplexAssignment& x) {
    if (x.n != p.n || x.k != p.k)
        throw std::invalid_argument("solver: assignment shape does not match problem");
}

double objective(const Problem& p, const SimplexAssignment& x, double rho,
                 std::vector<double>& tmp) {
    tmp.resize(p.n);
    double quad = 0.0, sq = 0.0, lin = 0.0;
    for (int r = 0; r < p.k; ++r) {
        const double* xr = x.row(r);
        kernels::matvec(p.w, p.n, p.n, xr, tmp.data());
        quad += kernels::dot(xr, tmp.data(), p.n);
        sq += kernels::dot(xr, xr, p.n);
        if (p.lin) lin += kernels::dot(xr, p.lin + static_cast<std::size_t>(r) * p.n, p.n);
    }
    // the penalty is grouped as (rho/2)(n - ||X||_F^2) so it cancels exactly
    // (not just approximately) at one-hot points, where ||X||_F^2 == n
    return quad + 0.5 * rho * (p.n - sq) + 2.0 * lin;
}

void gradient_into(const Problem& p, const SimplexAssignment& x, double rho, double* out,
                   std::vector<double>& tmp) {
    tmp.resize(p.n);
    for (int r = 0; r < p.k; ++r) {
        const double* xr = x.row(r);
        double* gr = out + static_cast<std::size_t>(r) * p.n;
        kernels::matvec(p.w, p.n, p.n, xr, tmp.data());
        kernels::linear_combine(2.0, tmp.data(), -rho, xr, gr, p.n);
        if (p.lin) kernels::axpy(2.0, p.lin + static_cast<std::size_t>(r) * p.n, gr, p.n);
    }
}

void md_step_into(const SimplexAssignment& x, const double* grad, double t,
                  SimplexAssignment& out) {
    const int k = x.k, n = x.n;
    for (std::size_t i = 0; i < x.x.size(); ++i) {
        if (!std::isfinite(grad[i])) throw std::invalid_argument("md_step: non-finite gradient");
    }
    for (int j = 0; j < n; ++j) {
        double lo = t * grad[j];
        for (int r = 1; r < k; ++r) lo = std::min(lo, t * grad[static_cast<std::size_t>(r) * n + j]);
        double sum = 0.0;
        for (int r = 0; r < k; ++r) {
            const std::size_t idx = static_cast<std::size_t>(r) * n + j;
            const double v = x.x[idx] * std::exp(lo - t * grad[idx]);
            out.x[idx] = v;
            sum += v;
        }
        const double inv = 1.0 / sum;
        for (int r = 0; r < k; ++r) out.x[static_cast<std::size_t>(r) * n + j] *= inv;
    }
}

void pgp_step_into(const SimplexAssignment& x, const double* grad, double t,
                   SimplexAssignment& out) {
    const int k = x.k, n = x.n;
    std::vector<double> col(k);
    for (int j = 0; j < n; ++j) {
        for (int r = 0; r < k; ++r) {
            const std::size_t idx = static_cast<std::size_t>(r) * n + j;
            col[r] = x.x[idx] - t * grad[idx];
        }
        col = project_to_simplex(std::move(col));
        for (int r = 0; r < k; ++r) out.x[static_cast<std::size_t>(r) * n + j] = col[r];
    }
}

double squared_distance(const SimplexAssignment& a, const SimplexAssignment& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        const double d = a.x[i] - b.x[i];
        acc += d * d;
    }
    return acc;
}

InnerResult inner_loop(const Problem& p, SimplexAssignment x, double rho,
                       const SolverConfig& cfg, bool euclidean, int outer_iter,
                       const StepObserver& observer, std::vector<double>& grad_buf,
                       std::vector<double>& tmp) {
    const double l_smooth = p.l_smooth(rho);
    grad_buf.resize(x.x.size());
    SimplexAssignment next = x;
    double f_cur = observer ? objective(p, x, rho, tmp) : 0.0;

    InnerResult res;
    for (int m = 0; m < cfg.max_inner; ++m) {
        gradient_into(p, x, rho, grad_buf.data(), tmp);
        const double t = step_size(m, l_smooth);
        double gap;
        if (euclidean) {
            pgp_step_into(x, grad_buf.data(), t, next);
            gap = 0.5 * squared_distance(next, x);
        } else {
            md_step_into(x, grad_buf.data(), t, next);
            gap = kl_divergence(next, x);
        }
        if (observer) {
            const double f_next = objective(p, next, rho, tmp);
            observer(StepInfo{outer_iter, m, rho, t, l_smooth, f_cur, f_next, gap});
            f_cur = f_next;
        }
        std::swap(x, next);
        res.iterations = m + 1;
        res.final_kl = gap;
        if (gap <= cfg.eps1) {
            res.x = std::move(x);
            return res;
        }
    }
    res.hit_cap = true;
    res.x = std::move(x);
    return res;
}

SolveResult solve_impl(const Problem& p, SimplexAssignment x, const SolverConfig& cfg,
                       bool euclidean, const StepObserver& observer) {
    cfg.validate();
    check_shape(p, x);
    std::vector<double> grad_buf, tmp;

    SolveResult out;
    // Zero interaction: every labeling is optimal; return the canonical one.
    if (p.is_zero()) {
        out.labels.assign(p.n, 0);
        const double f = objective(p, one_hot(out.labels, p.k), 0.0, tmp);
        out.trace.rows.push_back(TraceRow{0, cfg.rho0, 0, f, 0.0, 0.0});
        return out;
    }

    double rho = cfg.rho0;
    for (int tau = 0; tau < cfg.max_outer; ++tau) {
        InnerResult inner =
            inner_loop(p, std::move(x), rho, cfg, euclidean, tau, observer, grad_buf, tmp);
        x = std::move(inner.x);
        out.hit_inner_cap = out.hit_inner_cap || inner.hit_cap;
        const double ortho = orthogonality_criterion(x);
        out.trace.rows.push_back(TraceRow{tau, rho, inner.iterations,
                                          objective(p, x, rho, tmp), inner.final_kl, ortho});
        if (ortho <= cfg.eps2) break;
        if (tau + 1 == cfg.max_outer) {
            out.hit_outer_cap = true;
            log(LogLevel::Warn, "solver: outer iteration cap reached (ortho=" +
                                    format_double(ortho) + ")");
        }
        rho *= cfg.gamma;
    }
    out.labels = x.round_to_labels();
    return out;
}

}  // namespace

std::vector<int> SimplexAssignment::round_to_labels() const {
    std::vector<int> labels(n, 0);
    for (int j = 0; j < n; ++j) {
        double best = at(0, j);
        for (int r = 1; r < k; ++r) {
            if (at(r, j) > best) {
                best = at(r, j);
                labels[j] = r;
            }
        }
    }
    return labels;
}

SimplexAssignment one_hot(const std::vector<int>& labels, int k) {
    SimplexAssignment x = SimplexAssignment::zeros(k, static_cast<int>(labels.size()));
    for (int j = 0; j < x.n; ++j) {
        if (labels[j] < 0 || labels[j] >= k)
            throw std::invalid_argument("one_hot: label out of range");
        x.at(labels[j], j) = 1.0;
    }
    return x;
}

SimplexAssignment random_interior_init(int k, int n, Rng& rng) {
    SimplexAssignment x = SimplexAssignment::zeros(k, n);
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int r = 0; r < k; ++r) {
            const double v = rng.uniform();
            x.at(r, j) = v;
            sum += v;
        }
        for (int r = 0; r < k; ++r) x.at(r, j) /= sum;
    }
    return x;
}

void SolverConfig::validate() const {
    if (!(rho0 > 0.0)) throw std::invalid_argument("config: rho0 must be > 0");
    if (!(gamma > 1.0)) throw std::invalid_argument("config: gamma must be > 1");
    if (!(eps1 > 0.0)) throw std::invalid_argument("config: eps1 must be > 0");
    if (!(eps2 >= 0.0)) throw std::invalid_argument("config: eps2 must be >= 0");
    if (max_inner < 1 || max_outer < 1)
        throw std::invalid_argument("config: iteration caps must be >= 1");
}

std::string SolveTrace::csv_header() {
    return "outer_iter,rho,inner_iters,F,kl_gap,ortho_criterion";
}

std::string SolveTrace::to_csv() const {
    std::string out = csv_header() + "\n";
    for (const auto& r : rows) {
        out += std::to_string(r.outer_iter) + "," + format_double(r.rho) + "," +
               std::to_string(r.inner_iters) + "," + format_double(r.f_value) + "," +
               format_double(r.kl_gap) + "," + format_double(r.ortho) + "\n";
    }
    return out;
}

double penalized_objective(const InterferenceGraph& g, const SimplexAssignment& x, double rho) {
    Problem p = Problem::from(g, x.k);
    check_shape(p, x);
    std::vector<double> tmp;
    return objective(p, x, rho, tmp);
}

std::vector<double> gradient(const InterferenceGraph& g, const SimplexAssignment& x, double rho) {
    Problem p = Problem::from(g, x.k);
    check_shape(p, x);
    std::vector<double> out(x.x.size()), tmp;
    gradient_into(p, x, rho, out.data(), tmp);
    return out;
}

SimplexAssignment md_step(const SimplexAssignment& x, const std::vector<double>& grad, double t) {
    if (grad.size() != x.x.size()) throw std::invalid_argument("md_step: gradient shape mismatch");
    SimplexAssignment out = x;
    md_step_into(x, grad.data(), t, out);
    return out;
}

double step_size(int m, double l_smooth) { return 1.0 / (l_smooth + m + 1.0); }

double smoothness_constant(const InterferenceGraph& g, double rho) {
    return Problem::from(g, 1).l_smooth(rho);
}

double kl_divergence(const SimplexAssignment& a, const SimplexAssignment& b) {
    if (a.k != b.k || a.n != b.n) throw std::invalid_argument("kl: shape mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        const double ai = a.x[i];
        if (ai > 0.0) acc += ai * std::log(ai / b.x[i]);
    }
    return acc;
}

double orthogonality_criterion(const SimplexAssignment& x) {
    const int k = x.k, n = x.n;
    std::vector<double> normalized(x.x);
    std::vector<bool> zero_row(k, false);
    for (int r = 0; r < k; ++r) {
        double* row = normalized.data() + static_cast<std::size_t>(r) * n;
        const double norm = std::sqrt(kernels::dot(row, row, n));
        if (norm < 1e-12) {
            zero_row[r] = true;
            continue;
        }
        const double inv = 1.0 / norm;
        for (int j = 0; j < n; ++j) row[j] *= inv;
    }
    double acc = 0.0;
    for (int r = 0; r < k; ++r) {
        for (int s = 0; s < k; ++s) {
            double m;
            if (r == s) {
                // unused label rows count as satisfied
                m = zero_row[r] ? 1.0
                                : kernels::dot(normalized.data() + static_cast<std::size_t>(r) * n,
                                               normalized.data() + static_cast<std::size_t>(r) * n,
                                               n);
            } else {
                m = kernels::dot(normalized.data() + static_cast<std::size_t>(r) * n,
                                 normalized.data() + static_cast<std::size_t>(s) * n, n);
            }
            const double d = m - (r == s ? 1.0 : 0.0);
            acc += d * d;
        }
    }
    return std::sqrt(acc) / (static_cast<double>(k) * k);
}

InnerResult run_inner(const InterferenceGraph& g, SimplexAssignment x0, double rho,
                      const SolverConfig& config, const StepObserver& observer) {
    config.validate();
    Problem p = Problem::from(g, x0.k);
    check_shape(p, x0);
    std::vector<double> grad_buf, tmp;
    return inner_loop(p, std::move(x0), rho, config, /*euclidean=*/false, 0, observer, grad_buf,
                      tmp);
}

SolveResult solve_min_k_partition(const InterferenceGraph& g, int k, const SolverConfig& config,
                                  const StepObserver& observer) {
    if (k < 1) throw std::invalid_argument("solver: k must be >= 1");
    if (g.n < 1) throw std::invalid_argument("solver: graph must have at least one cell");
    if (k == 1) {
        SolveResult out;
        out.labels.assign(g.n, 0);
        std::vector<double> tmp;
        out.trace.rows.push_back(TraceRow{
            0, config.rho0, 0,
            objective(Problem::from(g, 1), one_hot(out.labels, 1), 0.0, tmp), 0.0, 0.0});
        return out;
    }
    Rng rng(config.seed);
    return solve_min_k_partition_from(g, random_interior_init(k, g.n, rng), config, observer);
}

SolveResult solve_min_k_partition_from(const InterferenceGraph& g, SimplexAssignment x0,
                                       const SolverConfig& config, const StepObserver& observer) {
    Problem p = Problem::from(g, x0.k);
    return solve_impl(p, std::move(x0), config, /*euclidean=*/false, observer);
}

LambdaMaxResult lambda_max(const InterferenceGraph& g) {
    const int n = g.n;
    LambdaMaxResult res;
    double shift = 0.0;  // Gershgorin bound keeps W + shift*I PSD
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(g.weight(i, j));
        shift = std::max(shift, row);
    }
    if (shift == 0.0) return res;

    std::vector<double> v(n), y(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * (i % 7);
    double norm = std::sqrt(kernels::dot(v.data(), v.data(), n));
    for (auto& e : v) e /= norm;

    const int cap = 200000;
    const double rel_tol = 1e-8;
    double lambda_shifted = 0.0;
    res.converged = false;
    for (int it = 0; it < cap; ++it) {
        kernels::matvec(g.w.data(), n, n, v.data(), y.data());
        kernels::axpy(shift, v.data(), y.data(), n);
        lambda_shifted = kernels::dot(v.data(), y.data(), n);
        // residual ||W'v - lambda v|| bounds the eigenvalue error
        double resid = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = y[i] - lambda_shifted * v[i];
            resid += d * d;
        }
        res.iterations = it + 1;
        if (std::sqrt(resid) <= rel_tol * std::max(lambda_shifted, 1e-300)) {
            res.converged = true;
            break;
        }
        norm = std::sqrt(kernels::dot(y.data(), y.data(), n));
        if (norm == 0.0) break;
        for (int i = 0; i < n; ++i) v[i] = y[i] / norm;
    }
    if (!res.converged)
        log(LogLevel::Warn, "power iteration did not converge in " + std::to_string(res.iterations) +
                                " iterations");
    res.value = lambda_shifted - shift;
    return res;
}

double exactness_threshold(const InterferenceGraph& g) {
    return std::max(2.0 * lambda_max(g).value, 0.0);
}

std::vector<double> project_to_simplex(std::vector<double> y) {
    const std::size_t k = y.size();
    std::vector<double> u(y);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double running = 0.0, tau = 0.0;
    std::size_t support = 0;
    for (std::size_t j = 0; j < k; ++j) {
        running += u[j];
        const double candidate = (running - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) {
            support = j + 1;
            tau = candidate;
        }
    }
    (void)support;
    for (auto& e : y) e = std::max(e - tau, 0.0);
    return y;
}

SolveResult solve_pgp_variant(const InterferenceGraph& g, int k, const SolverConfig& config,
                              const StepObserver& observer) {
    if (k < 1) throw std::invalid_argument("solver: k must be >= 1");
    if (k == 1) return solve_min_k_partition(g, 1, config, observer);
    Rng rng(config.seed);
    Problem p = Problem::from(g, k);
    return solve_impl(p, random_interior_init(k, g.n, rng), config, /*euclidean=*/true, observer);
}

SolveResult solve_partial(const InterferenceGraph& g, int k, const std::vector<int>& changeable,
                          const std::vector<int>& fixed_labels, const SolverConfig& config,
                          const StepObserver& observer) {
    if (changeable.empty()) throw std::invalid_argument("solve_partial: changeable set is empty");
    if (static_cast<int>(fixed_labels.size()) != g.n)
        throw std::invalid_argument("solve_partial: fixed label vector size mismatch");
    const int ns = static_cast<int>(changeable.size());

    std::vector<bool> in_s(g.n, false);
    for (int i : changeable) {
        if (i < 0 || i >= g.n) throw std::invalid_argument("solve_partial: index out of range");
        in_s[i] = true;
    }

    // W_SS and the fixed-interaction term X_U W_SU^T (k x |S|).
    std::vector<double> w_ss(static_cast<std::size_t>(ns) * ns, 0.0);
    std::vector<double> lin(static_cast<std::size_t>(k) * ns, 0.0);
    for (int a = 0; a < ns; ++a) {
        const int i = changeable[a];
        for (int b = 0; b < ns; ++b) w_ss[static_cast<std::size_t>(a) * ns + b] = g.weight(i, changeable[b]);
        for (int j = 0; j < g.n; ++j) {
            if (in_s[j]) continue;
            const double w = g.weight(i, j);
            if (w == 0.0) continue;
            const int label = fixed_labels[j];
            if (label < 0 || label >= k)
                throw std::invalid_argument("solve_partial: fixed label out of range");
            lin[static_cast<std::size_t>(label) * ns + a] += w;
        }
    }

    Problem p;
    p.n = ns;
    p.k = k;
    p.w = w_ss.data();
    p.lin = lin.data();
    p.w_sumsq = kernels::dot(w_ss.data(), w_ss.data(), w_ss.size());
    for (int a = 0; a < ns; ++a) p.w_trace += w_ss[static_cast<std::size_t>(a) * ns + a];

    if (k == 1) {
        SolveResult out;
        out.labels.assign(ns, 0);
        std::vector<double> tmp;
        out.trace.rows.push_back(
            TraceRow{0, config.rho0, 0, objective(p, one_hot(out.labels, 1), 0.0, tmp), 0.0, 0.0});
        return out;
    }
    Rng rng(config.seed);
    return solve_impl(p, random_interior_init(k, ns, rng), config, /*euclidean=*/false, observer);
}

}  // namespace pci
