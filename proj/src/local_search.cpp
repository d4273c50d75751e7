#include "pci/local_search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pci/evaluate.hpp"

namespace pci {

namespace {

constexpr int kSweepCap = 100;

void check_labels(const InterferenceGraph& g, const LabelAssignment& a) {
    if (static_cast<int>(a.labels.size()) != g.n)
        throw std::invalid_argument("local search: labels size != graph size");
    for (int l : a.labels)
        if (l < 0 || l >= a.k) throw std::invalid_argument("local search: label out of range");
}

// s[i][c] = sum_j W[i][j] * 1{labels[j] == c}
std::vector<double> label_weight_table(const InterferenceGraph& g, const std::vector<int>& labels,
                                       int k) {
    std::vector<double> s(static_cast<std::size_t>(g.n) * k, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double* row = g.w.data() + static_cast<std::size_t>(i) * g.n;
        double* si = s.data() + static_cast<std::size_t>(i) * k;
        for (int j = 0; j < g.n; ++j) {
            const double w = row[j];
            if (w != 0.0 && j != i) si[labels[j]] += w;
        }
    }
    return s;
}

// Ordered-pair objective change for the joint move (i,j) -> (k1,k2),
// expressed through the per-cell label-weight table.
inline double delta_from_table(const std::vector<double>& s, int k, double wij, int i, int j,
                               int a, int b, int k1, int k2) {
    const double* si = s.data() + static_cast<std::size_t>(i) * k;
    const double* sj = s.data() + static_cast<std::size_t>(j) * k;
    const double after = 2.0 * (si[k1] - wij * (b == k1)) + 2.0 * (sj[k2] - wij * (a == k2)) +
                         2.0 * wij * (k1 == k2);
    const double before = 2.0 * si[a] + 2.0 * sj[b] - 2.0 * wij * (a == b);
    return after - before;
}

void apply_label_change(const InterferenceGraph& g, std::vector<double>& s, int k,
                        std::vector<int>& labels, int i, int to) {
    const int from = labels[i];
    if (from == to) return;
    for (int q = 0; q < g.n; ++q) {
        if (q == i) continue;
        const double w = g.weight(q, i);
        if (w == 0.0) continue;
        double* sq = s.data() + static_cast<std::size_t>(q) * k;
        sq[from] -= w;
        sq[to] += w;
    }
    labels[i] = to;
}

RefineResult refine_impl(const InterferenceGraph& g, const LabelAssignment& a,
                         const std::vector<int>& movable) {
    check_labels(g, a);
    RefineResult res;
    res.assignment = a;
    std::vector<int>& labels = res.assignment.labels;
    const int k = a.k;

    for (int sweep = 0; sweep < kSweepCap; ++sweep) {
        // fresh table per sweep keeps incremental deltas from drifting
        std::vector<double> s = label_weight_table(g, labels, k);
        bool changed = false;

        // rounding noise in the deltas scales with the local weight mass;
        // anything within that band counts as a tie (no move)
        auto noise_band = [&](int i, int j) {
            const double* si = s.data() + static_cast<std::size_t>(i) * k;
            const double* sj = s.data() + static_cast<std::size_t>(j) * k;
            double mass = j >= 0 ? g.weight(i, j) : 0.0;
            for (int c = 0; c < k; ++c) mass += si[c] + (j >= 0 ? sj[c] : 0.0);
            return 1e-12 * (1.0 + 2.0 * mass);
        };

        if (movable.size() == 1) {
            // single movable cell: plain best-label move
            const int i = movable[0];
            const double* si = s.data() + static_cast<std::size_t>(i) * k;
            int best = labels[i];
            double best_delta = -noise_band(i, -1);
            for (int c = 0; c < k; ++c) {
                if (c == labels[i]) continue;
                const double d = 2.0 * (si[c] - si[labels[i]]);
                if (d < best_delta) {
                    best_delta = d;
                    best = c;
                }
            }
            if (best != labels[i]) {
                apply_label_change(g, s, k, labels, i, best);
                changed = true;
            }
        } else {
            for (std::size_t ii = 0; ii < movable.size(); ++ii) {
                for (std::size_t jj = ii + 1; jj < movable.size(); ++jj) {
                    const int i = movable[ii], j = movable[jj];
                    const double wij = g.weight(i, j);
                    const int cur1 = labels[i], cur2 = labels[j];
                    int best1 = cur1, best2 = cur2;
                    double best_delta = -noise_band(i, j);
                    for (int k1 = 0; k1 < k; ++k1) {
                        for (int k2 = 0; k2 < k; ++k2) {
                            if (k1 == cur1 && k2 == cur2) continue;
                            const double d =
                                delta_from_table(s, k, wij, i, j, cur1, cur2, k1, k2);
                            if (d < best_delta) {
                                best_delta = d;
                                best1 = k1;
                                best2 = k2;
                            }
                        }
                    }
                    if (best1 != cur1 || best2 != cur2) {
                        apply_label_change(g, s, k, labels, i, best1);
                        apply_label_change(g, s, k, labels, j, best2);
                        changed = true;
                    }
                }
            }
        }

        res.sweeps = sweep + 1;
        res.objective_after_sweep.push_back(objective_of_labels(g, labels));
        if (!changed) return res;
    }
    res.hit_sweep_cap = true;
    return res;
}

}  // namespace

double pair_move_delta(const InterferenceGraph& g, const LabelAssignment& a, int i, int j, int k1,
                       int k2) {
    check_labels(g, a);
    if (i == j || i < 0 || j < 0 || i >= g.n || j >= g.n)
        throw std::out_of_range("pair_move_delta: bad cell indices");
    if (k1 < 0 || k1 >= a.k || k2 < 0 || k2 >= a.k)
        throw std::out_of_range("pair_move_delta: label out of range");

    const int cur1 = a.labels[i], cur2 = a.labels[j];
    // four label-weight sums, each O(n)
    double si_new = 0.0, si_old = 0.0, sj_new = 0.0, sj_old = 0.0;
    for (int q = 0; q < g.n; ++q) {
        const int lq = a.labels[q];
        if (q != i) {
            const double w = g.weight(i, q);
            si_new += w * (lq == k1);
            si_old += w * (lq == cur1);
        }
        if (q != j) {
            const double w = g.weight(j, q);
            sj_new += w * (lq == k2);
            sj_old += w * (lq == cur2);
        }
    }
    const double wij = g.weight(i, j);
    const double after =
        2.0 * (si_new - wij * (cur2 == k1)) + 2.0 * (sj_new - wij * (cur1 == k2)) +
        2.0 * wij * (k1 == k2);
    const double before = 2.0 * si_old + 2.0 * sj_old - 2.0 * wij * (cur1 == cur2);
    return after - before;
}

RefineResult refine(const InterferenceGraph& g, const LabelAssignment& a) {
    std::vector<int> all(g.n);
    std::iota(all.begin(), all.end(), 0);
    return refine_impl(g, a, all);
}

RefineResult refine_subset(const InterferenceGraph& g, const LabelAssignment& a,
                           const std::vector<int>& movable) {
    for (int i : movable)
        if (i < 0 || i >= g.n) throw std::out_of_range("refine_subset: index out of range");
    if (movable.empty()) {
        RefineResult res;
        res.assignment = a;
        res.sweeps = 0;
        return res;
    }
    std::vector<int> sorted = movable;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return refine_impl(g, a, sorted);
}

}  // namespace pci
