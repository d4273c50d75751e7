#include "pci/coloring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pci/util.hpp"

namespace pci {

namespace {

std::vector<std::vector<int>> adjacency(const ColoringGraph& g) {
    std::vector<std::vector<int>> adj(g.n_vertices);
    for (const auto& [a, b] : g.edges) {
        if (a == b) throw std::invalid_argument("coloring: self-loop");
        if (a < 0 || b < 0 || a >= g.n_vertices || b >= g.n_vertices)
            throw std::invalid_argument("coloring: edge endpoint out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nb : adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return adj;
}

// Cells of each mod-30 cluster, ascending cell index.
std::vector<std::vector<int>> clusters_by_r30(const InterferenceGraph& g,
                                              const Mod30Assignment& r30) {
    if (static_cast<int>(r30.r30.size()) != g.n)
        throw std::invalid_argument("quotients: r30 size != graph size");
    std::vector<std::vector<int>> clusters(30);
    for (int i = 0; i < g.n; ++i) {
        const int r = r30.r30[i];
        if (r < 0 || r > 29) throw std::invalid_argument("quotients: r30 value outside [0,29]");
        clusters[r].push_back(i);
    }
    return clusters;
}

// Conflict edges (E1 union E2) restricted to one cluster, endpoints
// re-indexed by position in `cells`.
ColoringGraph induced_conflicts(const std::vector<std::vector<int>>& conflict_adj,
                                const std::vector<int>& cells) {
    ColoringGraph cg;
    cg.n_vertices = static_cast<int>(cells.size());
    std::vector<int> pos;  // cell -> position, built sparse via binary search
    for (int a = 0; a < cg.n_vertices; ++a) {
        for (int nb : conflict_adj[cells[a]]) {
            const auto it = std::lower_bound(cells.begin(), cells.end(), nb);
            if (it != cells.end() && *it == nb) {
                const int b = static_cast<int>(it - cells.begin());
                if (a < b) cg.edges.emplace_back(a, b);
            }
        }
    }
    return cg;
}

}  // namespace

std::vector<int> greedy_color(const ColoringGraph& g) {
    const auto adj = adjacency(g);
    std::vector<int> order(g.n_vertices);
    for (int i = 0; i < g.n_vertices; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return adj[a].size() > adj[b].size(); });

    std::vector<int> color(g.n_vertices, -1);
    std::vector<int> used;  // scratch: colors of colored neighbors
    for (int v : order) {
        used.clear();
        for (int nb : adj[v])
            if (color[nb] >= 0) used.push_back(color[nb]);
        std::sort(used.begin(), used.end());
        int c = 0;
        for (int u : used) {
            if (u == c) ++c;
            else if (u > c) break;
        }
        color[v] = c;
    }
    return color;
}

QuotientAssignment assign_quotients(const InterferenceGraph& g, const Mod30Assignment& r30,
                                    int threads) {
    const auto clusters = clusters_by_r30(g, r30);
    const auto conflict_adj = g.conflict_adjacency();
    QuotientAssignment out;
    out.q.assign(g.n, 0);
    parallel_for(clusters.size(), threads, [&](std::size_t r) {
        const auto& cells = clusters[r];
        if (cells.empty()) return;
        const auto colors = greedy_color(induced_conflicts(conflict_adj, cells));
        for (std::size_t a = 0; a < cells.size(); ++a) out.q[cells[a]] = colors[a];
    });
    return out;
}

QuotientAssignment assign_quotients_partial(const InterferenceGraph& g,
                                            const Mod30Assignment& r30,
                                            const std::vector<int>& changeable,
                                            const std::vector<int>& fixed_q, int threads) {
    if (static_cast<int>(fixed_q.size()) != g.n)
        throw std::invalid_argument("quotients: fixed_q size != graph size");
    const auto clusters = clusters_by_r30(g, r30);
    const auto conflict_adj = g.conflict_adjacency();
    std::vector<bool> is_changeable(g.n, false);
    for (int i : changeable) {
        if (i < 0 || i >= g.n) throw std::invalid_argument("quotients: changeable index range");
        is_changeable[i] = true;
    }

    QuotientAssignment out;
    out.q = fixed_q;
    parallel_for(clusters.size(), threads, [&](std::size_t r) {
        std::vector<int> s_cells;  // changeable cells of this cluster, ascending
        std::set<int> used_colors; // colors c_a of unchangeable cluster cells
        for (int i : clusters[r]) {
            if (is_changeable[i])
                s_cells.push_back(i);
            else
                used_colors.insert(fixed_q[i]);
        }
        if (s_cells.empty()) return;
        const std::vector<int> color_list(used_colors.begin(), used_colors.end());
        const int a_count = static_cast<int>(color_list.size());
        const int ns = static_cast<int>(s_cells.size());

        // H: changeable cells (0..ns-1) then clique vertices v_a (ns..ns+A-1)
        ColoringGraph h;
        h.n_vertices = ns + a_count;
        std::vector<bool> in_cluster(g.n, false);
        for (int i : clusters[r]) in_cluster[i] = true;
        for (int a = 0; a < ns; ++a) {
            const int i = s_cells[a];
            std::set<int> fixed_colors_near;  // colors used by fixed conflict partners
            for (int nb : conflict_adj[i]) {
                if (!in_cluster[nb]) continue;
                if (is_changeable[nb]) {
                    const auto it = std::lower_bound(s_cells.begin(), s_cells.end(), nb);
                    const int b = static_cast<int>(it - s_cells.begin());
                    if (a < b) h.edges.emplace_back(a, b);  // F1
                } else {
                    fixed_colors_near.insert(fixed_q[nb]);
                }
            }
            for (int c : fixed_colors_near) {
                const auto it = std::lower_bound(color_list.begin(), color_list.end(), c);
                h.edges.emplace_back(a, ns + static_cast<int>(it - color_list.begin()));  // F2
            }
        }
        for (int a = 0; a < a_count; ++a)  // F3
            for (int b = a + 1; b < a_count; ++b) h.edges.emplace_back(ns + a, ns + b);

        const auto colors = greedy_color(h);

        // Relabel: the clique vertex for c_a gets c_a back; remaining colors
        // map, in ascending order, onto the smallest values not used by the
        // unchangeable cells.
        int max_color = 0;
        for (int c : colors) max_color = std::max(max_color, c);
        std::vector<int> remap(max_color + 1, -1);
        for (int a = 0; a < a_count; ++a) remap[colors[ns + a]] = color_list[a];
        int next_free = 0;
        auto take_free = [&] {
            while (used_colors.count(next_free)) ++next_free;
            return next_free++;
        };
        for (int c = 0; c <= max_color; ++c)
            if (remap[c] < 0) remap[c] = take_free();

        for (int a = 0; a < ns; ++a) out.q[s_cells[a]] = remap[colors[a]];
    });
    return out;
}

QuotientAssignment repair_range(const InterferenceGraph& g, const Mod30Assignment& r30,
                                const QuotientAssignment& q) {
    if (static_cast<int>(q.q.size()) != g.n)
        throw std::invalid_argument("repair: quotient size != graph size");
    const auto clusters = clusters_by_r30(g, r30);
    const auto conflict_adj = g.conflict_adjacency();

    QuotientAssignment out = q;
    for (int r = 0; r < 30; ++r) {
        const auto& cells = clusters[r];
        if (cells.empty()) continue;
        const int q_max = (kPciCount - 1 - r) / 30;  // 30*q + r <= 1007

        std::vector<bool> in_cluster(g.n, false);
        for (int i : cells) in_cluster[i] = true;

        std::vector<int> violating;
        std::vector<bool> satisfied(g.n, false);
        for (int i : cells) {
            if (out.q[i] > q_max)
                violating.push_back(i);
            else
                satisfied[i] = true;
        }
        if (violating.empty()) continue;

        // conflict degree under the incoming assignment; descending, ties by
        // ascending cell index
        std::vector<std::pair<int, int>> ranked;  // (-deg, cell)
        for (int i : violating) {
            int deg = 0;
            for (int nb : conflict_adj[i])
                if (in_cluster[nb] && out.q[nb] == out.q[i]) ++deg;
            ranked.emplace_back(-deg, i);
        }
        std::sort(ranked.begin(), ranked.end());

        std::vector<int> conflicts(q_max + 1);
        for (const auto& [neg_deg, i] : ranked) {
            std::fill(conflicts.begin(), conflicts.end(), 0);
            for (int nb : conflict_adj[i]) {
                if (in_cluster[nb] && satisfied[nb]) ++conflicts[out.q[nb]];
            }
            int best = 0;
            for (int c = 1; c <= q_max; ++c)
                if (conflicts[c] < conflicts[best]) best = c;
            out.q[i] = best;
            satisfied[i] = true;
        }
    }
    return out;
}

}  // namespace pci
