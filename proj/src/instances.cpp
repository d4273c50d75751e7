#include "pci/instances.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "pci/util.hpp"

namespace pci {

namespace {

constexpr double kMinSeparation = 1e-12;
constexpr double kClampedWeight = 1e12;

using Clock = std::chrono::steady_clock;

// Exact maximum clique by branch and bound (greedy-coloring upper bound),
// with a wall-clock cap. Returns false when the cap was hit.
struct CliqueSearch {
    const std::vector<std::vector<bool>>& adj;
    Clock::time_point deadline;
    bool timed_out = false;
    std::vector<int> best;

    void expand(std::vector<int>& clique, std::vector<int>& candidates) {
        if (timed_out || Clock::now() > deadline) {
            timed_out = true;
            return;
        }
        if (candidates.empty()) {
            if (clique.size() > best.size()) best = clique;
            return;
        }
        // greedy coloring of the candidate set bounds the achievable size
        std::vector<int> color(candidates.size(), 0);
        int max_color = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::vector<bool> used(candidates.size() + 1, false);
            for (std::size_t j = 0; j < i; ++j)
                if (adj[candidates[i]][candidates[j]]) used[color[j]] = true;
            int c = 0;
            while (used[c]) ++c;
            color[i] = c;
            max_color = std::max(max_color, c + 1);
        }
        if (clique.size() + max_color <= best.size()) return;

        // branch on candidates in descending color
        std::vector<std::size_t> order(candidates.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return color[a] > color[b]; });
        for (std::size_t oi = 0; oi < order.size(); ++oi) {
            const std::size_t i = order[oi];
            if (clique.size() + color[i] + 1 <= best.size()) return;
            const int v = candidates[i];
            clique.push_back(v);
            std::vector<int> next;
            for (int u : candidates)
                if (u != v && adj[v][u]) next.push_back(u);
            expand(clique, next);
            clique.pop_back();
            if (timed_out) return;
        }
    }
};

int greedy_clique_lower_bound(const std::vector<std::vector<bool>>& adj,
                              const std::vector<int>& degree) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return degree[a] > degree[b]; });
    std::vector<int> bestv;
    for (int start : order) {
        std::vector<int> clique{start};
        for (int v : order) {
            if (v == start) continue;
            bool ok = true;
            for (int u : clique)
                if (!adj[v][u]) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(v);
        }
        if (clique.size() > bestv.size()) bestv = clique;
    }
    return static_cast<int>(bestv.size());
}

}  // namespace

RggInstance rgg_from_points(const std::vector<std::pair<double, double>>& points, double radius) {
    const int n = static_cast<int>(points.size());
    if (n < 1) throw std::invalid_argument("rgg: need at least one point");
    if (!(radius > 0.0)) throw std::invalid_argument("rgg: radius must be positive");

    std::vector<std::tuple<int, int, double>> triplets;
    std::vector<Pair> e1;
    int clamped = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = points[i].first - points[j].first;
            const double dy = points[i].second - points[j].second;
            const double dist = std::sqrt(dx * dx + dy * dy);
            if (dist > radius) continue;
            double w;
            if (dist < kMinSeparation) {
                w = kClampedWeight;
                ++clamped;
            } else {
                w = 1.0 / dist;
            }
            e1.emplace_back(i, j);
            triplets.emplace_back(i, j, w);
        }
    }
    if (clamped > 0)
        log(LogLevel::Warn, "rgg: clamped " + std::to_string(clamped) +
                                " coincident point pair weights at 1e12");

    RggInstance inst;
    inst.graph = make_graph(n, triplets, std::move(e1));
    inst.coordinates = points;
    inst.clamped_pairs = clamped;
    return inst;
}

RggInstance generate_rgg(const RggConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("rgg: n must be >= 1");
    if (!(cfg.radius > 0.0) || cfg.radius > std::sqrt(2.0))
        throw std::invalid_argument("rgg: radius must be in (0, sqrt(2)]");
    Rng rng(cfg.seed);
    std::vector<std::pair<double, double>> points(cfg.n);
    for (auto& [x, y] : points) {
        x = rng.uniform();
        y = rng.uniform();
    }
    return rgg_from_points(points, cfg.radius);
}

InterferenceGraph generate_random_w(const SyntheticWConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("randw: n must be >= 1");
    if (!(cfg.b > 0.0)) throw std::invalid_argument("randw: b must be positive");
    Rng rng(cfg.seed);
    const int n = cfg.n;
    std::vector<double> w0(static_cast<std::size_t>(n) * n);
    for (auto& e : w0) e = cfg.b * rng.uniform();

    InterferenceGraph g;
    g.n = n;
    g.w.assign(w0.size(), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            g.weight_ref(i, j) =
                0.5 * (w0[static_cast<std::size_t>(i) * n + j] + w0[static_cast<std::size_t>(j) * n + i]);
        }
    }
    return g;
}

GraphStats compute_stats(const InterferenceGraph& g) {
    GraphStats st;
    const int n = g.n;
    if (n > 1) st.density = static_cast<double>(g.e1.size()) / (0.5 * n * (n - 1));

    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<int> degree(n, 0);
    for (const auto& [a, b] : g.e1) {
        adj[a][b] = adj[b][a] = true;
        ++degree[a];
        ++degree[b];
    }

    // degree and clustering describe the conflict relation E1 u E2 (the
    // relation the assignment stages operate on); density and clique stay on
    // the geometric edge set E1
    const auto conflict = g.conflict_adjacency();
    std::vector<std::vector<bool>> conflict_adj(n, std::vector<bool>(n, false));
    double degree_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        degree_sum += static_cast<double>(conflict[v].size());
        for (int u : conflict[v]) conflict_adj[v][u] = true;
    }
    st.avg_degree = n > 0 ? degree_sum / n : 0.0;

    double clustering_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        const auto& nb = conflict[v];
        const int d = static_cast<int>(nb.size());
        if (d < 2) continue;  // contributes 0
        int links = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (conflict_adj[nb[a]][nb[b]]) ++links;
        clustering_sum += 2.0 * links / (static_cast<double>(d) * (d - 1));
    }
    st.clustering_coef = n > 0 ? clustering_sum / n : 0.0;

    if (g.e1.empty()) {
        st.max_clique = n >= 1 ? 1 : 0;
        return st;
    }
    CliqueSearch search{adj, Clock::now() + std::chrono::seconds(10), false, {}};
    std::vector<int> clique;
    std::vector<int> candidates(n);
    for (int i = 0; i < n; ++i) candidates[i] = i;
    search.expand(clique, candidates);
    if (search.timed_out) {
        st.max_clique_exact = false;
        st.max_clique =
            std::max(static_cast<int>(search.best.size()), greedy_clique_lower_bound(adj, degree));
        log(LogLevel::Warn, "stats: max clique search timed out; reporting greedy lower bound");
    } else {
        st.max_clique = static_cast<int>(search.best.size());
    }
    return st;
}

void store_coordinates(const RggInstance& inst, const std::string& path) {
    nlohmann::json doc;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [x, y] : inst.coordinates) pts.push_back(nlohmann::json::array({x, y}));
    doc["coordinates"] = std::move(pts);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(1) << '\n';
}

}  // namespace pci
