#include "pci/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace pci {

namespace {

using nlohmann::json;

void check_index(int i, int n, const char* what) {
    if (i < 0 || i >= n) {
        throw std::runtime_error(std::string(what) + ": cell index " + std::to_string(i) +
                                 " out of range [0," + std::to_string(n - 1) + "]");
    }
}

std::vector<Pair> normalize_pairs(int n, std::vector<Pair> pairs, const char* what,
                                  bool forbid_self_loop) {
    for (auto& [a, b] : pairs) {
        check_index(a, n, what);
        check_index(b, n, what);
        if (a == b) {
            if (forbid_self_loop)
                throw std::runtime_error(std::string(what) + ": self-loop at cell " +
                                         std::to_string(a));
        }
        if (a > b) std::swap(a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    // drop any (i,i) that survived in a set where self pairs are tolerated
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                               [](const Pair& p) { return p.first == p.second; }),
                pairs.end());
    return pairs;
}

std::vector<std::vector<int>> adjacency_from_pairs(int n, const std::vector<Pair>& pairs) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : pairs) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

}  // namespace

std::vector<std::vector<int>> InterferenceGraph::conflict_adjacency() const {
    std::vector<Pair> all = e1;
    all.insert(all.end(), e2.begin(), e2.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return adjacency_from_pairs(n, all);
}

std::vector<std::vector<int>> InterferenceGraph::neighbor_adjacency() const {
    return adjacency_from_pairs(n, e1);
}

std::vector<Pair> derive_second_order(int n, const std::vector<Pair>& e1) {
    const auto adj = adjacency_from_pairs(n, e1);
    std::set<Pair> out;
    for (int l = 0; l < n; ++l) {
        const auto& nb = adj[l];
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) out.emplace(nb[a], nb[b]);
    }
    return {out.begin(), out.end()};
}

InterferenceGraph make_graph(int n, const std::vector<std::tuple<int, int, double>>& triplets,
                             std::vector<Pair> e1, std::optional<std::vector<Pair>> e2,
                             std::optional<std::vector<int>> frequencies) {
    if (n < 1) throw std::runtime_error("instance: cell count must be >= 1");
    InterferenceGraph g;
    g.n = n;
    g.w.assign(static_cast<std::size_t>(n) * n, 0.0);

    // Collect directed entries; a pair present in one direction is mirrored,
    // present in both it is averaged ((W0 + W0^T)/2 restricted to what the
    // file declares).
    std::map<Pair, double> directed;
    for (const auto& [i, j, v] : triplets) {
        check_index(i, n, "weights");
        check_index(j, n, "weights");
        if (v < 0.0) {
            throw std::runtime_error("weights: negative weight " + std::to_string(v) + " at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (i == j) continue;  // diagonal is zeroed at ingestion
        if (!directed.emplace(Pair{i, j}, v).second) {
            throw std::runtime_error("weights: duplicate entry for (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
        }
    }
    for (const auto& [key, v] : directed) {
        const auto rev = directed.find(Pair{key.second, key.first});
        double w = v;
        if (rev != directed.end()) w = 0.5 * (v + rev->second);
        g.weight_ref(key.first, key.second) = w;
        g.weight_ref(key.second, key.first) = w;
    }

    g.e1 = normalize_pairs(n, std::move(e1), "e1", /*forbid_self_loop=*/true);
    if (e2.has_value()) {
        g.e2 = normalize_pairs(n, std::move(*e2), "e2", /*forbid_self_loop=*/false);
    } else {
        g.e2 = derive_second_order(n, g.e1);
    }

    if (frequencies.has_value()) {
        if (static_cast<int>(frequencies->size()) != n)
            throw std::runtime_error("frequencies: expected " + std::to_string(n) + " entries");
        g.frequencies = std::move(frequencies);
    }
    return g;
}

InterferenceGraph induced_subgraph(const InterferenceGraph& g, const std::vector<int>& cells) {
    const int ns = static_cast<int>(cells.size());
    std::vector<int> pos(g.n, -1);
    for (int a = 0; a < ns; ++a) {
        check_index(cells[a], g.n, "subgraph");
        pos[cells[a]] = a;
    }
    InterferenceGraph sub;
    sub.n = ns;
    sub.w.assign(static_cast<std::size_t>(ns) * ns, 0.0);
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b) sub.weight_ref(a, b) = g.weight(cells[a], cells[b]);
    for (const auto& [i, j] : g.e1)
        if (pos[i] >= 0 && pos[j] >= 0) sub.e1.emplace_back(std::min(pos[i], pos[j]), std::max(pos[i], pos[j]));
    for (const auto& [i, j] : g.e2)
        if (pos[i] >= 0 && pos[j] >= 0) sub.e2.emplace_back(std::min(pos[i], pos[j]), std::max(pos[i], pos[j]));
    std::sort(sub.e1.begin(), sub.e1.end());
    std::sort(sub.e2.begin(), sub.e2.end());
    return sub;
}

PciDecomposition decompose_pci(const PciPlan& plan) {
    PciDecomposition d;
    const std::size_t n = plan.pci.size();
    d.q.resize(n);
    d.r.resize(n);
    d.r3.resize(n);
    d.r10.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int p = plan.pci[i];
        d.q[i] = p / 30;
        d.r[i] = p % 30;
        d.r3[i] = p % 3;
        d.r10[i] = p % 10;
    }
    return d;
}

void validate_plan(const PciPlan& plan) {
    for (std::size_t i = 0; i < plan.pci.size(); ++i) {
        const int p = plan.pci[i];
        if (p < 0 || p >= kPciCount)
            throw std::runtime_error("plan: pci[" + std::to_string(i) + "] = " +
                                     std::to_string(p) + " outside [0,1007]");
    }
}

std::vector<int> ChangeableSet::unchangeable(int n) const {
    std::vector<bool> is_changeable(n, false);
    for (int i : changeable) is_changeable[i] = true;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!is_changeable[i]) out.push_back(i);
    return out;
}

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": parse error: " + e.what());
    }
    return doc;
}

void write_file(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(1) << '\n';
}

std::vector<Pair> pairs_from_json(const json& arr) {
    std::vector<Pair> out;
    out.reserve(arr.size());
    for (const auto& p : arr) out.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return out;
}

json pairs_to_json(const std::vector<Pair>& pairs) {
    json arr = json::array();
    for (const auto& [a, b] : pairs) arr.push_back(json::array({a, b}));
    return arr;
}

}  // namespace

InterferenceGraph load_instance(const std::string& path) {
    const json doc = parse_file(path);
    try {
        const int n = doc.at("n").get<int>();
        std::vector<std::tuple<int, int, double>> triplets;
        if (doc.contains("weights")) {
            for (const auto& t : doc.at("weights"))
                triplets.emplace_back(t.at(0).get<int>(), t.at(1).get<int>(),
                                      t.at(2).get<double>());
        }
        std::vector<Pair> e1;
        if (doc.contains("e1")) e1 = pairs_from_json(doc.at("e1"));
        std::optional<std::vector<Pair>> e2;
        if (doc.contains("e2")) e2 = pairs_from_json(doc.at("e2"));
        std::optional<std::vector<int>> freqs;
        if (doc.contains("frequencies")) freqs = doc.at("frequencies").get<std::vector<int>>();
        return make_graph(n, triplets, std::move(e1), std::move(e2), std::move(freqs));
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": parse error: " + e.what());
    }
}

void store_instance(const InterferenceGraph& g, const std::string& path) {
    json doc;
    doc["n"] = g.n;
    json weights = json::array();
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.weight(i, j) != 0.0) weights.push_back(json::array({i, j, g.weight(i, j)}));
    doc["weights"] = std::move(weights);
    doc["e1"] = pairs_to_json(g.e1);
    doc["e2"] = pairs_to_json(g.e2);
    if (g.frequencies.has_value()) doc["frequencies"] = *g.frequencies;
    write_file(doc, path);
}

PciPlan load_plan(const std::string& path) {
    const json doc = parse_file(path);
    PciPlan plan;
    try {
        plan.pci = doc.at("pci").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": parse error: " + e.what());
    }
    validate_plan(plan);
    return plan;
}

void store_plan(const PciPlan& plan, const std::string& path) {
    json doc;
    doc["pci"] = plan.pci;
    write_file(doc, path);
}

ChangeableSet load_changeable(const std::string& path) {
    const json doc = parse_file(path);
    ChangeableSet cs;
    try {
        cs.changeable = doc.at("changeable").get<std::vector<int>>();
        cs.baseline.pci = doc.at("baseline_pci").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": parse error: " + e.what());
    }
    std::sort(cs.changeable.begin(), cs.changeable.end());
    cs.changeable.erase(std::unique(cs.changeable.begin(), cs.changeable.end()),
                        cs.changeable.end());
    const int n = cs.baseline.size();
    for (int i : cs.changeable) check_index(i, n, "changeable");
    validate_plan(cs.baseline);
    return cs;
}

void store_changeable(const ChangeableSet& cs, const std::string& path) {
    json doc;
    doc["changeable"] = cs.changeable;
    doc["baseline_pci"] = cs.baseline.pci;
    write_file(doc, path);
}

}  // namespace pci
