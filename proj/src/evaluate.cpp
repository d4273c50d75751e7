#include "pci/evaluate.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "pci/util.hpp"

namespace pci {

EvalReport evaluate_plan(const InterferenceGraph& g, const PciPlan& plan) {
    if (plan.size() != g.n) throw std::invalid_argument("evaluate: plan size != graph size");
    EvalReport rep;
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            const double w = g.weight(i, j);
            if (w == 0.0) continue;
            if (plan.pci[i] % 3 == plan.pci[j] % 3) rep.mod3_interference += 2.0 * w;
            if (plan.pci[i] % 30 == plan.pci[j] % 30) rep.mod30_interference += 2.0 * w;
        }
    }
    for (const auto& [a, b] : g.e1)
        if (plan.pci[a] == plan.pci[b]) ++rep.collisions;
    for (const auto& [a, b] : g.e2)
        if (plan.pci[a] == plan.pci[b]) ++rep.confusions;
    return rep;
}

std::string EvalReport::to_json() const {
    nlohmann::json doc;
    doc["mod3_interference"] = mod3_interference;
    doc["mod30_interference"] = mod30_interference;
    doc["collisions"] = collisions;
    doc["confusions"] = confusions;
    return doc.dump(1);
}

std::string EvalReport::csv_row() const {
    return format_double(mod3_interference) + "," + format_double(mod30_interference) + "," +
           std::to_string(collisions) + "," + std::to_string(confusions);
}

double objective_of_labels(const InterferenceGraph& g, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != g.n)
        throw std::invalid_argument("objective: labels size != graph size");
    double obj = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (labels[i] == labels[j]) obj += 2.0 * g.weight(i, j);
    return obj;
}

BruteForceResult brute_force_min_k_partition(const InterferenceGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("brute force: k must be >= 1");
    const double combos = std::pow(static_cast<double>(k), g.n);
    if (combos > 1e7)
        throw std::invalid_argument("brute force: k^n exceeds the 10^7 enumeration guard");

    std::vector<int> labels(g.n, 0);
    BruteForceResult best;
    best.labels = labels;
    best.objective = objective_of_labels(g, labels);
    // enumerate in lexicographic order; strict improvement keeps the
    // lexicographically smallest argmin
    for (;;) {
        int pos = g.n - 1;
        while (pos >= 0 && labels[pos] == k - 1) labels[pos--] = 0;
        if (pos < 0) break;
        ++labels[pos];
        const double obj = objective_of_labels(g, labels);
        if (obj < best.objective) {
            best.objective = obj;
            best.labels = labels;
        }
    }
    return best;
}

}  // namespace pci
