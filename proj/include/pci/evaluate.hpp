#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pci/graph.hpp"

namespace pci {

// Plan quality metrics. Interference values sum W over ordered pairs i != j
// (each unordered pair twice, matching the problem's double sum); collision
// and confusion counts are over unordered pairs, matching how result tables
// report them. A pair in both E1 and E2 counts once for each.
struct EvalReport {
    double mod3_interference = 0.0;
    double mod30_interference = 0.0;
    std::int64_t collisions = 0;
    std::int64_t confusions = 0;

    std::string to_json() const;
    std::string csv_row() const;  // mod3,mod30,collisions,confusions
};

EvalReport evaluate_plan(const InterferenceGraph& g, const PciPlan& plan);

// Ordered-pair intra-subset weight: sum of W[i][j] over i != j with equal
// labels. Equals the penalized objective at the one-hot encoding with rho=0.
double objective_of_labels(const InterferenceGraph& g, const std::vector<int>& labels);

struct BruteForceResult {
    std::vector<int> labels;  // lexicographically smallest argmin
    double objective = 0.0;
};

// Exhaustive minimum over Z_k^n; guarded to k^n <= 10^7.
BruteForceResult brute_force_min_k_partition(const InterferenceGraph& g, int k);

}  // namespace pci
