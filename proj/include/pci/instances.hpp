#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pci/graph.hpp"

namespace pci {

struct RggConfig {
    int n = 100;
    double radius = 0.1;
    uint64_t seed = 0;
};

struct SyntheticWConfig {
    int n = 20;
    double b = 1.0;  // entries i.i.d. uniform on [0,b] before symmetrization
    uint64_t seed = 0;
};

struct RggInstance {
    InterferenceGraph graph;
    std::vector<std::pair<double, double>> coordinates;
    int clamped_pairs = 0;  // coincident points whose weight was clamped
};

// n points uniform in the unit square; E1 = pairs within `radius`
// (inclusive); W = 1/distance on E1, clamped at 1e12 below 1e-12 separation;
// E2 derived from E1.
RggInstance generate_rgg(const RggConfig& cfg);

// Deterministic edge/weight construction from explicit coordinates.
RggInstance rgg_from_points(const std::vector<std::pair<double, double>>& points, double radius);

// Dense symmetric W = (W0 + W0^T)/2 with W0 uniform on [0,b]; zero diagonal,
// no neighbor structure (E1 = E2 = empty).
InterferenceGraph generate_random_w(const SyntheticWConfig& cfg);

// Density and max clique describe the geometric edge set E1; average degree
// and clustering describe the conflict relation E1 u E2 that the assignment
// stages operate on (matching how the reference statistics are tabulated).
struct GraphStats {
    double density = 0.0;  // |E1| / (n(n-1)/2)
    int max_clique = 0;    // over E1
    bool max_clique_exact = true;  // false when the 10 s search cap fell back
                                   // to the greedy lower bound
    double avg_degree = 0.0;       // mean |conflict neighbors|
    double clustering_coef = 0.0;  // mean local coefficient over the conflict
                                   // relation, degree<2 -> 0
};

GraphStats compute_stats(const InterferenceGraph& g);

// Sidecar JSON with the generator's point coordinates (plotting aid).
void store_coordinates(const RggInstance& inst, const std::string& path);

}  // namespace pci
