#pragma once

#include <vector>

#include "pci/graph.hpp"

namespace pci {

struct LabelAssignment {
    std::vector<int> labels;
    int k = 0;
};

struct RefineResult {
    LabelAssignment assignment;
    int sweeps = 0;
    bool hit_sweep_cap = false;
    std::vector<double> objective_after_sweep;  // one entry per completed sweep
};

// F(after) - F(before) for jointly re-labeling cells i and j to (k1, k2),
// all other labels fixed. O(n), exact agreement with re-evaluating the full
// objective.
double pair_move_delta(const InterferenceGraph& g, const LabelAssignment& a, int i, int j, int k1,
                       int k2);

// Pairwise-swap refinement: sweeps all pairs i < j in ascending order; each
// pair is jointly re-labeled to the delta-minimizing (k1,k2) when that is a
// strict improvement (ties keep the current labels; among improving
// candidates the lexicographically smallest pair wins). Sweeps repeat until
// one makes no change, capped at 100 sweeps.
RefineResult refine(const InterferenceGraph& g, const LabelAssignment& a);

// Same, restricted to the `movable` cells; labels of the others are held
// fixed but still contribute to the objective. Used by partial updates.
RefineResult refine_subset(const InterferenceGraph& g, const LabelAssignment& a,
                           const std::vector<int>& movable);

}  // namespace pci
