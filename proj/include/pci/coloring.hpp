#pragma once

#include <vector>

#include "pci/crt.hpp"
#include "pci/graph.hpp"

namespace pci {

// Plain undirected graph for coloring (no weights, no self-loops).
struct ColoringGraph {
    int n_vertices = 0;
    std::vector<Pair> edges;
};

// Proper coloring, largest-first order: vertices by descending degree (ties
// by ascending index), each takes the smallest color not used by a colored
// neighbor. Color count <= max degree + 1.
std::vector<int> greedy_color(const ColoringGraph& g);

struct QuotientAssignment {
    std::vector<int> q;
};

// Per mod-30 cluster, colors the induced conflict graph (E1 union E2) and
// uses colors as quotients. Clusters are independent; `threads` bounds the
// worker pool (0 = auto, 1 = sequential).
QuotientAssignment assign_quotients(const InterferenceGraph& g, const Mod30Assignment& r30,
                                    int threads = 1);

// Partial variant: quotients of cells outside `changeable` are fixed to
// `fixed_q`. Per cluster the unchangeable cells are replaced by a clique of
// their used colors; changeable cells get edges to the clique vertices of
// colors their fixed conflict partners use. Entries of the result outside
// `changeable` equal fixed_q.
QuotientAssignment assign_quotients_partial(const InterferenceGraph& g,
                                            const Mod30Assignment& r30,
                                            const std::vector<int>& changeable,
                                            const std::vector<int>& fixed_q, int threads = 1);

// Greedy quotient re-assignment for the PCI range constraint: per cluster,
// cells with 30q + r > 1007 are re-assigned (in descending order of
// same-quotient conflict degree) the feasible q minimizing conflicts with
// the already-satisfying cells. Output always satisfies 30q + r <= 1007.
QuotientAssignment repair_range(const InterferenceGraph& g, const Mod30Assignment& r30,
                                const QuotientAssignment& q);

}  // namespace pci
