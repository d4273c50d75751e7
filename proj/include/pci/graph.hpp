#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pci {

// Unordered cell pair, stored with first < second.
using Pair = std::pair<int, int>;

// Network graph: dense symmetric interference matrix W (zero diagonal) plus
// the neighbor pair set E1 and second-order pair set E2. Immutable once
// built; safe for concurrent reads. Dense storage bounds memory at
// 8*n^2 bytes (n = 5000 -> 200 MB), fine for desk-scale instances.
struct InterferenceGraph {
    int n = 0;
    std::vector<double> w;  // row-major n*n
    std::vector<Pair> e1;   // sorted, first < second
    std::vector<Pair> e2;   // sorted, first < second
    std::optional<std::vector<int>> frequencies;

    double weight(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
    double& weight_ref(int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; }

    // Union of E1 and E2 as adjacency lists (the conflict relation).
    std::vector<std::vector<int>> conflict_adjacency() const;
    // E1 adjacency only.
    std::vector<std::vector<int>> neighbor_adjacency() const;
};

// Builds a validated graph from raw parts: symmetrizes entries present in
// both directions as (a+b)/2, mirrors one-sided entries, zeroes the
// diagonal, sorts pair sets, and derives e2 from e1 when absent.
InterferenceGraph make_graph(int n, const std::vector<std::tuple<int, int, double>>& triplets,
                             std::vector<Pair> e1, std::optional<std::vector<Pair>> e2 = {},
                             std::optional<std::vector<int>> frequencies = {});

// Exactly { (i,j) : i != j, some l has (l,i) and (l,j) in e1 }.
std::vector<Pair> derive_second_order(int n, const std::vector<Pair>& e1);

// Subgraph on `cells` (sorted ascending); W entries, E1 and E2 restricted to
// the selected cells, endpoints re-indexed by position.
InterferenceGraph induced_subgraph(const InterferenceGraph& g, const std::vector<int>& cells);

// Per-cell PCI values in [0, 1007].
struct PciPlan {
    std::vector<int> pci;
    int size() const { return static_cast<int>(pci.size()); }
};

inline constexpr int kPciCount = 1008;

// Quotient/remainder views of a plan: pci = 30q + r, r3 = pci mod 3,
// r10 = pci mod 10.
struct PciDecomposition {
    std::vector<int> q, r, r3, r10;
};

PciDecomposition decompose_pci(const PciPlan& plan);
void validate_plan(const PciPlan& plan);

// Partition of the cell set into changeable indices and a fixed baseline
// plan over the complement.
struct ChangeableSet {
    std::vector<int> changeable;  // sorted unique indices
    PciPlan baseline;             // full-length plan; entries outside
                                  // `changeable` are the fixed PCIs
    std::vector<int> unchangeable(int n) const;
};

InterferenceGraph load_instance(const std::string& path);
void store_instance(const InterferenceGraph& g, const std::string& path);

PciPlan load_plan(const std::string& path);
void store_plan(const PciPlan& plan, const std::string& path);

ChangeableSet load_changeable(const std::string& path);
void store_changeable(const ChangeableSet& cs, const std::string& path);

}  // namespace pci
