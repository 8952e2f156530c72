#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mea/edit.hpp"

namespace mea {

// Square LSAP instance. Entries may be +infinity to forbid a pairing.
struct AssignmentProblem {
    std::vector<std::vector<double>> cost;
    int size() const { return static_cast<int>(cost.size()); }
};

struct Assignment {
    std::vector<int> column_of;  // row i is assigned column column_of[i]
    double total = 0.0;
};

// Optimal solution of the linear sum assignment problem (Hungarian method
// with potentials, O(n^3)). Throws if no finite perfect assignment exists.
Assignment lsap_solve(const AssignmentProblem& problem);

// The (n+m)x(n+m) branch-decomposition surrogate matrix for matching g
// against h: substitution block with half shared-branch terms, deletion and
// insertion diagonals, zero block, and a finite sentinel (one more than the
// sum of per-row maxima) on forbidden cells.
AssignmentProblem build_branch_problem(const LabeledGraph& g, const LabeledGraph& h,
                                       const EditCosts& costs);

struct GedResult {
    NodeMap map;
    std::int64_t cost = 0;  // exact induced-path cost of `map`, never a surrogate
};

// LSAP-based upper bound on the edit distance from g to h. Ties in the
// assignment are broken toward matching equal node indices, so identical
// graphs always yield cost 0.
GedResult branch_upper_bound(const LabeledGraph& g, const LabeledGraph& h, const EditCosts& costs);

// Steepest-descent local search over image swaps between two assignments
// (including unmatched slots). Moves are accepted only on strict cost
// decrease; runs at most max_sweeps sweeps. Never worse than the input.
NodeMap refine_node_map(const LabeledGraph& g, const LabeledGraph& h, const NodeMap& start,
                        const EditCosts& costs, int max_sweeps, std::uint64_t seed);

// Exhaustive minimum over all node maps; requires |V^g| + |V^h| <= 12.
GedResult exact_ged_bruteforce(const LabeledGraph& g, const LabeledGraph& h, const EditCosts& costs);

// Pairs nodes carrying the same label when node labels are unique within
// each graph; nullopt when either graph has duplicate labels.
std::optional<NodeMap> node_map_from_identifiers(const LabeledGraph& g, const LabeledGraph& h);

}  // namespace mea
