#pragma once

#include <vector>

#include "mea/errors.hpp"

namespace mea {

struct DigraphEdge {
    int source = 0;
    int target = 0;
    double weight = 0.0;
};

// Digraph on nodes 0..node_count with node 0 as root. Edges entering the
// root and self-loops are rejected; weights must be non-negative.
struct WeightedDigraph {
    int node_count = 0;  // non-root nodes 1..node_count
    std::vector<DigraphEdge> edges;

    void validate() const;
};

struct Arborescence {
    std::vector<int> parents;  // parents[i-1] = parent of node i

    int parent_of(int i) const { return parents.at(i - 1); }
    int size() const { return static_cast<int>(parents.size()); }
};

struct MsaResult {
    Arborescence arb;
    double weight = 0.0;
};

// Edmonds/Chu-Liu minimum spanning arborescence rooted at 0, by iterative
// cycle contraction. Among minimum-weight arborescences, returns the one
// with the lexicographically smallest parent vector. Throws when some node
// is unreachable from the root.
MsaResult min_spanning_arborescence(const WeightedDigraph& g);

// Exhaustive reference with the same tie-break; node_count <= 7.
MsaResult enumerate_min_arborescence(const WeightedDigraph& g);

}  // namespace mea
