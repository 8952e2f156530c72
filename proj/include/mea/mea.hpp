#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mea/edit.hpp"
#include "mea/ged.hpp"
#include "mea/msa.hpp"

namespace mea {

struct MeaConfig {
    // Sampled out-degree of the auxiliary digraph. Interpreted as a fraction
    // of |X| (ceil, capped at |X|-1) when k_is_fraction, else as an absolute
    // count capped at |X|-1.
    double k = 0.4;
    bool k_is_fraction = true;
    std::uint64_t seed = 0;
    bool refine_selected = false;  // tightening pass on the chosen edges
    int refine_iters = 32;
    std::vector<std::pair<int, int>> prior_edges;  // extra candidate edges (i, j)
    bool use_identifier_maps = false;
    int threads = 1;

    int resolve_k(int n) const;
};

// Arborescence over graph indices 0..n (0 = empty graph) together with one
// edit path and its underlying node map per non-root graph.
struct EditArborescence {
    std::vector<int> parents;     // parents[i-1] = parent graph of graph i
    std::vector<EditPath> paths;  // paths[i-1] transforms graph parents[i] into graph i
    std::vector<NodeMap> maps;    // maps[i-1] underlies paths[i-1]
    std::int64_t total_cost = 0;

    int size() const { return static_cast<int>(parents.size()); }
};

// Candidate edges: the root star (0, i) for every i, k sampled targets per
// node, and all prior edges; deduplicated and sorted. The per-node samples
// for a smaller k are a prefix of those for a larger k under the same seed.
std::vector<std::pair<int, int>> build_auxiliary_edges(const GraphCollection& x, const MeaConfig& cfg);

struct WeighedEdge {
    EditPath path;
    NodeMap map;
    std::int64_t weight = 0;
};

// Prices every candidate edge: analytic insertion paths from the root,
// identifier-induced maps when enabled and applicable, otherwise the branch
// upper bound. Runs on cfg.threads workers; per-edge work is seeded
// independently, so results do not depend on scheduling.
std::vector<WeighedEdge> weigh_edges(const GraphCollection& x,
                                     const std::vector<std::pair<int, int>>& edges,
                                     const EditCosts& costs, const MeaConfig& cfg);

// Full pipeline: candidate edges, weights, minimum spanning arborescence,
// and (optionally) refinement of the selected paths, kept only on strict
// improvement. Deterministic for fixed (x, costs, cfg) regardless of
// cfg.threads.
EditArborescence solve_mea(const GraphCollection& x, const EditCosts& costs, const MeaConfig& cfg);

}  // namespace mea
