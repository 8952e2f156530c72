#include "mea/mea.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "mea/rng.hpp"

namespace mea {

int MeaConfig::resolve_k(int n) const {
    if (k < 0.0) throw Error("k must be non-negative");
    if (n <= 1) return 0;
    long long resolved = k_is_fraction ? static_cast<long long>(std::ceil(k * n))
                                       : static_cast<long long>(k);
    return static_cast<int>(std::clamp(resolved, 0LL, static_cast<long long>(n - 1)));
}

std::vector<std::pair<int, int>> build_auxiliary_edges(const GraphCollection& x, const MeaConfig& cfg) {
    const int n = x.size();
    const int k = cfg.resolve_k(n);
    std::set<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) edges.emplace(0, i);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> others;
        others.reserve(n - 1);
        for (int j = 1; j <= n; ++j)
            if (j != i) others.push_back(j);
        std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        for (int j : sample_prefix(std::move(others), k, rng)) edges.emplace(i, j);
    }
    for (const auto& [i, j] : cfg.prior_edges) {
        if (i < 0 || i > n || j < 1 || j > n)
            throw Error("prior edge (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range or entering the root");
        if (i == j) throw Error("prior edge is a self-loop");
        edges.emplace(i, j);
    }
    return {edges.begin(), edges.end()};
}

std::vector<WeighedEdge> weigh_edges(const GraphCollection& x,
                                     const std::vector<std::pair<int, int>>& edges,
                                     const EditCosts& costs, const MeaConfig& cfg) {
    std::vector<WeighedEdge> out(edges.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto work = [&]() {
        for (std::size_t idx; (idx = next.fetch_add(1)) < edges.size();) {
            if (failed.load(std::memory_order_relaxed)) return;
            try {
                const auto [i, j] = edges[idx];
                const LabeledGraph& child = x.graphs[j - 1];
                WeighedEdge& slot = out[idx];
                if (i == 0) {
                    slot.path = insertion_path_from_empty(child);
                    slot.map = NodeMap(0, child.node_count());
                } else {
                    const LabeledGraph& parent = x.graphs[i - 1];
                    std::optional<NodeMap> map;
                    if (cfg.use_identifier_maps) map = node_map_from_identifiers(parent, child);
                    if (!map) map = branch_upper_bound(parent, child, costs).map;
                    slot.path = induced_edit_path(parent, child, *map);
                    slot.map = std::move(*map);
                }
                slot.weight = path_cost(slot.path, costs);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed = true;
                error_message = e.what();
                return;
            }
        }
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1 || edges.size() < 2) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (failed) throw Error("edge weighting failed: " + error_message);
    return out;
}

EditArborescence solve_mea(const GraphCollection& x, const EditCosts& costs, const MeaConfig& cfg) {
    const int n = x.size();
    EditArborescence result;
    if (n == 0) return result;

    const std::vector<std::pair<int, int>> edges = build_auxiliary_edges(x, cfg);
    const std::vector<WeighedEdge> weighed = weigh_edges(x, edges, costs, cfg);

    WeightedDigraph digraph;
    digraph.node_count = n;
    digraph.edges.reserve(edges.size());
    for (std::size_t idx = 0; idx < edges.size(); ++idx)
        digraph.edges.push_back({edges[idx].first, edges[idx].second,
                                 static_cast<double>(weighed[idx].weight)});
    const MsaResult msa = min_spanning_arborescence(digraph);

    std::map<std::pair<int, int>, std::size_t> index;
    for (std::size_t idx = 0; idx < edges.size(); ++idx) index.emplace(edges[idx], idx);

    result.parents = msa.arb.parents;
    result.paths.resize(n);
    result.maps.resize(n);
    for (int j = 1; j <= n; ++j) {
        const std::size_t idx = index.at({result.parents[j - 1], j});
        result.paths[j - 1] = weighed[idx].path;
        result.maps[j - 1] = weighed[idx].map;
    }

    if (cfg.refine_selected) {
        for (int j = 1; j <= n; ++j) {
            const int parent = result.parents[j - 1];
            if (parent == 0) continue;  // insertion paths are already minimal
            const LabeledGraph& pg = x.graphs[parent - 1];
            const LabeledGraph& cg = x.graphs[j - 1];
            const NodeMap refined =
                refine_node_map(pg, cg, result.maps[j - 1], costs, cfg.refine_iters,
                                derive_seed(cfg.seed, static_cast<std::uint64_t>(parent),
                                            static_cast<std::uint64_t>(j)));
            EditPath refined_path = induced_edit_path(pg, cg, refined);
            if (path_cost(refined_path, costs) < path_cost(result.paths[j - 1], costs)) {
                result.paths[j - 1] = std::move(refined_path);
                result.maps[j - 1] = refined;
            }
        }
    }

    result.total_cost = 0;
    for (const EditPath& p : result.paths) result.total_cost += path_cost(p, costs);
    return result;
}

}  // namespace mea
