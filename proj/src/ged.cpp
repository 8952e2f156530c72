#include "mea/ged.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mea/rng.hpp"

namespace mea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Assignment lsap_solve(const AssignmentProblem& problem) {
    const int n = problem.size();
    for (const auto& row : problem.cost)
        if (static_cast<int>(row.size()) != n) throw Error("assignment matrix is not square");
    Assignment result;
    if (n == 0) return result;

    // infinities become a finite bound so the potentials stay well defined;
    // a chosen forbidden cell is detected afterwards
    double finite_sum = 0.0;
    for (const auto& row : problem.cost)
        for (double c : row)
            if (std::isfinite(c)) finite_sum += std::abs(c);
    const double forbidden = finite_sum + 1.0;
    auto cell = [&](int i, int j) {
        const double c = problem.cost[i][j];
        return std::isfinite(c) ? c : forbidden;
    };

    // Hungarian method with potentials, rows added one at a time
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);  // match[j] = row assigned to column j
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cell(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }

    result.column_of.assign(n, -1);
    for (int j = 1; j <= n; ++j) result.column_of[match[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) {
        const double c = problem.cost[i][result.column_of[i]];
        if (!std::isfinite(c)) throw Error("no feasible finite assignment");
        result.total += c;
    }
    return result;
}

AssignmentProblem build_branch_problem(const LabeledGraph& g, const LabeledGraph& h,
                                       const EditCosts& costs) {
    const int n = g.node_count(), m = h.node_count(), size = n + m;
    AssignmentProblem problem;
    problem.cost.assign(size, std::vector<double>(size, 0.0));

    // incident edge-label multisets, sorted for intersection counting
    auto branches = [](const LabeledGraph& graph) {
        std::vector<std::vector<LabelId>> b(graph.node_count() + 1);
        for (const auto& [e, label] : graph.edges()) {
            b[e.u].push_back(label);
            b[e.v].push_back(label);
        }
        for (auto& labels : b) std::sort(labels.begin(), labels.end());
        return b;
    };
    const auto bg = branches(g), bh = branches(h);
    auto common = [](const std::vector<LabelId>& a, const std::vector<LabelId>& b) {
        std::size_t i = 0, j = 0, count = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) ++i;
            else if (b[j] < a[i]) ++j;
            else ++count, ++i, ++j;
        }
        return count;
    };

    for (int u = 1; u <= n; ++u) {
        const auto du = static_cast<double>(bg[u].size());
        for (int v = 1; v <= m; ++v) {
            const auto dv = static_cast<double>(bh[v].size());
            const double shared = static_cast<double>(common(bg[u], bh[v]));
            // each edge is shared by two nodes, hence the half
            const double branch_term =
                costs.edge_relabel * (std::min(du, dv) - shared) +
                costs.edge_insertion * std::max(0.0, dv - du) +
                costs.edge_deletion * std::max(0.0, du - dv);
            problem.cost[u - 1][v - 1] =
                (g.node_label(u) != h.node_label(v) ? static_cast<double>(costs.node_relabel) : 0.0) +
                0.5 * branch_term;
        }
    }
    // deletion block: diagonal only (incident edge deletions are implied)
    for (int u = 1; u <= n; ++u)
        for (int c = 0; c < n; ++c)
            problem.cost[u - 1][m + c] = (c == u - 1) ? static_cast<double>(costs.node_deletion) : kInf;
    // insertion block: diagonal carries the node plus its incident edges
    for (int r = 0; r < m; ++r)
        for (int v = 1; v <= m; ++v)
            problem.cost[n + r][v - 1] =
                (r == v - 1)
                    ? static_cast<double>(costs.node_insertion) + bh[v].size() * static_cast<double>(costs.edge_insertion)
                    : kInf;
    // bottom-right m x n block stays zero

    // finite sentinel strictly above any feasible total
    double row_max_sum = 0.0;
    for (const auto& row : problem.cost) {
        double row_max = 0.0;
        for (double c : row)
            if (std::isfinite(c)) row_max = std::max(row_max, c);
        row_max_sum += row_max;
    }
    const double sentinel = row_max_sum + 1.0;
    for (auto& row : problem.cost)
        for (double& c : row)
            if (!std::isfinite(c)) c = sentinel;
    return problem;
}

GedResult branch_upper_bound(const LabeledGraph& g, const LabeledGraph& h, const EditCosts& costs) {
    const int n = g.node_count(), m = h.node_count(), size = n + m;
    NodeMap map(n, m);
    if (size == 0) return {map, 0};

    // Scale so that ties in the surrogate are broken toward index-equal
    // matches; identical graphs then resolve to the identity map. Surrogate
    // entries are multiples of 1/2, so scaling by 2*(size+1) keeps the
    // primary objective intact.
    AssignmentProblem problem = build_branch_problem(g, h, costs);
    const double scale = 2.0 * (size + 1);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            problem.cost[i][j] = problem.cost[i][j] * scale + (i == j ? 0.0 : 1.0);

    const Assignment assignment = lsap_solve(problem);
    for (int u = 1; u <= n; ++u) {
        const int col = assignment.column_of[u - 1];
        if (col < m) map.link(u, col + 1);
    }
    const std::int64_t cost = path_cost(induced_edit_path(g, h, map), costs);
    return {std::move(map), cost};
}

namespace {

// assignment slots of a map: (u, image) for every source node plus one
// (0, v) slot per inserted target node
std::vector<std::pair<NodeId, NodeId>> map_slots(const NodeMap& map) {
    std::vector<std::pair<NodeId, NodeId>> slots;
    for (NodeId u = 1; u <= map.source_size(); ++u) slots.emplace_back(u, map.image(u));
    for (NodeId v = 1; v <= map.target_size(); ++v)
        if (map.preimage(v) == 0) slots.emplace_back(0, v);
    return slots;
}

NodeMap with_swapped_images(const NodeMap& map, std::pair<NodeId, NodeId> a,
                            std::pair<NodeId, NodeId> b) {
    NodeMap out(map.source_size(), map.target_size());
    for (NodeId u = 1; u <= map.source_size(); ++u) {
        const NodeId v = map.image(u);
        if (u == a.first || u == b.first || v == 0) continue;
        out.link(u, v);
    }
    if (a.first != 0 && b.second != 0) out.link(a.first, b.second);
    else if (a.first != 0) out.link(a.first, 0);
    if (b.first != 0 && a.second != 0) out.link(b.first, a.second);
    else if (b.first != 0) out.link(b.first, 0);
    return out;
}

}  // namespace

NodeMap refine_node_map(const LabeledGraph& g, const LabeledGraph& h, const NodeMap& start,
                        const EditCosts& costs, int max_sweeps, std::uint64_t seed) {
    NodeMap current = start;
    std::int64_t current_cost = path_cost(induced_edit_path(g, h, current), costs);
    std::mt19937_64 rng(seed);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const auto slots = map_slots(current);
        std::vector<std::size_t> order(slots.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        // scan order is randomized once per sweep; the sweep still inspects
        // every pair, so only tie-breaking depends on the seed
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
            std::swap(order[i], order[i + uniform_below(rng, order.size() - i)]);

        std::int64_t best_cost = current_cost;
        NodeMap best_map;
        for (std::size_t a = 0; a < order.size(); ++a) {
            for (std::size_t b = a + 1; b < order.size(); ++b) {
                const auto& sa = slots[order[a]];
                const auto& sb = slots[order[b]];
                if (sa.second == 0 && sb.second == 0) continue;  // both images empty
                if (sa.first == 0 && sb.first == 0) continue;    // both insertion slots
                NodeMap candidate = with_swapped_images(current, sa, sb);
                const std::int64_t cost = path_cost(induced_edit_path(g, h, candidate), costs);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_map = std::move(candidate);
                }
            }
        }
        if (best_cost >= current_cost) break;  // local minimum
        current = std::move(best_map);
        current_cost = best_cost;
    }
    return current;
}

namespace {

void enumerate_maps(const LabeledGraph& g, const LabeledGraph& h, const EditCosts& costs,
                    NodeId u, NodeMap& map, GedResult& best, bool& first) {
    if (u > g.node_count()) {
        const std::int64_t cost = path_cost(induced_edit_path(g, h, map), costs);
        if (first || cost < best.cost) {
            best = {map, cost};
            first = false;
        }
        return;
    }
    for (NodeId v = 0; v <= h.node_count(); ++v) {
        if (v != 0 && map.preimage(v) != 0) continue;
        map.link(u, v);
        enumerate_maps(g, h, costs, u + 1, map, best, first);
        map.link(u, 0);
    }
}

}  // namespace

GedResult exact_ged_bruteforce(const LabeledGraph& g, const LabeledGraph& h, const EditCosts& costs) {
    if (g.node_count() + h.node_count() > 12)
        throw Error("exact GED guard: graphs too large for exhaustive search");
    NodeMap map(g.node_count(), h.node_count());
    GedResult best{map, 0};
    bool first = true;
    enumerate_maps(g, h, costs, 1, map, best, first);
    return best;
}

std::optional<NodeMap> node_map_from_identifiers(const LabeledGraph& g, const LabeledGraph& h) {
    auto by_label = [](const LabeledGraph& graph) -> std::optional<std::map<LabelId, NodeId>> {
        std::map<LabelId, NodeId> index;
        for (NodeId v = 1; v <= graph.node_count(); ++v)
            if (!index.emplace(graph.node_label(v), v).second) return std::nullopt;
        return index;
    };
    const auto gi = by_label(g), hi = by_label(h);
    if (!gi || !hi) return std::nullopt;
    NodeMap map(g.node_count(), h.node_count());
    for (const auto& [label, u] : *gi) {
        auto it = hi->find(label);
        if (it != hi->end()) map.link(u, it->second);
    }
    return map;
}

}  // namespace mea
