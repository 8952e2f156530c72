#include "mea/msa.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace mea {

void WeightedDigraph::validate() const {
    if (node_count < 0) throw Error("negative node count");
    for (const DigraphEdge& e : edges) {
        if (e.source < 0 || e.source > node_count || e.target < 1 || e.target > node_count)
            throw Error("digraph edge endpoint out of range");
        if (e.source == e.target) throw Error("digraph self-loop");
        if (e.weight < 0.0 || !std::isfinite(e.weight)) throw Error("digraph edge weight must be non-negative");
    }
}

namespace {

// Weights live in the ordered group R x Z^n with lexicographic comparison.
// The secondary component of edge (s, t) is s at position t, so an
// arborescence's secondary total is exactly its parent vector; minimizing
// composite weight therefore yields the minimum-weight arborescence with the
// lexicographically smallest parent vector. The group structure survives the
// reduced-cost updates of the contraction loop unchanged.
struct Secondary {
    std::vector<std::pair<int, long long>> terms;  // sorted by position, zeros dropped

    static Secondary unit(int position, long long coefficient) {
        Secondary s;
        if (coefficient != 0) s.terms.emplace_back(position, coefficient);
        return s;
    }

    void subtract(const Secondary& o) {
        std::vector<std::pair<int, long long>> merged;
        merged.reserve(terms.size() + o.terms.size());
        std::size_t i = 0, j = 0;
        while (i < terms.size() || j < o.terms.size()) {
            if (j == o.terms.size() || (i < terms.size() && terms[i].first < o.terms[j].first)) {
                merged.push_back(terms[i++]);
            } else if (i == terms.size() || o.terms[j].first < terms[i].first) {
                merged.emplace_back(o.terms[j].first, -o.terms[j].second);
                ++j;
            } else {
                const long long c = terms[i].second - o.terms[j].second;
                if (c != 0) merged.emplace_back(terms[i].first, c);
                ++i, ++j;
            }
        }
        terms = std::move(merged);
    }

    // lexicographic: earlier positions dominate, missing position = 0
    int compare(const Secondary& o) const {
        std::size_t i = 0, j = 0;
        while (i < terms.size() || j < o.terms.size()) {
            long long a = 0, b = 0;
            int pa = i < terms.size() ? terms[i].first : INT_MAX;
            int pb = j < o.terms.size() ? o.terms[j].first : INT_MAX;
            if (pa <= pb) a = terms[i].second;
            if (pb <= pa) b = o.terms[j].second;
            if (a != b) return a < b ? -1 : 1;
            if (pa <= pb) ++i;
            if (pb <= pa) ++j;
        }
        return 0;
    }
};

struct Weight {
    double primary = 0.0;
    Secondary sec;

    void subtract(const Weight& o) {
        primary -= o.primary;
        sec.subtract(o.sec);
    }
    int compare(const Weight& o) const {
        if (primary != o.primary) return primary < o.primary ? -1 : 1;
        return sec.compare(o.sec);
    }
};

struct Contraction {
    int super;
    std::vector<int> members;
    std::vector<int> chosen;  // edge id chosen inside the cycle, per member
};

}  // namespace

MsaResult min_spanning_arborescence(const WeightedDigraph& g) {
    g.validate();
    const int n = g.node_count;
    MsaResult result;
    result.arb.parents.assign(n, 0);
    if (n == 0) return result;

    const int edge_count = static_cast<int>(g.edges.size());
    std::vector<Weight> weight(edge_count);
    for (int e = 0; e < edge_count; ++e)
        weight[e] = {g.edges[e].weight, Secondary::unit(g.edges[e].target, g.edges[e].source)};

    std::vector<int> absorbed_by(n + 1, -1);  // node -> direct supernode, -1 while top-level
    auto find = [&](int v) {
        while (absorbed_by[v] != -1) v = absorbed_by[v];
        return v;
    };

    std::vector<Contraction> contractions;
    std::vector<int> chosen;  // per top-level node, the current min in-edge

    while (true) {
        const int ids = static_cast<int>(absorbed_by.size());
        chosen.assign(ids, -1);
        const int root = find(0);
        for (int e = 0; e < edge_count; ++e) {
            const int t = find(g.edges[e].target);
            if (t == root || find(g.edges[e].source) == t) continue;
            int& best = chosen[t];
            if (best == -1) {
                best = e;
                continue;
            }
            const int cmp = weight[e].compare(weight[best]);
            if (cmp < 0 ||
                (cmp == 0 && std::pair(g.edges[e].source, g.edges[e].target) <
                                 std::pair(g.edges[best].source, g.edges[best].target)))
                best = e;
        }
        for (int v = 0; v < ids; ++v)
            if (v != root && absorbed_by[v] == -1 && chosen[v] == -1)
                throw Error("no arborescence: some node is unreachable from the root");

        // find a cycle among the chosen edges
        std::vector<int> state(ids, 0);  // 0 unseen, 1 on path, 2 done
        std::vector<int> cycle;
        for (int v = 0; v < ids && cycle.empty(); ++v) {
            if (absorbed_by[v] != -1 || state[v] != 0) continue;
            int x = v;
            std::vector<int> path;
            while (x != root && state[x] == 0) {
                state[x] = 1;
                path.push_back(x);
                x = find(g.edges[chosen[x]].source);
            }
            if (x != root && state[x] == 1) {
                auto it = std::find(path.begin(), path.end(), x);
                cycle.assign(it, path.end());
            }
            for (int y : path) state[y] = 2;
        }
        if (cycle.empty()) break;

        // contract: reduce every in-edge of a member by that member's
        // chosen weight, then absorb the members into a fresh supernode
        Contraction rec;
        rec.super = ids;
        rec.members = cycle;
        for (int m : cycle) rec.chosen.push_back(chosen[m]);
        std::vector<Weight> reduction;
        for (int m : cycle) reduction.push_back(weight[chosen[m]]);
        for (int e = 0; e < edge_count; ++e) {
            const int t = find(g.edges[e].target);
            for (std::size_t c = 0; c < cycle.size(); ++c)
                if (t == cycle[c]) weight[e].subtract(reduction[c]);
        }
        absorbed_by.push_back(-1);
        for (int m : cycle) absorbed_by[m] = rec.super;
        contractions.push_back(std::move(rec));
    }

    // expansion: the entry edge of a contracted cycle displaces the cycle's
    // own edge into the member containing the entry target
    std::vector<int> entry(absorbed_by.size(), -1);
    for (int v = 0; v < static_cast<int>(absorbed_by.size()); ++v)
        if (absorbed_by[v] == -1 && v != find(0)) entry[v] = chosen[v];
    for (auto rec = contractions.rbegin(); rec != contractions.rend(); ++rec) {
        const int e = entry[rec->super];
        int x = g.edges[e].target;
        while (absorbed_by[x] != rec->super) x = absorbed_by[x];
        for (std::size_t c = 0; c < rec->members.size(); ++c) {
            const int m = rec->members[c];
            entry[m] = (m == x) ? e : rec->chosen[c];
        }
    }
    for (int v = 1; v <= n; ++v) {
        const DigraphEdge& e = g.edges[entry[v]];
        result.arb.parents[v - 1] = e.source;
        result.weight += e.weight;
    }
    return result;
}

MsaResult enumerate_min_arborescence(const WeightedDigraph& g) {
    g.validate();
    const int n = g.node_count;
    if (n > 7) throw Error("enumeration guard: more than 7 nodes");
    MsaResult best;
    best.arb.parents.assign(n, 0);
    if (n == 0) return best;

    // cheapest parallel edge per (source, target) pair
    std::map<std::pair<int, int>, double> wmin;
    for (const DigraphEdge& e : g.edges) {
        auto [it, inserted] = wmin.emplace(std::pair(e.source, e.target), e.weight);
        if (!inserted) it->second = std::min(it->second, e.weight);
    }
    std::vector<std::vector<std::pair<int, double>>> parents_of(n + 1);  // ascending sources
    for (const auto& [st, w] : wmin) parents_of[st.second].emplace_back(st.first, w);

    std::vector<int> parents(n, 0);
    bool found = false;
    double best_weight = 0.0;

    auto acyclic = [&]() {
        for (int v = 1; v <= n; ++v) {
            int x = v, steps = 0;
            while (x != 0 && steps <= n) {
                x = parents[x - 1];
                ++steps;
            }
            if (x != 0) return false;
        }
        return true;
    };

    auto recurse = [&](auto&& self, int v, double acc) -> void {
        if (v > n) {
            if (acyclic() && (!found || acc < best_weight)) {
                found = true;
                best_weight = acc;
                best.arb.parents = parents;
            }
            return;
        }
        for (const auto& [p, w] : parents_of[v]) {
            parents[v - 1] = p;
            self(self, v + 1, acc + w);
        }
    };
    recurse(recurse, 1, 0.0);
    if (!found) throw Error("no arborescence: some node is unreachable from the root");
    best.weight = best_weight;
    return best;
}

}  // namespace mea
