#include "mea/edit.hpp"

#include <algorithm>

namespace mea {

NodeMap NodeMap::identity(int n) {
    NodeMap m(n, n);
    for (NodeId u = 1; u <= n; ++u) m.link(u, u);
    return m;
}

void NodeMap::link(NodeId u, NodeId v) {
    if (u != 0 && (u < 1 || u > source_size())) throw Error("node map source out of range");
    if (v != 0 && (v < 1 || v > target_size())) throw Error("node map target out of range");
    if (u != 0) {
        const NodeId old = forward_[u - 1];
        if (old != 0) backward_[old - 1] = 0;
    }
    if (v != 0) {
        const NodeId old = backward_[v - 1];
        if (old != 0) forward_[old - 1] = 0;
    }
    if (u != 0) forward_[u - 1] = v;
    if (v != 0) backward_[v - 1] = u;
}

bool NodeMap::consistent() const {
    for (NodeId u = 1; u <= source_size(); ++u) {
        const NodeId v = forward_[u - 1];
        if (v < 0 || v > target_size()) return false;
        if (v != 0 && backward_[v - 1] != u) return false;
    }
    for (NodeId v = 1; v <= target_size(); ++v) {
        const NodeId u = backward_[v - 1];
        if (u < 0 || u > source_size()) return false;
        if (u != 0 && forward_[u - 1] != v) return false;
    }
    return true;
}

NodeMap compose_node_maps(const NodeMap& first, const NodeMap& second) {
    if (first.target_size() != second.source_size())
        throw Error("node map composition: sizes do not match");
    NodeMap out(first.source_size(), second.target_size());
    for (NodeId u = 1; u <= first.source_size(); ++u) {
        const NodeId mid = first.image(u);
        if (mid == 0) continue;
        const NodeId v = second.image(mid);
        if (v != 0) out.link(u, v);
    }
    return out;
}

NodeMap invert_node_map(const NodeMap& m) {
    NodeMap out(m.target_size(), m.source_size());
    for (NodeId v = 1; v <= m.target_size(); ++v) {
        const NodeId u = m.preimage(v);
        if (u != 0) out.link(v, u);
    }
    return out;
}

std::int64_t path_cost(const EditPath& p, const EditCosts& c) {
    return c.edge_deletion * static_cast<std::int64_t>(p.edge_deletions.size()) +
           c.implied_edge_deletion * p.implied_edge_deletions +
           c.node_deletion * static_cast<std::int64_t>(p.node_deletions.size()) +
           c.node_relabel * static_cast<std::int64_t>(p.node_relabels.size()) +
           c.edge_relabel * static_cast<std::int64_t>(p.edge_relabels.size()) +
           c.node_insertion * static_cast<std::int64_t>(p.node_insertions.size()) +
           c.edge_insertion * static_cast<std::int64_t>(p.edge_insertions.size());
}

EditPath induced_edit_path(const LabeledGraph& source, const LabeledGraph& target,
                           const NodeMap& map, std::vector<NodeId>* target_positions) {
    if (map.source_size() != source.node_count() || map.target_size() != target.node_count() ||
        !map.consistent())
        throw Error("inconsistent node map");

    EditPath p;
    // survivors packed to 1..m in source order; insertions follow
    std::vector<NodeId> renumber(source.node_count() + 1, 0);
    std::vector<NodeId> position(target.node_count() + 1, 0);
    NodeId next = 0;
    for (NodeId u = 1; u <= source.node_count(); ++u) {
        const NodeId v = map.image(u);
        if (v == 0) {
            p.node_deletions.push_back(u);
        } else {
            renumber[u] = ++next;
            position[v] = renumber[u];
            if (source.node_label(u) != target.node_label(v))
                p.node_relabels.emplace_back(renumber[u], target.node_label(v));
        }
    }
    for (NodeId v = 1; v <= target.node_count(); ++v) {
        if (map.preimage(v) != 0) continue;
        p.node_insertions.push_back(target.node_label(v));
        position[v] = ++next;
    }

    for (const auto& [e, label] : source.edges()) {
        const NodeId iu = map.image(e.u), iv = map.image(e.v);
        if (iu == 0 || iv == 0) {
            ++p.implied_edge_deletions;
            continue;
        }
        const Edge image(iu, iv);
        if (!target.has_edge(image)) {
            p.edge_deletions.push_back(e);
        } else if (target.edge_label(image) != label) {
            p.edge_relabels.emplace_back(Edge(renumber[e.u], renumber[e.v]), target.edge_label(image));
        }
    }
    for (const auto& [e, label] : target.edges()) {
        const NodeId pu = map.preimage(e.u), pv = map.preimage(e.v);
        if (pu != 0 && pv != 0 && source.has_edge(Edge(pu, pv))) continue;
        p.edge_insertions.emplace_back(Edge(position[e.u], position[e.v]), label);
    }
    std::sort(p.edge_relabels.begin(), p.edge_relabels.end());
    std::sort(p.edge_insertions.begin(), p.edge_insertions.end());

    if (target_positions)
        target_positions->assign(position.begin() + 1, position.end());
    return p;
}

LabeledGraph apply_edit_path(const LabeledGraph& g, const EditPath& p) {
    LabeledGraph out = g;
    if (!p.node_deletions.empty()) {
        std::vector<char> deleted(g.node_count() + 1, 0);
        for (NodeId v : p.node_deletions) {
            if (v < 1 || v > g.node_count()) throw Error("deleting unknown node " + std::to_string(v));
            deleted[v] = 1;
        }
        for (const Edge& e : p.edge_deletions)
            if ((g.has_node(e.u) && deleted[e.u]) || (g.has_node(e.v) && deleted[e.v]))
                throw Error("edge deletion touches a deleted node");
    }
    for (const Edge& e : p.edge_deletions) out.remove_edge(e);
    out.remove_nodes(p.node_deletions);
    for (const auto& [v, label] : p.node_relabels) out.set_node_label(v, label);
    for (LabelId label : p.node_insertions) out.add_node(label);
    for (const auto& [e, label] : p.edge_relabels) out.set_edge_label(e, label);
    for (const auto& [e, label] : p.edge_insertions) out.add_edge(e, label);
    return out;
}

EditPath insertion_path_from_empty(const LabeledGraph& g) {
    EditPath p;
    p.node_insertions = g.node_labels();
    for (const auto& [e, label] : g.edges()) p.edge_insertions.emplace_back(e, label);
    return p;
}

}  // namespace mea
