#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mea/graph.hpp"

namespace mea {

// Bits charged per operation of each type. Implied edge deletions ride along
// with the deletion of an endpoint and normally cost zero.
struct EditCosts {
    std::int64_t edge_deletion = 0;          // both endpoints survive
    std::int64_t implied_edge_deletion = 0;  // an endpoint is deleted
    std::int64_t node_deletion = 0;
    std::int64_t node_relabel = 0;
    std::int64_t edge_relabel = 0;
    std::int64_t node_insertion = 0;
    std::int64_t edge_insertion = 0;
};

// Partial matching between two node sets. Unmatched nodes map to 0; the
// forward and backward directions are kept mutually consistent.
class NodeMap {
public:
    NodeMap() = default;
    NodeMap(int source_size, int target_size)
        : forward_(source_size, 0), backward_(target_size, 0) {}

    static NodeMap identity(int n);

    int source_size() const { return static_cast<int>(forward_.size()); }
    int target_size() const { return static_cast<int>(backward_.size()); }

    NodeId image(NodeId u) const { return forward_.at(u - 1); }
    NodeId preimage(NodeId v) const { return backward_.at(v - 1); }

    // Pairs u with v, detaching any previous partner of either side.
    // u == 0 leaves v unmatched; v == 0 leaves u unmatched.
    void link(NodeId u, NodeId v);

    const std::vector<NodeId>& forward() const { return forward_; }
    const std::vector<NodeId>& backward() const { return backward_; }

    bool consistent() const;
    bool operator==(const NodeMap&) const = default;

private:
    std::vector<NodeId> forward_;
    std::vector<NodeId> backward_;
};

// (second ∘ first); unmatched nodes stay unmatched through the composition.
NodeMap compose_node_maps(const NodeMap& first, const NodeMap& second);

NodeMap invert_node_map(const NodeMap& m);

// One source-to-target delta, grouped by operation type.
//
// Reference numbering follows the application stages: edge_deletions and
// node_deletions use the source numbering; node_relabels and edge_relabels
// use the post-deletion numbering (survivors packed to 1..m in source
// order); edge_insertions use the final numbering where inserted nodes are
// m+1, m+2, ... in node_insertions order.
struct EditPath {
    std::vector<Edge> edge_deletions;
    std::vector<NodeId> node_deletions;
    std::vector<std::pair<NodeId, LabelId>> node_relabels;
    std::vector<std::pair<Edge, LabelId>> edge_relabels;
    std::vector<LabelId> node_insertions;
    std::vector<std::pair<Edge, LabelId>> edge_insertions;
    // Count of source edges incident to a deleted node. Derivable from
    // node_deletions, kept for cost accounting; never stored in archives.
    std::int64_t implied_edge_deletions = 0;

    bool empty() const {
        return edge_deletions.empty() && node_deletions.empty() && node_relabels.empty() &&
               edge_relabels.empty() && node_insertions.empty() && edge_insertions.empty();
    }

    // Sizes of the six stored operation lists, in stream order.
    std::array<std::int64_t, 6> stored_counts() const {
        return {static_cast<std::int64_t>(edge_deletions.size()),
                static_cast<std::int64_t>(node_deletions.size()),
                static_cast<std::int64_t>(node_relabels.size()),
                static_cast<std::int64_t>(edge_relabels.size()),
                static_cast<std::int64_t>(node_insertions.size()),
                static_cast<std::int64_t>(edge_insertions.size())};
    }
};

std::int64_t path_cost(const EditPath& p, const EditCosts& costs);

// The edit path induced by a node map: unmatched source nodes are deleted,
// unmatched target nodes inserted, label mismatches become relabels, and
// edge operations follow from the endpoint pairs. Applying the result to
// `source` reproduces `target` up to the renumbering reported through
// `target_positions` (target node v ends up as node target_positions[v-1]).
EditPath induced_edit_path(const LabeledGraph& source, const LabeledGraph& target,
                           const NodeMap& map, std::vector<NodeId>* target_positions = nullptr);

// Applies the stages in decode order: edge deletions, node deletions (with
// their incident edges), renumbering, node relabels, node insertions, edge
// relabels, edge insertions. Throws on references to missing nodes or edges,
// relabels to the current label, or insertion of an existing edge.
LabeledGraph apply_edit_path(const LabeledGraph& g, const EditPath& p);

// Builds g from the empty graph; minimal whenever all costs are positive.
EditPath insertion_path_from_empty(const LabeledGraph& g);

}  // namespace mea
