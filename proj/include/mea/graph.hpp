#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mea/errors.hpp"

namespace mea {

using NodeId = int;   // 1-based node index; 0 means "no node"
using LabelId = int;  // index into a collection label table

// Unordered node pair, normalized to u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    Edge() = default;
    Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {
        if (a == b) throw Error("self-loop edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    auto operator<=>(const Edge&) const = default;
};

// Finite simple undirected graph with one label per node and per edge.
// Nodes are 1..node_count(); node_count() == 0 is the empty graph.
class LabeledGraph {
public:
    LabeledGraph() = default;

    int node_count() const { return static_cast<int>(node_labels_.size()); }
    int edge_count() const { return static_cast<int>(edge_labels_.size()); }
    bool empty() const { return node_labels_.empty(); }

    bool has_node(NodeId v) const { return v >= 1 && v <= node_count(); }
    bool has_edge(Edge e) const { return edge_labels_.count(e) != 0; }

    LabelId node_label(NodeId v) const;
    LabelId edge_label(Edge e) const;
    int degree(NodeId v) const;

    NodeId add_node(LabelId label);
    void add_edge(Edge e, LabelId label);
    void set_node_label(NodeId v, LabelId label);  // rejects relabeling to the current label
    void set_edge_label(Edge e, LabelId label);
    void remove_edge(Edge e);
    // Removes the given nodes together with their incident edges and
    // renumbers the survivors to 1..m, preserving their relative order.
    void remove_nodes(const std::vector<NodeId>& nodes);

    const std::vector<LabelId>& node_labels() const { return node_labels_; }
    const std::map<Edge, LabelId>& edges() const { return edge_labels_; }

    bool operator==(const LabeledGraph&) const = default;

private:
    std::vector<LabelId> node_labels_;
    std::map<Edge, LabelId> edge_labels_;
};

// An ordered set of graphs over shared label dictionaries. Label ids index
// into the tables; tables are built in first-occurrence order by the parsers.
struct GraphCollection {
    std::vector<LabeledGraph> graphs;
    std::vector<std::string> node_label_table;
    std::vector<std::string> edge_label_table;
    std::vector<std::string> names;  // parallel to graphs; "" = unnamed

    int size() const { return static_cast<int>(graphs.size()); }
    LabelId intern_node_label(const std::string& label);
    LabelId intern_edge_label(const std::string& label);
    void validate() const;
};

// Claims node i of graph A corresponds to node mapping[i-1] of graph B.
struct IsomorphismCertificate {
    std::vector<NodeId> mapping;
};

// True iff the certificate is a bijection that preserves node labels, edges,
// and edge labels in both directions. Invalid certificates return false.
bool check_certificate(const LabeledGraph& a, const LabeledGraph& b, const IsomorphismCertificate& cert);

IsomorphismCertificate invert_certificate(const IsomorphismCertificate& cert);

// Backtracking search for a label-preserving isomorphism (VF2-style pruning
// on labels, degrees, and mapped adjacency). Returns a certificate that
// check_certificate accepts, or nullopt if the graphs are not isomorphic.
std::optional<IsomorphismCertificate> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b);

enum class CollectionFormat { text, gxl };

GraphCollection parse_collection(std::string_view bytes, CollectionFormat format);
std::string serialize_collection(const GraphCollection& x, CollectionFormat format);

// Graph 1 equals base; graph i+1 applies ceil(rate * (|V|+|E|)) random valid
// edit operations to graph i, drawn uniformly over the applicable types.
// Labels come from the given tables. Pure function of its arguments.
GraphCollection generate_perturbation_chain(const LabeledGraph& base,
                                            std::vector<std::string> node_label_table,
                                            std::vector<std::string> edge_label_table,
                                            int n, double mutation_rate, std::uint64_t seed);

}  // namespace mea
