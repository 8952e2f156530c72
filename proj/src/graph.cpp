#include "mea/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mea/rng.hpp"

namespace mea {

LabelId LabeledGraph::node_label(NodeId v) const {
    if (!has_node(v)) throw Error("unknown node " + std::to_string(v));
    return node_labels_[v - 1];
}

LabelId LabeledGraph::edge_label(Edge e) const {
    auto it = edge_labels_.find(e);
    if (it == edge_labels_.end())
        throw Error("unknown edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    return it->second;
}

int LabeledGraph::degree(NodeId v) const {
    if (!has_node(v)) throw Error("unknown node " + std::to_string(v));
    int d = 0;
    for (const auto& [e, label] : edge_labels_)
        if (e.u == v || e.v == v) ++d;
    return d;
}

NodeId LabeledGraph::add_node(LabelId label) {
    node_labels_.push_back(label);
    return node_count();
}

void LabeledGraph::add_edge(Edge e, LabelId label) {
    if (!has_node(e.u) || !has_node(e.v))
        throw Error("edge endpoint out of range (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    if (!edge_labels_.emplace(e, label).second)
        throw Error("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
}

void LabeledGraph::set_node_label(NodeId v, LabelId label) {
    if (node_label(v) == label)
        throw Error("relabeling node " + std::to_string(v) + " to its current label");
    node_labels_[v - 1] = label;
}

void LabeledGraph::set_edge_label(Edge e, LabelId label) {
    if (edge_label(e) == label)
        throw Error("relabeling edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                    ") to its current label");
    edge_labels_[e] = label;
}

void LabeledGraph::remove_edge(Edge e) {
    if (edge_labels_.erase(e) == 0)
        throw Error("deleting unknown edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
}

void LabeledGraph::remove_nodes(const std::vector<NodeId>& nodes) {
    if (nodes.empty()) return;
    std::vector<char> gone(node_count() + 1, 0);
    for (NodeId v : nodes) {
        if (!has_node(v)) throw Error("deleting unknown node " + std::to_string(v));
        if (gone[v]) throw Error("node " + std::to_string(v) + " deleted twice");
        gone[v] = 1;
    }
    // survivors keep their relative order
    std::vector<NodeId> renumber(node_count() + 1, 0);
    std::vector<LabelId> labels;
    labels.reserve(node_count() - nodes.size());
    for (NodeId v = 1; v <= node_count(); ++v) {
        if (gone[v]) continue;
        labels.push_back(node_labels_[v - 1]);
        renumber[v] = static_cast<NodeId>(labels.size());
    }
    std::map<Edge, LabelId> edges;
    for (const auto& [e, label] : edge_labels_) {
        if (gone[e.u] || gone[e.v]) continue;
        edges.emplace(Edge(renumber[e.u], renumber[e.v]), label);
    }
    node_labels_ = std::move(labels);
    edge_labels_ = std::move(edges);
}

LabelId GraphCollection::intern_node_label(const std::string& label) {
    for (std::size_t i = 0; i < node_label_table.size(); ++i)
        if (node_label_table[i] == label) return static_cast<LabelId>(i);
    node_label_table.push_back(label);
    return static_cast<LabelId>(node_label_table.size() - 1);
}

LabelId GraphCollection::intern_edge_label(const std::string& label) {
    for (std::size_t i = 0; i < edge_label_table.size(); ++i)
        if (edge_label_table[i] == label) return static_cast<LabelId>(i);
    edge_label_table.push_back(label);
    return static_cast<LabelId>(edge_label_table.size() - 1);
}

void GraphCollection::validate() const {
    auto no_duplicates = [](const std::vector<std::string>& table) {
        std::unordered_set<std::string> seen(table.begin(), table.end());
        return seen.size() == table.size();
    };
    if (!no_duplicates(node_label_table) || !no_duplicates(edge_label_table))
        throw Error("label table contains duplicates");
    for (const LabeledGraph& g : graphs) {
        for (LabelId l : g.node_labels())
            if (l < 0 || l >= static_cast<int>(node_label_table.size()))
                throw Error("node label id out of table range");
        for (const auto& [e, l] : g.edges())
            if (l < 0 || l >= static_cast<int>(edge_label_table.size()))
                throw Error("edge label id out of table range");
    }
    if (!names.empty() && names.size() != graphs.size())
        throw Error("names not parallel to graphs");
}

bool check_certificate(const LabeledGraph& a, const LabeledGraph& b, const IsomorphismCertificate& cert) {
    const int n = a.node_count();
    if (b.node_count() != n) return false;
    if (static_cast<int>(cert.mapping.size()) != n) return false;
    if (a.edge_count() != b.edge_count()) return false;
    std::vector<char> hit(n + 1, 0);
    for (NodeId u = 1; u <= n; ++u) {
        const NodeId v = cert.mapping[u - 1];
        if (v < 1 || v > n || hit[v]) return false;
        hit[v] = 1;
        if (a.node_label(u) != b.node_label(v)) return false;
    }
    for (const auto& [e, label] : a.edges()) {
        const Edge image(cert.mapping[e.u - 1], cert.mapping[e.v - 1]);
        if (!b.has_edge(image) || b.edge_label(image) != label) return false;
    }
    // equal edge counts plus injective edge mapping give the reverse direction
    return true;
}

IsomorphismCertificate invert_certificate(const IsomorphismCertificate& cert) {
    IsomorphismCertificate inv;
    inv.mapping.assign(cert.mapping.size(), 0);
    for (std::size_t i = 0; i < cert.mapping.size(); ++i) {
        const NodeId v = cert.mapping[i];
        if (v < 1 || v > static_cast<NodeId>(cert.mapping.size()))
            throw Error("certificate is not a bijection");
        inv.mapping[v - 1] = static_cast<NodeId>(i + 1);
    }
    return inv;
}

namespace {

struct IsoSearch {
    const LabeledGraph& a;
    const LabeledGraph& b;
    std::vector<std::vector<NodeId>> adj_a, adj_b;
    std::vector<NodeId> a_to_b, b_to_a;
    std::vector<NodeId> order;
    long long budget = 100'000'000;

    IsoSearch(const LabeledGraph& a_, const LabeledGraph& b_) : a(a_), b(b_) {
        adj_a = adjacency(a);
        adj_b = adjacency(b);
        a_to_b.assign(a.node_count() + 1, 0);
        b_to_a.assign(b.node_count() + 1, 0);
    }

    static std::vector<std::vector<NodeId>> adjacency(const LabeledGraph& g) {
        std::vector<std::vector<NodeId>> adj(g.node_count() + 1);
        for (const auto& [e, label] : g.edges()) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }

    bool feasible(NodeId u, NodeId v) {
        if (a.node_label(u) != b.node_label(v)) return false;
        if (adj_a[u].size() != adj_b[v].size()) return false;
        int mapped_a = 0;
        for (NodeId w : adj_a[u]) {
            const NodeId img = a_to_b[w];
            if (img == 0) continue;
            ++mapped_a;
            const Edge eb(v, img);
            if (!b.has_edge(eb) || b.edge_label(eb) != a.edge_label(Edge(u, w))) return false;
        }
        int mapped_b = 0;
        for (NodeId w : adj_b[v])
            if (b_to_a[w] != 0) ++mapped_b;
        return mapped_a == mapped_b;
    }

    bool extend(std::size_t depth) {
        if (--budget <= 0) throw Error("isomorphism search budget exhausted");
        if (depth == order.size()) return true;
        const NodeId u = order[depth];
        for (NodeId v = 1; v <= b.node_count(); ++v) {
            if (b_to_a[v] != 0 || !feasible(u, v)) continue;
            a_to_b[u] = v;
            b_to_a[v] = u;
            if (extend(depth + 1)) return true;
            a_to_b[u] = 0;
            b_to_a[v] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<IsomorphismCertificate> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return std::nullopt;
    auto sorted_labels = [](const std::vector<LabelId>& v) {
        std::vector<LabelId> s = v;
        std::sort(s.begin(), s.end());
        return s;
    };
    if (sorted_labels(a.node_labels()) != sorted_labels(b.node_labels())) return std::nullopt;
    {
        std::vector<LabelId> ea, eb;
        for (const auto& [e, l] : a.edges()) ea.push_back(l);
        for (const auto& [e, l] : b.edges()) eb.push_back(l);
        std::sort(ea.begin(), ea.end());
        std::sort(eb.begin(), eb.end());
        if (ea != eb) return std::nullopt;
    }

    IsoSearch search(a, b);
    // order nodes by connectivity to the already-ordered set, then degree
    const int n = a.node_count();
    std::vector<char> placed(n + 1, 0);
    std::vector<int> attached(n + 1, 0);
    for (int step = 0; step < n; ++step) {
        NodeId best = 0;
        for (NodeId u = 1; u <= n; ++u) {
            if (placed[u]) continue;
            if (best == 0 || attached[u] > attached[best] ||
                (attached[u] == attached[best] &&
                 search.adj_a[u].size() > search.adj_a[best].size()))
                best = u;
        }
        placed[best] = 1;
        search.order.push_back(best);
        for (NodeId w : search.adj_a[best]) ++attached[w];
    }
    if (!search.extend(0)) return std::nullopt;
    IsomorphismCertificate cert;
    cert.mapping.assign(search.a_to_b.begin() + 1, search.a_to_b.end());
    return cert;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;  // comment to end of line
        tokens.push_back(tok);
    }
    return tokens;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line_no);
    }
    if (pos != tok.size())
        throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line_no);
    return value;
}

struct PendingGraph {
    std::string name;
    int declared = -1;  // -1 until the n line was seen
    std::vector<LabelId> labels;   // -1 = not yet labeled
    std::vector<char> labeled;
    std::map<Edge, LabelId> edges;
    int start_line = 0;
};

void finish_graph(GraphCollection& out, PendingGraph& pg) {
    if (pg.declared < 0)
        throw ParseError("graph '" + pg.name + "' has no 'n' line", pg.start_line);
    for (int v = 1; v <= pg.declared; ++v)
        if (!pg.labeled[v - 1])
            throw ParseError("graph '" + pg.name + "': node " + std::to_string(v) + " has no label",
                             pg.start_line);
    LabeledGraph g;
    for (int v = 1; v <= pg.declared; ++v) g.add_node(pg.labels[v - 1]);
    for (const auto& [e, l] : pg.edges) g.add_edge(e, l);
    out.graphs.push_back(std::move(g));
    out.names.push_back(pg.name);
}

GraphCollection parse_text(std::string_view bytes) {
    GraphCollection out;
    std::optional<PendingGraph> current;
    std::istringstream stream{std::string(bytes)};
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "graph") {
            if (tok.size() != 2) throw ParseError("expected 'graph <name>'", line_no);
            if (current) finish_graph(out, *current);
            current = PendingGraph{};
            current->name = tok[1];
            current->start_line = line_no;
        } else if (!current) {
            throw ParseError("'" + kw + "' before any 'graph' line", line_no);
        } else if (kw == "n") {
            if (tok.size() != 2) throw ParseError("expected 'n <count>'", line_no);
            if (current->declared >= 0) throw ParseError("duplicate 'n' line", line_no);
            const int count = parse_int(tok[1], line_no, "node count");
            if (count < 0) throw ParseError("negative node count", line_no);
            current->declared = count;
            current->labels.assign(count, -1);
            current->labeled.assign(count, 0);
        } else if (kw == "v") {
            if (tok.size() != 3) throw ParseError("expected 'v <index> <label>'", line_no);
            if (current->declared < 0) throw ParseError("'v' before 'n'", line_no);
            const int v = parse_int(tok[1], line_no, "node index");
            if (v < 1 || v > current->declared)
                throw ParseError("node index " + std::to_string(v) + " out of range", line_no);
            if (current->labeled[v - 1])
                throw ParseError("node " + std::to_string(v) + " labeled twice", line_no);
            current->labels[v - 1] = out.intern_node_label(tok[2]);
            current->labeled[v - 1] = 1;
        } else if (kw == "e") {
            if (tok.size() != 4) throw ParseError("expected 'e <u> <v> <label>'", line_no);
            if (current->declared < 0) throw ParseError("'e' before 'n'", line_no);
            const int u = parse_int(tok[1], line_no, "node index");
            const int v = parse_int(tok[2], line_no, "node index");
            if (u < 1 || u > current->declared || v < 1 || v > current->declared)
                throw ParseError("edge endpoint out of range", line_no);
            if (u == v) throw ParseError("self-loop on node " + std::to_string(u), line_no);
            const Edge e(u, v);
            if (current->edges.count(e))
                throw ParseError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")",
                                 line_no);
            current->edges.emplace(e, out.intern_edge_label(tok[3]));
        } else {
            throw ParseError("unknown keyword '" + kw + "'", line_no);
        }
    }
    if (current) finish_graph(out, *current);
    return out;
}

void check_label_token(const std::string& label) {
    if (label.empty()) throw Error("empty label cannot be serialized to text");
    for (char c : label)
        if (c == '#' || static_cast<unsigned char>(c) <= ' ')
            throw Error("label '" + label + "' contains whitespace or '#'");
}

std::string serialize_text(const GraphCollection& x) {
    for (const std::string& l : x.node_label_table) check_label_token(l);
    for (const std::string& l : x.edge_label_table) check_label_token(l);
    std::ostringstream out;
    for (int i = 0; i < x.size(); ++i) {
        const LabeledGraph& g = x.graphs[i];
        const std::string name =
            (!x.names.empty() && !x.names[i].empty()) ? x.names[i] : "g" + std::to_string(i + 1);
        if (i) out << '\n';
        out << "graph " << name << '\n';
        out << "n " << g.node_count() << '\n';
        for (NodeId v = 1; v <= g.node_count(); ++v)
            out << "v " << v << ' ' << x.node_label_table.at(g.node_label(v)) << '\n';
        for (const auto& [e, l] : g.edges())
            out << "e " << e.u << ' ' << e.v << ' ' << x.edge_label_table.at(l) << '\n';
    }
    return out.str();
}

}  // namespace

GraphCollection parse_gxl(std::string_view bytes);       // gxl.cpp
std::string serialize_gxl(const GraphCollection& x);     // gxl.cpp

GraphCollection parse_collection(std::string_view bytes, CollectionFormat format) {
    GraphCollection x = format == CollectionFormat::text ? parse_text(bytes) : parse_gxl(bytes);
    x.validate();
    return x;
}

std::string serialize_collection(const GraphCollection& x, CollectionFormat format) {
    return format == CollectionFormat::text ? serialize_text(x) : serialize_gxl(x);
}

// ---------------------------------------------------------------------------
// synthetic chains

namespace {

enum class Mutation { node_insert, node_delete, node_relabel, edge_insert, edge_delete, edge_relabel };

std::vector<Mutation> applicable_mutations(const LabeledGraph& g, int node_alphabet, int edge_alphabet) {
    std::vector<Mutation> types;
    const int v = g.node_count();
    const long long max_edges = static_cast<long long>(v) * (v - 1) / 2;
    if (node_alphabet >= 1) types.push_back(Mutation::node_insert);
    if (v >= 1) types.push_back(Mutation::node_delete);
    if (v >= 1 && node_alphabet >= 2) types.push_back(Mutation::node_relabel);
    if (v >= 2 && g.edge_count() < max_edges && edge_alphabet >= 1) types.push_back(Mutation::edge_insert);
    if (g.edge_count() >= 1) types.push_back(Mutation::edge_delete);
    if (g.edge_count() >= 1 && edge_alphabet >= 2) types.push_back(Mutation::edge_relabel);
    return types;
}

Edge pick_edge(const LabeledGraph& g, std::mt19937_64& rng) {
    auto it = g.edges().begin();
    std::advance(it, uniform_below(rng, g.edge_count()));
    return it->first;
}

LabelId pick_other_label(int alphabet, LabelId current, std::mt19937_64& rng) {
    LabelId l = static_cast<LabelId>(uniform_below(rng, alphabet - 1));
    if (l >= current) ++l;
    return l;
}

void mutate_once(LabeledGraph& g, int node_alphabet, int edge_alphabet, std::mt19937_64& rng) {
    const std::vector<Mutation> types = applicable_mutations(g, node_alphabet, edge_alphabet);
    if (types.empty()) return;
    switch (types[uniform_below(rng, types.size())]) {
        case Mutation::node_insert:
            g.add_node(static_cast<LabelId>(uniform_below(rng, node_alphabet)));
            break;
        case Mutation::node_delete:
            g.remove_nodes({static_cast<NodeId>(1 + uniform_below(rng, g.node_count()))});
            break;
        case Mutation::node_relabel: {
            const NodeId v = static_cast<NodeId>(1 + uniform_below(rng, g.node_count()));
            g.set_node_label(v, pick_other_label(node_alphabet, g.node_label(v), rng));
            break;
        }
        case Mutation::edge_insert: {
            std::vector<Edge> missing;
            for (NodeId u = 1; u <= g.node_count(); ++u)
                for (NodeId v = u + 1; v <= g.node_count(); ++v)
                    if (!g.has_edge(Edge(u, v))) missing.emplace_back(u, v);
            g.add_edge(missing[uniform_below(rng, missing.size())],
                       static_cast<LabelId>(uniform_below(rng, edge_alphabet)));
            break;
        }
        case Mutation::edge_delete:
            g.remove_edge(pick_edge(g, rng));
            break;
        case Mutation::edge_relabel: {
            const Edge e = pick_edge(g, rng);
            g.set_edge_label(e, pick_other_label(edge_alphabet, g.edge_label(e), rng));
            break;
        }
    }
}

}  // namespace

GraphCollection generate_perturbation_chain(const LabeledGraph& base,
                                            std::vector<std::string> node_label_table,
                                            std::vector<std::string> edge_label_table,
                                            int n, double mutation_rate, std::uint64_t seed) {
    if (base.empty()) throw Error("perturbation chain needs a non-empty base graph");
    if (n < 1) throw Error("chain length must be at least 1");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw Error("mutation rate must be in [0, 1]");

    GraphCollection out;
    out.node_label_table = std::move(node_label_table);
    out.edge_label_table = std::move(edge_label_table);
    const int node_alphabet = static_cast<int>(out.node_label_table.size());
    const int edge_alphabet = static_cast<int>(out.edge_label_table.size());
    for (LabelId l : base.node_labels())
        if (l < 0 || l >= node_alphabet) throw Error("base node label outside the table");
    for (const auto& [e, l] : base.edges())
        if (l < 0 || l >= edge_alphabet) throw Error("base edge label outside the table");

    std::mt19937_64 rng(seed);
    out.graphs.push_back(base);
    out.names.push_back("g1");
    for (int i = 2; i <= n; ++i) {
        LabeledGraph g = out.graphs.back();
        const int ops =
            static_cast<int>(std::ceil(mutation_rate * (g.node_count() + g.edge_count())));
        for (int op = 0; op < ops; ++op) mutate_once(g, node_alphabet, edge_alphabet, rng);
        out.graphs.push_back(std::move(g));
        out.names.push_back("g" + std::to_string(i));
    }
    return out;
}

}  // namespace mea
