#include "mea/codec.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

namespace mea {

namespace {

constexpr char kMagic[4] = {'M', 'E', 'A', '1'};
constexpr std::uint8_t kVersion = 1;

int width_for_max(std::uint64_t max_value) {
    return max_value == 0 ? 0 : std::bit_width(max_value);
}

int table_width(std::size_t table_size) {
    return table_size <= 1 ? 0 : std::bit_width(table_size - 1);
}

std::uint64_t table_bits(const std::vector<std::string>& table) {
    std::uint64_t bits = 32;
    for (const std::string& entry : table) bits += 16 + 8 * entry.size();
    return bits;
}

std::int64_t max_stored_count(const EditPath& p) {
    const auto counts = p.stored_counts();
    return *std::max_element(counts.begin(), counts.end());
}

}  // namespace

EditCosts derive_costs(const CodecParams& p) {
    EditCosts c;
    c.node_relabel = p.node_bits + p.node_label_bits;
    c.node_deletion = p.node_bits;
    c.node_insertion = p.node_label_bits;
    c.edge_relabel = 2 * p.node_bits + p.edge_label_bits;
    c.edge_insertion = 2 * p.node_bits + p.edge_label_bits;
    c.edge_deletion = 2 * p.node_bits;
    c.implied_edge_deletion = 0;
    return c;
}

CodecParams plan_base_params(const GraphCollection& x) {
    CodecParams p;
    std::uint64_t max_nodes = 0;
    for (const LabeledGraph& g : x.graphs)
        max_nodes = std::max(max_nodes, static_cast<std::uint64_t>(g.node_count()));
    p.node_bits = width_for_max(max_nodes);
    p.node_label_bits = table_width(x.node_label_table.size());
    p.edge_label_bits = table_width(x.edge_label_table.size());
    p.parent_bits = width_for_max(static_cast<std::uint64_t>(x.size()));
    p.node_label_table = x.node_label_table;
    p.edge_label_table = x.edge_label_table;
    return p;
}

CodecParams plan_params(const GraphCollection& x, const EditArborescence& arb) {
    CodecParams p = plan_base_params(x);
    std::int64_t max_count = 0;
    for (const EditPath& path : arb.paths) max_count = std::max(max_count, max_stored_count(path));
    p.count_bits = width_for_max(static_cast<std::uint64_t>(max_count));
    return p;
}

void encode_path(BitWriter& out, const EditPath& p, const CodecParams& params) {
    for (std::int64_t count : p.stored_counts())
        out.write(static_cast<std::uint64_t>(count), params.count_bits);
    auto node = [&](NodeId v) { out.write(static_cast<std::uint64_t>(v), params.node_bits); };
    for (const Edge& e : p.edge_deletions) {
        node(e.u);
        node(e.v);
    }
    for (NodeId v : p.node_deletions) node(v);
    for (const auto& [v, label] : p.node_relabels) {
        node(v);
        out.write(static_cast<std::uint64_t>(label), params.node_label_bits);
    }
    for (const auto& [e, label] : p.edge_relabels) {
        node(e.u);
        node(e.v);
        out.write(static_cast<std::uint64_t>(label), params.edge_label_bits);
    }
    for (LabelId label : p.node_insertions)
        out.write(static_cast<std::uint64_t>(label), params.node_label_bits);
    for (const auto& [e, label] : p.edge_insertions) {
        node(e.u);
        node(e.v);
        out.write(static_cast<std::uint64_t>(label), params.edge_label_bits);
    }
}

EditPath decode_path(BitReader& in, const CodecParams& params) {
    std::array<std::int64_t, 6> counts;
    for (std::int64_t& c : counts) c = static_cast<std::int64_t>(in.read(params.count_bits));
    auto node = [&]() { return static_cast<NodeId>(in.read(params.node_bits)); };
    auto edge = [&]() {
        const NodeId u = node(), v = node();
        return Edge(u, v);
    };
    EditPath p;
    for (std::int64_t i = 0; i < counts[0]; ++i) p.edge_deletions.push_back(edge());
    for (std::int64_t i = 0; i < counts[1]; ++i) p.node_deletions.push_back(node());
    for (std::int64_t i = 0; i < counts[2]; ++i) {
        const NodeId v = node();
        p.node_relabels.emplace_back(v, static_cast<LabelId>(in.read(params.node_label_bits)));
    }
    for (std::int64_t i = 0; i < counts[3]; ++i) {
        const Edge e = edge();
        p.edge_relabels.emplace_back(e, static_cast<LabelId>(in.read(params.edge_label_bits)));
    }
    for (std::int64_t i = 0; i < counts[4]; ++i)
        p.node_insertions.push_back(static_cast<LabelId>(in.read(params.node_label_bits)));
    for (std::int64_t i = 0; i < counts[5]; ++i) {
        const Edge e = edge();
        p.edge_insertions.emplace_back(e, static_cast<LabelId>(in.read(params.edge_label_bits)));
    }
    return p;
}

namespace {

void write_header(BitWriter& out, const GraphCollection& x, const CodecParams& p) {
    for (char c : kMagic) out.write_byte(static_cast<std::uint8_t>(c));
    out.write_byte(kVersion);
    out.write_u32(static_cast<std::uint32_t>(x.size()));
    for (int width : {p.node_bits, p.node_label_bits, p.edge_label_bits, p.count_bits, p.parent_bits})
        out.write_byte(static_cast<std::uint8_t>(width));
    for (const auto* table : {&p.node_label_table, &p.edge_label_table}) {
        out.write_u32(static_cast<std::uint32_t>(table->size()));
        for (const std::string& entry : *table) {
            if (entry.size() > 0xffff) throw Error("label longer than 65535 bytes");
            out.write_u16(static_cast<std::uint16_t>(entry.size()));
            for (char c : entry) out.write_byte(static_cast<std::uint8_t>(c));
        }
    }
}

std::vector<std::vector<int>> children_of(const std::vector<int>& parents) {
    const int n = static_cast<int>(parents.size());
    std::vector<std::vector<int>> children(n + 1);
    for (int j = 1; j <= n; ++j) {
        const int p = parents[j - 1];
        if (p < 0 || p > n) throw ArchiveError("parent index out of range");
        children[p].push_back(j);  // ascending by construction
    }
    return children;
}

}  // namespace

std::uint64_t archive_header_bits(const GraphCollection& x) {
    return 8 * (4 + 1 + 4 + 5) + table_bits(x.node_label_table) + table_bits(x.edge_label_table);
}

EncodeResult encode_archive(const GraphCollection& x, const EditArborescence& arb) {
    const int n = x.size();
    if (arb.size() != n || static_cast<int>(arb.paths.size()) != n ||
        static_cast<int>(arb.maps.size()) != n)
        throw Error("arborescence does not match the collection");

    const CodecParams params = plan_params(x, arb);
    BitWriter out;
    write_header(out, x, params);
    for (int j = 1; j <= n; ++j)
        out.write(static_cast<std::uint64_t>(arb.parents[j - 1]), params.parent_bits);

    const std::vector<std::vector<int>> children = children_of(arb.parents);

    EncodeResult result;
    result.certificates.resize(n);

    // BFS re-labeling: each emitted graph is kept together with the node
    // positions its original form maps to; a child's map is rebased onto the
    // emitted parent before its induced path is encoded.
    std::vector<LabeledGraph> emitted(n + 1);
    std::vector<std::vector<NodeId>> positions(n + 1);  // original node -> emitted node
    std::deque<int> queue{0};
    int visited = 0;
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (const int j : children[i]) {
            ++visited;
            const NodeMap& original_map = arb.maps[j - 1];
            const int parent_nodes = i == 0 ? 0 : x.graphs[i - 1].node_count();
            if (original_map.source_size() != parent_nodes ||
                original_map.target_size() != x.graphs[j - 1].node_count())
                throw Error("node map does not match its arborescence edge");
            NodeMap rebased(emitted[i].node_count(), x.graphs[j - 1].node_count());
            for (NodeId u = 1; u <= original_map.source_size(); ++u) {
                const NodeId v = original_map.image(u);
                if (v != 0) rebased.link(positions[i][u - 1], v);
            }
            EditPath path = induced_edit_path(emitted[i], x.graphs[j - 1], rebased, &positions[j]);
            encode_path(out, path, params);
            emitted[j] = apply_edit_path(emitted[i], path);
            result.certificates[j - 1].mapping = positions[j];
            queue.push_back(j);
        }
    }
    if (visited != n) throw Error("parent array contains a cycle");

    result.payload_bits = out.bit_count();
    result.bytes = out.take();
    return result;
}

GraphCollection decode_archive(const std::uint8_t* data, std::size_t size) {
    BitReader in(data, size);
    char magic[4];
    try {
        for (char& c : magic) c = static_cast<char>(in.read_byte());
    } catch (const ArchiveError&) {
        throw ArchiveError("not an archive: too short");
    }
    if (!std::equal(magic, magic + 4, kMagic)) throw ArchiveError("bad magic");
    const std::uint8_t version = in.read_byte();
    if (version != kVersion)
        throw ArchiveError("unsupported archive version " + std::to_string(version));

    const std::uint32_t n = in.read_u32();
    CodecParams params;
    params.node_bits = in.read_byte();
    params.node_label_bits = in.read_byte();
    params.edge_label_bits = in.read_byte();
    params.count_bits = in.read_byte();
    params.parent_bits = in.read_byte();
    for (auto* table : {&params.node_label_table, &params.edge_label_table}) {
        const std::uint32_t entries = in.read_u32();
        table->reserve(entries);
        for (std::uint32_t i = 0; i < entries; ++i) {
            const std::uint16_t length = in.read_u16();
            std::string entry(length, '\0');
            for (char& c : entry) c = static_cast<char>(in.read_byte());
            table->push_back(std::move(entry));
        }
    }

    GraphCollection x;
    x.node_label_table = params.node_label_table;
    x.edge_label_table = params.edge_label_table;
    x.graphs.resize(n);
    x.names.resize(n);

    std::vector<int> parents(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        parents[j] = static_cast<int>(in.read(params.parent_bits));
        if (parents[j] > static_cast<int>(n)) throw ArchiveError("parent index out of range");
    }
    const std::vector<std::vector<int>> children = children_of(parents);

    std::vector<LabeledGraph> decoded(n + 1);
    std::deque<int> queue{0};
    std::uint32_t visited = 0;
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (const int j : children[i]) {
            ++visited;
            try {
                const EditPath path = decode_path(in, params);
                decoded[j] = apply_edit_path(decoded[i], path);
            } catch (const ArchiveError&) {
                throw;
            } catch (const Error& e) {
                throw ArchiveError("corrupt path for graph " + std::to_string(j) + ": " + e.what());
            }
            x.graphs[j - 1] = decoded[j];
            x.names[j - 1] = "g" + std::to_string(j);
            queue.push_back(j);
        }
    }
    if (visited != n) throw ArchiveError("parent array contains a cycle");
    if (in.bits_left() >= 8) throw ArchiveError("trailing bytes after the last path");
    while (in.bits_left() > 0)
        if (in.read(1) != 0) throw ArchiveError("nonzero padding bits");
    x.validate();
    return x;
}

GraphCollection decode_archive(const std::vector<std::uint8_t>& bytes) {
    return decode_archive(bytes.data(), bytes.size());
}

std::uint64_t star_size_bits(const GraphCollection& x, const CodecParams& params) {
    std::uint64_t max_count = 0;
    for (const LabeledGraph& g : x.graphs) {
        max_count = std::max(max_count, static_cast<std::uint64_t>(g.node_count()));
        max_count = std::max(max_count, static_cast<std::uint64_t>(g.edge_count()));
    }
    const int star_count_bits = width_for_max(max_count);
    std::uint64_t bits = archive_header_bits(x);
    bits += static_cast<std::uint64_t>(x.size()) * params.parent_bits;
    for (const LabeledGraph& g : x.graphs) {
        bits += 6ULL * star_count_bits;
        bits += static_cast<std::uint64_t>(g.node_count()) * params.node_label_bits;
        bits += static_cast<std::uint64_t>(g.edge_count()) * (2 * params.node_bits + params.edge_label_bits);
    }
    return bits;
}

ArchiveStats collect_stats(const GraphCollection& x, const EditArborescence& arb,
                           const CodecParams& params) {
    const EditCosts costs = derive_costs(params);
    ArchiveStats stats;
    stats.total_bits = archive_header_bits(x) + static_cast<std::uint64_t>(x.size()) * params.parent_bits;
    for (const EditPath& p : arb.paths) {
        stats.total_bits += 6ULL * params.count_bits + static_cast<std::uint64_t>(path_cost(p, costs));
        stats.arborescence_cost += path_cost(p, costs);
        stats.ops.edge_deletions += static_cast<std::int64_t>(p.edge_deletions.size());
        stats.ops.implied_edge_deletions += p.implied_edge_deletions;
        stats.ops.node_deletions += static_cast<std::int64_t>(p.node_deletions.size());
        stats.ops.node_relabels += static_cast<std::int64_t>(p.node_relabels.size());
        stats.ops.edge_relabels += static_cast<std::int64_t>(p.edge_relabels.size());
        stats.ops.node_insertions += static_cast<std::int64_t>(p.node_insertions.size());
        stats.ops.edge_insertions += static_cast<std::int64_t>(p.edge_insertions.size());
    }
    stats.star_bits = star_size_bits(x, params);
    stats.star_ratio = stats.star_bits == 0
                           ? 1.0
                           : static_cast<double>(stats.total_bits) / static_cast<double>(stats.star_bits);

    const int n = arb.size();
    std::vector<int> depth(n + 1, 0);
    std::vector<char> has_child(n + 1, 0);
    long long depth_sum = 0;
    for (int j = 1; j <= n; ++j) {
        int d = 0, node = j;
        while (node != 0) {
            node = arb.parents[node - 1];
            if (++d > n) throw Error("parent array contains a cycle");
        }
        depth[j] = d;
        depth_sum += d;
        stats.max_depth = std::max(stats.max_depth, d);
        if (arb.parents[j - 1] != 0) has_child[arb.parents[j - 1]] = 1;
    }
    for (int j = 1; j <= n; ++j)
        (has_child[j] ? stats.inner_count : stats.leaf_count) += 1;
    stats.mean_depth = n == 0 ? 0.0 : static_cast<double>(depth_sum) / n;
    return stats;
}

}  // namespace mea
