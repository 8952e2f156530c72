#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mea/codec.hpp"

namespace py = pybind11;
using namespace mea;

namespace {

CollectionFormat format_from_name(const std::string& name) {
    if (name == "text") return CollectionFormat::text;
    if (name == "gxl") return CollectionFormat::gxl;
    throw std::invalid_argument("format must be 'text' or 'gxl'");
}

MeaConfig config_from_kwargs(double k, bool k_is_fraction, std::uint64_t seed, bool refine,
                             int refine_iters, const std::vector<std::pair<int, int>>& prior_edges,
                             bool identifier_maps, int threads) {
    MeaConfig cfg;
    cfg.k = k;
    cfg.k_is_fraction = k_is_fraction;
    cfg.seed = seed;
    cfg.refine_selected = refine;
    cfg.refine_iters = refine_iters;
    cfg.prior_edges = prior_edges;
    cfg.use_identifier_maps = identifier_maps;
    cfg.threads = threads;
    return cfg;
}

py::dict stats_dict(const ArchiveStats& s) {
    py::dict d;
    d["total_bits"] = s.total_bits;
    d["star_bits"] = s.star_bits;
    d["star_ratio"] = s.star_ratio;
    d["arborescence_cost"] = s.arborescence_cost;
    d["mean_depth"] = s.mean_depth;
    d["max_depth"] = s.max_depth;
    d["leaves"] = s.leaf_count;
    d["inner"] = s.inner_count;
    py::dict ops;
    ops["ni_ed"] = s.ops.edge_deletions;
    ops["i_ed"] = s.ops.implied_edge_deletions;
    ops["nd"] = s.ops.node_deletions;
    ops["nr"] = s.ops.node_relabels;
    ops["er"] = s.ops.edge_relabels;
    ops["ni"] = s.ops.node_insertions;
    ops["ei"] = s.ops.edge_insertions;
    d["ops"] = ops;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "lossless compression of labeled graph collections via edit arborescences";

    py::register_exception<ParseError>(m, "GraphParseError", PyExc_ValueError);
    py::register_exception<ArchiveError>(m, "ArchiveError", PyExc_ValueError);

    py::class_<LabeledGraph>(m, "LabeledGraph")
        .def(py::init<>())
        .def_property_readonly("node_count", &LabeledGraph::node_count)
        .def_property_readonly("edge_count", &LabeledGraph::edge_count)
        .def("node_label", &LabeledGraph::node_label, py::arg("v"))
        .def("add_node", &LabeledGraph::add_node, py::arg("label"))
        .def("add_edge",
             [](LabeledGraph& g, NodeId u, NodeId v, LabelId label) { g.add_edge(Edge(u, v), label); },
             py::arg("u"), py::arg("v"), py::arg("label"))
        .def("edges",
             [](const LabeledGraph& g) {
                 std::vector<std::tuple<int, int, int>> out;
                 for (const auto& [e, l] : g.edges()) out.emplace_back(e.u, e.v, l);
                 return out;
             })
        .def_property_readonly("node_labels", &LabeledGraph::node_labels)
        .def("__eq__", [](const LabeledGraph& a, const LabeledGraph& b) { return a == b; })
        .def("__repr__", [](const LabeledGraph& g) {
            return "<LabeledGraph nodes=" + std::to_string(g.node_count()) +
                   " edges=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<GraphCollection>(m, "GraphCollection")
        .def(py::init<>())
        .def_readonly("graphs", &GraphCollection::graphs)
        .def_readonly("node_label_table", &GraphCollection::node_label_table)
        .def_readonly("edge_label_table", &GraphCollection::edge_label_table)
        .def_readonly("names", &GraphCollection::names)
        .def("__len__", &GraphCollection::size);

    m.def(
        "parse_collection",
        [](const std::string& text, const std::string& format) {
            return parse_collection(text, format_from_name(format));
        },
        py::arg("text"), py::arg("format") = "text");

    m.def(
        "serialize_collection",
        [](const GraphCollection& x, const std::string& format) {
            return serialize_collection(x, format_from_name(format));
        },
        py::arg("collection"), py::arg("format") = "text");

    m.def("generate_perturbation_chain", &generate_perturbation_chain, py::arg("base"),
          py::arg("node_label_table"), py::arg("edge_label_table"), py::arg("n"), py::arg("rate"),
          py::arg("seed"));

    m.def(
        "compress",
        [](const GraphCollection& x, double k, bool k_is_fraction, std::uint64_t seed, bool refine,
           int refine_iters, const std::vector<std::pair<int, int>>& prior_edges, bool identifier_maps,
           int threads, bool verify) {
            const MeaConfig cfg = config_from_kwargs(k, k_is_fraction, seed, refine, refine_iters,
                                                     prior_edges, identifier_maps, threads);
            const EditArborescence arb = solve_mea(x, derive_costs(plan_base_params(x)), cfg);
            const EncodeResult encoded = encode_archive(x, arb);
            if (verify) {
                const GraphCollection decoded = decode_archive(encoded.bytes);
                for (int i = 0; i < x.size(); ++i)
                    if (!check_certificate(x.graphs[i], decoded.graphs[i], encoded.certificates[i]))
                        throw ArchiveError("roundtrip verification failed on graph " +
                                           std::to_string(i + 1));
            }
            const ArchiveStats stats = collect_stats(x, arb, plan_params(x, arb));
            return py::make_tuple(py::bytes(reinterpret_cast<const char*>(encoded.bytes.data()),
                                            encoded.bytes.size()),
                                  stats_dict(stats));
        },
        py::arg("collection"), py::arg("k") = 0.4, py::arg("k_is_fraction") = true,
        py::arg("seed") = 0, py::arg("refine") = false, py::arg("refine_iters") = 32,
        py::arg("prior_edges") = std::vector<std::pair<int, int>>{},
        py::arg("identifier_maps") = false, py::arg("threads") = 1, py::arg("verify") = false,
        "Returns (archive_bytes, stats).");

    m.def(
        "decompress",
        [](py::bytes data) {
            py::buffer_info info(py::buffer(data).request());
            return decode_archive(static_cast<const std::uint8_t*>(info.ptr),
                                  static_cast<std::size_t>(info.size));
        },
        py::arg("archive"));

    m.def(
        "is_isomorphic",
        [](const LabeledGraph& a, const LabeledGraph& b) { return find_isomorphism(a, b).has_value(); },
        py::arg("a"), py::arg("b"));

    m.attr("__version__") = "0.1.0";
}
