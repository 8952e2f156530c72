#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <map>
#include <sstream>
#include <string>

#include "mea/graph.hpp"

// Declared GXL subset: a <gxl> root (or a bare <graph>), undirected graphs,
// and exactly one <attr name="label"><string> per node and edge. Anything
// else is rejected rather than guessed at.

namespace mea {

namespace {

namespace pt = boost::property_tree;

bool meta_key(const std::string& key) { return key == "<xmlattr>" || key == "<xmlcomment>"; }

void check_attributes(const pt::ptree& element, const char* what,
                      std::initializer_list<const char*> allowed) {
    auto attrs = element.get_child_optional("<xmlattr>");
    if (!attrs) return;
    for (const auto& [key, value] : *attrs) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ParseError(std::string(what) + ": unsupported attribute '" + key + "'");
    }
}

std::string required_attribute(const pt::ptree& element, const char* what, const char* name) {
    auto value = element.get_optional<std::string>(std::string("<xmlattr>.") + name);
    if (!value) throw ParseError(std::string(what) + ": missing attribute '" + name + "'");
    return *value;
}

std::string label_of(const pt::ptree& element, const char* what) {
    const pt::ptree* attr = nullptr;
    for (const auto& [key, child] : element) {
        if (meta_key(key)) continue;
        if (key != "attr")
            throw ParseError(std::string(what) + ": unsupported element '" + key + "'");
        if (attr) throw ParseError(std::string(what) + ": more than one <attr>");
        attr = &child;
    }
    if (!attr) throw ParseError(std::string(what) + ": missing <attr name=\"label\">");
    check_attributes(*attr, what, {"name"});
    if (required_attribute(*attr, what, "name") != "label")
        throw ParseError(std::string(what) + ": only the 'label' attr is supported");
    const pt::ptree* value = nullptr;
    for (const auto& [key, child] : *attr) {
        if (meta_key(key)) continue;
        if (key != "string")
            throw ParseError(std::string(what) + ": label value must be a <string>");
        if (value) throw ParseError(std::string(what) + ": more than one label value");
        value = &child;
    }
    if (!value) throw ParseError(std::string(what) + ": missing <string> label value");
    return value->get_value<std::string>();
}

void parse_graph_element(const pt::ptree& gt, GraphCollection& out) {
    check_attributes(gt, "graph", {"id", "edgemode"});
    if (required_attribute(gt, "graph", "edgemode") != "undirected")
        throw ParseError("graph: edgemode must be \"undirected\"");
    const std::string name = gt.get<std::string>("<xmlattr>.id", "");

    LabeledGraph g;
    std::map<std::string, NodeId> ids;
    for (const auto& [key, child] : gt) {
        if (meta_key(key) || key == "edge") continue;
        if (key != "node") throw ParseError("graph: unsupported element '" + key + "'");
        check_attributes(child, "node", {"id"});
        const std::string id = required_attribute(child, "node", "id");
        if (ids.count(id)) throw ParseError("duplicate node id '" + id + "'");
        ids[id] = g.add_node(out.intern_node_label(label_of(child, "node")));
    }
    for (const auto& [key, child] : gt) {
        if (key != "edge") continue;
        check_attributes(child, "edge", {"from", "to"});
        const std::string from = required_attribute(child, "edge", "from");
        const std::string to = required_attribute(child, "edge", "to");
        if (!ids.count(from) || !ids.count(to))
            throw ParseError("edge references unknown node id '" + (ids.count(from) ? to : from) + "'");
        if (ids[from] == ids[to]) throw ParseError("self-loop on node id '" + from + "'");
        const Edge e(ids[from], ids[to]);
        if (g.has_edge(e)) throw ParseError("duplicate edge '" + from + "'-'" + to + "'");
        g.add_edge(e, out.intern_edge_label(label_of(child, "edge")));
    }
    out.graphs.push_back(std::move(g));
    out.names.push_back(name);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

GraphCollection parse_gxl(std::string_view bytes) {
    pt::ptree doc;
    std::istringstream in{std::string(bytes)};
    try {
        pt::read_xml(in, doc, pt::xml_parser::no_comments | pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(std::string("invalid XML: ") + e.message(),
                         static_cast<int>(e.line()));
    }
    GraphCollection out;
    for (const auto& [key, child] : doc) {
        if (meta_key(key)) continue;
        if (key == "graph") {
            parse_graph_element(child, out);
        } else if (key == "gxl") {
            check_attributes(child, "gxl", {});
            for (const auto& [gkey, gchild] : child) {
                if (meta_key(gkey)) continue;
                if (gkey != "graph") throw ParseError("gxl: unsupported element '" + gkey + "'");
                parse_graph_element(gchild, out);
            }
        } else {
            throw ParseError("unsupported root element '" + key + "'");
        }
    }
    return out;
}

std::string serialize_gxl(const GraphCollection& x) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<gxl>\n";
    for (int i = 0; i < x.size(); ++i) {
        const LabeledGraph& g = x.graphs[i];
        const std::string name =
            (!x.names.empty() && !x.names[i].empty()) ? x.names[i] : "g" + std::to_string(i + 1);
        out << "  <graph id=\"" << xml_escape(name) << "\" edgemode=\"undirected\">\n";
        for (NodeId v = 1; v <= g.node_count(); ++v)
            out << "    <node id=\"n" << v << "\"><attr name=\"label\"><string>"
                << xml_escape(x.node_label_table.at(g.node_label(v)))
                << "</string></attr></node>\n";
        for (const auto& [e, l] : g.edges())
            out << "    <edge from=\"n" << e.u << "\" to=\"n" << e.v
                << "\"><attr name=\"label\"><string>" << xml_escape(x.edge_label_table.at(l))
                << "</string></attr></edge>\n";
        out << "  </graph>\n";
    }
    out << "</gxl>\n";
    return out.str();
}

}  // namespace mea
