#pragma once

#include "ctrmatch/error.hpp"
#include "ctrmatch/graph.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace ctrmatch {

namespace detail {

inline std::string xml_escape(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

/// Writes `g` as GraphML. Node ids are `n<index>`; empty attributes are omitted.
/// The output depends only on the graph, so equal graphs give identical bytes.
inline void write_graphml(const LabeledGraph &g, std::ostream &out)
{
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
        << "  <key id=\"d2\" for=\"node\" attr.name=\"dtype\" attr.type=\"string\"/>\n"
        << "  <key id=\"d3\" for=\"node\" attr.name=\"group\" attr.type=\"string\"/>\n"
        << "  <key id=\"d4\" for=\"edge\" attr.name=\"ekind\" attr.type=\"string\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    auto data = [&out](std::string_view key, std::string_view value) {
        if (!value.empty())
            out << "      <data key=\"" << key << "\">" << detail::xml_escape(value) << "</data>\n";
    };
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const NodeRecord &n = g.nodes()[i];
        out << "    <node id=\"n" << i << "\">\n";
        data("d0", to_string(n.kind));
        data("d1", n.name);
        data("d2", n.dtype);
        data("d3", to_string(n.group));
        out << "    </node>\n";
    }
    for (const Edge &e : g.edges()) {
        out << "    <edge source=\"n" << e.src.value << "\" target=\"n" << e.dst.value << "\">\n";
        data("d4", to_string(e.kind));
        out << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    if (!out)
        throw Error("failed to write GraphML output");
}

inline std::string to_graphml(const LabeledGraph &g)
{
    std::ostringstream os;
    write_graphml(g, os);
    return os.str();
}

/// Reads a GraphML document in the layout produced by write_graphml. Keys are
/// resolved by their attr.name, so foreign key ids are accepted.
inline LabeledGraph read_graphml(std::istream &in)
{
    namespace pt = boost::property_tree;
    pt::ptree doc;
    try {
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error &e) {
        throw FormatError(std::string("malformed XML: ") + e.what());
    }

    auto root = doc.get_child_optional("graphml");
    if (!root)
        throw FormatError("missing <graphml> element");

    std::map<std::string, std::string> keyNames; // key id -> attr.name
    const pt::ptree *graph = nullptr;
    for (const auto &[tag, child] : *root) {
        if (tag == "key") {
            auto id = child.get_optional<std::string>("<xmlattr>.id");
            // '.' is the default path separator, so address attr.name with '/'
            auto name = child.get_optional<std::string>(
                boost::property_tree::ptree::path_type("<xmlattr>/attr.name", '/'));
            if (!id || !name)
                throw FormatError("<key> without id or attr.name");
            keyNames[*id] = *name;
        } else if (tag == "graph") {
            if (graph)
                throw FormatError("more than one <graph> element");
            graph = &child;
        }
    }
    if (!graph)
        throw FormatError("missing <graph> element");
    if (graph->get<std::string>("<xmlattr>.edgedefault", "directed") != "directed")
        throw FormatError("graph is not directed");

    auto read_data = [&keyNames](const pt::ptree &element) {
        std::map<std::string, std::string> attrs;
        for (const auto &[tag, child] : element) {
            if (tag != "data")
                continue;
            auto key = child.get_optional<std::string>("<xmlattr>.key");
            if (!key)
                throw FormatError("<data> without key");
            auto it = keyNames.find(*key);
            if (it == keyNames.end())
                throw FormatError("<data> references undeclared key '" + *key + "'");
            attrs[it->second] = child.get_value<std::string>();
        }
        return attrs;
    };

    LabeledGraph g;
    std::map<std::string, NodeId> ids;
    for (const auto &[tag, child] : *graph) {
        if (tag != "node")
            continue;
        auto id = child.get_optional<std::string>("<xmlattr>.id");
        if (!id)
            throw FormatError("<node> without id");
        auto attrs = read_data(child);
        auto kindText = attrs.find("kind");
        if (kindText == attrs.end())
            throw FormatError("node '" + *id + "' has no kind");
        auto kind = parse_node_kind(kindText->second);
        if (!kind)
            throw FormatError("node '" + *id + "' has unknown kind '" + kindText->second + "'");
        auto group = parse_node_group(attrs["group"]);
        if (!group)
            throw FormatError("node '" + *id + "' has unknown group '" + attrs["group"] + "'");
        NodeId nid = g.add_node({*kind, attrs["name"], attrs["dtype"], *group});
        if (!ids.emplace(*id, nid).second)
            throw FormatError("duplicate node id '" + *id + "'");
    }
    for (const auto &[tag, child] : *graph) {
        if (tag != "edge")
            continue;
        auto source = child.get_optional<std::string>("<xmlattr>.source");
        auto target = child.get_optional<std::string>("<xmlattr>.target");
        if (!source || !target)
            throw FormatError("<edge> without source or target");
        auto s = ids.find(*source), t = ids.find(*target);
        if (s == ids.end() || t == ids.end())
            throw FormatError("edge " + *source + " -> " + *target + " references an undeclared node");
        auto attrs = read_data(child);
        auto kindText = attrs.find("ekind");
        if (kindText == attrs.end())
            throw FormatError("edge " + *source + " -> " + *target + " has no ekind");
        auto kind = parse_edge_kind(kindText->second);
        if (!kind)
            throw FormatError("edge has unknown ekind '" + kindText->second + "'");
        g.add_edge(s->second, t->second, *kind);
    }
    return g;
}

inline LabeledGraph from_graphml(const std::string &text)
{
    std::istringstream is(text);
    return read_graphml(is);
}

} // namespace ctrmatch
