#pragma once

#include "ctrmatch/contract.hpp"
#include "ctrmatch/error.hpp"
#include "ctrmatch/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace ctrmatch {

inline NodeGroup to_node_group(MethodGroup g)
{
    switch (g) {
    case MethodGroup::Provided: return NodeGroup::Provided;
    case MethodGroup::Internal: return NodeGroup::Internal;
    case MethodGroup::Required: return NodeGroup::Required;
    }
    return NodeGroup::None;
}

/// Builds the labeled graph of one contract.
///
/// Layout: CONTRACT -HAS_FIELD-> FIELD -OF_TYPE-> TYPE, CONTRACT -HAS_METHOD->
/// METHOD -HAS_PARAM-> PARAM -OF_TYPE-> TYPE and METHOD -HAS_RETURN-> RETURN
/// -OF_TYPE-> TYPE for non-void methods. TYPE nodes are shared within the
/// contract, one per canonical type name. Nodes are created fields first, then
/// methods, each followed by its params (left to right) and its return.
inline LabeledGraph build_contract_graph(const ContractAst &ast)
{
    LabeledGraph g;
    NodeId contract = g.add_node({NodeKind::Contract, ast.componentClass, "", NodeGroup::None});
    std::map<std::string, NodeId> types;

    auto link_type = [&](NodeId from, const TypeName &type) {
        std::string label = type.canonical();
        auto it = types.find(label);
        if (it == types.end())
            it = types.emplace(label, g.add_node({NodeKind::Type, label, label, NodeGroup::None})).first;
        g.add_edge(from, it->second, EdgeKind::OfType);
    };

    for (const auto &field : ast.fields) {
        NodeId f = g.add_node({NodeKind::Field, field.name, field.dtype.canonical(), NodeGroup::None});
        g.add_edge(contract, f, EdgeKind::HasField);
        link_type(f, field.dtype);
    }
    for (const auto &method : ast.methods) {
        NodeId m = g.add_node({NodeKind::Method, method.name, "", to_node_group(method.group)});
        g.add_edge(contract, m, EdgeKind::HasMethod);
        for (const auto &param : method.params) {
            NodeId p = g.add_node({NodeKind::Param, param.name, param.dtype.canonical(), NodeGroup::None});
            g.add_edge(m, p, EdgeKind::HasParam);
            link_type(p, param.dtype);
        }
        if (method.returnType) {
            NodeId r = g.add_node({NodeKind::Return, "", method.returnType->canonical(), NodeGroup::None});
            g.add_edge(m, r, EdgeKind::HasReturn);
            link_type(r, *method.returnType);
        }
    }
    return g;
}

/// Name of the composite root node.
inline constexpr std::string_view kArchitectureRoot = "AA";

/// Composes contract graphs under a single ROOT node named "AA", one CONTAINS
/// edge per component, preserving input order.
inline LabeledGraph build_aa_graph(std::span<const LabeledGraph> contractGraphs)
{
    LabeledGraph aa;
    NodeId root = aa.add_node({NodeKind::Root, std::string(kArchitectureRoot), "", NodeGroup::None});
    std::set<std::string> seen;
    for (const auto &g : contractGraphs) {
        auto contracts = g.nodes_of_kind(NodeKind::Contract);
        if (contracts.size() != 1)
            throw Error("architecture input is not a contract graph (needs exactly one CONTRACT node)");
        const std::string &component = g.node(contracts.front()).name;
        if (!seen.insert(component).second)
            throw DuplicateComponentError(component);

        std::size_t offset = aa.node_count();
        for (const auto &n : g.nodes())
            aa.add_node(n);
        aa.add_edge(root, NodeId{offset + contracts.front().value}, EdgeKind::Contains);
        for (const auto &e : g.edges())
            aa.add_edge(NodeId{offset + e.src.value}, NodeId{offset + e.dst.value}, e.kind);
    }
    return aa;
}

struct ComponentView
{
    std::string component;
    LabeledGraph graph;
};

/// Splits an architecture graph into its per-component subgraphs (everything
/// reachable from each CONTRACT child of the root), in insertion order. Local
/// ids keep the relative order of the architecture ids, so a component built by
/// build_aa_graph comes back equal to its input graph.
inline std::vector<ComponentView> component_subgraphs(const LabeledGraph &aa)
{
    std::vector<ComponentView> out;
    auto roots = aa.nodes_of_kind(NodeKind::Root);
    if (roots.size() != 1)
        throw Error("architecture graph needs exactly one ROOT node");
    for (std::size_t ei : aa.out_edges(roots.front())) {
        const Edge &top = aa.edges()[ei];
        if (top.kind != EdgeKind::Contains)
            continue;
        std::vector<bool> reached(aa.node_count(), false);
        std::vector<NodeId> stack{top.dst};
        reached[top.dst.value] = true;
        while (!stack.empty()) {
            NodeId n = stack.back();
            stack.pop_back();
            for (std::size_t e : aa.out_edges(n)) {
                NodeId d = aa.edges()[e].dst;
                if (!reached[d.value]) {
                    reached[d.value] = true;
                    stack.push_back(d);
                }
            }
        }
        std::vector<std::size_t> local(aa.node_count(), 0);
        ComponentView view{aa.node(top.dst).name, {}};
        for (std::size_t i = 0; i < aa.node_count(); ++i)
            if (reached[i])
                local[i] = view.graph.add_node(aa.nodes()[i]).value;
        for (const auto &e : aa.edges())
            if (reached[e.src.value] && reached[e.dst.value])
                view.graph.add_edge(NodeId{local[e.src.value]}, NodeId{local[e.dst.value]}, e.kind);
        out.push_back(std::move(view));
    }
    return out;
}

} // namespace ctrmatch
