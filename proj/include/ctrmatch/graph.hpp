#pragma once

#include "ctrmatch/error.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctrmatch {

/// Dense node index into a LabeledGraph.
struct NodeId
{
    std::size_t value = 0;

    auto operator<=>(const NodeId &) const = default;
};

enum class NodeKind { Root, Contract, Field, Method, Param, Type, Return };

enum class EdgeKind { Contains, HasField, HasMethod, HasParam, HasReturn, OfType };

/// Method group as stored on graph nodes; None for non-method nodes.
enum class NodeGroup { None, Provided, Internal, Required };

inline std::string_view to_string(NodeKind k)
{
    switch (k) {
    case NodeKind::Root: return "ROOT";
    case NodeKind::Contract: return "CONTRACT";
    case NodeKind::Field: return "FIELD";
    case NodeKind::Method: return "METHOD";
    case NodeKind::Param: return "PARAM";
    case NodeKind::Type: return "TYPE";
    case NodeKind::Return: return "RETURN";
    }
    return "?";
}

inline std::string_view to_string(EdgeKind k)
{
    switch (k) {
    case EdgeKind::Contains: return "CONTAINS";
    case EdgeKind::HasField: return "HAS_FIELD";
    case EdgeKind::HasMethod: return "HAS_METHOD";
    case EdgeKind::HasParam: return "HAS_PARAM";
    case EdgeKind::HasReturn: return "HAS_RETURN";
    case EdgeKind::OfType: return "OF_TYPE";
    }
    return "?";
}

inline std::string_view to_string(NodeGroup g)
{
    switch (g) {
    case NodeGroup::None: return "";
    case NodeGroup::Provided: return "provided";
    case NodeGroup::Internal: return "internal";
    case NodeGroup::Required: return "required";
    }
    return "";
}

inline std::optional<NodeKind> parse_node_kind(std::string_view s)
{
    for (auto k : {NodeKind::Root, NodeKind::Contract, NodeKind::Field, NodeKind::Method, NodeKind::Param,
                   NodeKind::Type, NodeKind::Return})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

inline std::optional<EdgeKind> parse_edge_kind(std::string_view s)
{
    for (auto k : {EdgeKind::Contains, EdgeKind::HasField, EdgeKind::HasMethod, EdgeKind::HasParam,
                   EdgeKind::HasReturn, EdgeKind::OfType})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

inline std::optional<NodeGroup> parse_node_group(std::string_view s)
{
    for (auto g : {NodeGroup::None, NodeGroup::Provided, NodeGroup::Internal, NodeGroup::Required})
        if (to_string(g) == s)
            return g;
    return std::nullopt;
}

struct NodeRecord
{
    NodeKind kind = NodeKind::Type;
    std::string name;
    std::string dtype;
    NodeGroup group = NodeGroup::None;

    bool operator==(const NodeRecord &) const = default;
};

struct Edge
{
    NodeId src;
    NodeId dst;
    EdgeKind kind;

    bool operator==(const Edge &) const = default;
};

/// True when an edge of this kind may connect nodes of these kinds.
inline bool edge_kind_allowed(EdgeKind e, NodeKind src, NodeKind dst)
{
    switch (e) {
    case EdgeKind::Contains: return src == NodeKind::Root && dst == NodeKind::Contract;
    case EdgeKind::HasField: return src == NodeKind::Contract && dst == NodeKind::Field;
    case EdgeKind::HasMethod: return src == NodeKind::Contract && dst == NodeKind::Method;
    case EdgeKind::HasParam: return src == NodeKind::Method && dst == NodeKind::Param;
    case EdgeKind::HasReturn: return src == NodeKind::Method && dst == NodeKind::Return;
    case EdgeKind::OfType:
        return (src == NodeKind::Field || src == NodeKind::Param || src == NodeKind::Return) &&
               dst == NodeKind::Type;
    }
    return false;
}

/// Directed graph with attributed nodes and kinded edges. Node ids are dense
/// indices in insertion order; edges keep insertion order too, so two graphs
/// built the same way compare equal and serialize identically.
class LabeledGraph
{
  public:
    NodeId add_node(NodeRecord node)
    {
        NodeId id{nodes_.size()};
        nodes_.push_back(std::move(node));
        out_.emplace_back();
        in_.emplace_back();
        return id;
    }

    void add_edge(NodeId src, NodeId dst, EdgeKind kind)
    {
        if (src.value >= nodes_.size() || dst.value >= nodes_.size())
            throw Error("edge endpoint out of range");
        out_[src.value].push_back(edges_.size());
        in_[dst.value].push_back(edges_.size());
        edges_.push_back({src, dst, kind});
    }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const NodeRecord &node(NodeId id) const { return nodes_.at(id.value); }
    const std::vector<NodeRecord> &nodes() const noexcept { return nodes_; }
    const std::vector<Edge> &edges() const noexcept { return edges_; }

    /// Indices into edges() of edges leaving / entering a node.
    const std::vector<std::size_t> &out_edges(NodeId id) const { return out_.at(id.value); }
    const std::vector<std::size_t> &in_edges(NodeId id) const { return in_.at(id.value); }

    bool has_edge(NodeId src, NodeId dst, EdgeKind kind) const
    {
        for (std::size_t e : out_.at(src.value))
            if (edges_[e].dst == dst && edges_[e].kind == kind)
                return true;
        return false;
    }

    std::vector<NodeId> nodes_of_kind(NodeKind kind) const
    {
        std::vector<NodeId> ids;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].kind == kind)
                ids.push_back(NodeId{i});
        return ids;
    }

    bool operator==(const LabeledGraph &other) const
    {
        return nodes_ == other.nodes_ && edges_ == other.edges_;
    }

  private:
    std::vector<NodeRecord> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

} // namespace ctrmatch
