#pragma once

#include "ctrmatch/contract_graph.hpp"
#include "ctrmatch/graph.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctrmatch {

/// An injective, label-compatible, edge-preserving map from a required graph
/// into a candidate graph.
struct NodeMapping
{
    std::map<NodeId, NodeId> pairs;
    /// Required method name -> candidate method name, projected from `pairs`.
    std::map<std::string, std::string> methodSubstitution;
    /// Set when two required methods sharing a name map to differently named
    /// candidate methods; the substitution then keeps the first one seen.
    bool substitutionConflict = false;

    bool operator==(const NodeMapping &) const = default;
};

struct MatchReport
{
    std::string candidateComponent;
    std::vector<NodeMapping> mappings;
    bool matched = false;
};

/// Names are ignored; only kinds and, for TYPE nodes, the type name must agree.
inline bool node_compatible(const NodeRecord &required, const NodeRecord &candidate)
{
    if (required.kind != candidate.kind)
        return false;
    return required.kind != NodeKind::Type || required.dtype == candidate.dtype;
}

/// Fills in the method-name projection of a node map.
inline void project_method_substitution(NodeMapping &mapping, const LabeledGraph &required,
                                        const LabeledGraph &candidate)
{
    mapping.methodSubstitution.clear();
    mapping.substitutionConflict = false;
    for (const auto &[r, c] : mapping.pairs) {
        if (required.node(r).kind != NodeKind::Method)
            continue;
        auto [it, inserted] = mapping.methodSubstitution.emplace(required.node(r).name, candidate.node(c).name);
        if (!inserted && it->second != candidate.node(c).name)
            mapping.substitutionConflict = true;
    }
}

namespace detail {

inline constexpr std::size_t kEdgeKinds = 6;

using DegreeProfile = std::array<std::size_t, 2 * kEdgeKinds>;

inline DegreeProfile degree_profile(const LabeledGraph &g, NodeId n)
{
    DegreeProfile p{};
    for (std::size_t e : g.out_edges(n))
        ++p[static_cast<std::size_t>(g.edges()[e].kind)];
    for (std::size_t e : g.in_edges(n))
        ++p[kEdgeKinds + static_cast<std::size_t>(g.edges()[e].kind)];
    return p;
}

/// Backtracking subgraph monomorphism search in the VF2 spirit: required nodes
/// are visited in BFS order from the CONTRACT anchor so each new node is
/// usually adjacent to a mapped one, and candidates come from that neighbour's
/// image. Label and degree feasibility prune before edge checks.
class EmbeddingSearch
{
  public:
    EmbeddingSearch(const LabeledGraph &required, const LabeledGraph &candidate, std::optional<std::size_t> limit)
        : req_(required), cand_(candidate), limit_(limit)
    {
    }

    std::vector<NodeMapping> run()
    {
        if (limit_ && *limit_ == 0)
            return {};
        if (!label_counts_fit())
            return {};
        plan();
        for (std::size_t i = 0; i < cand_.node_count(); ++i)
            candDegrees_.push_back(degree_profile(cand_, NodeId{i}));
        core_.assign(req_.node_count(), kUnmapped);
        used_.assign(cand_.node_count(), false);
        extend(0);
        return std::move(found_);
    }

  private:
    static constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);

    /// One constraint between the node at some step and an earlier node (or itself).
    struct Link
    {
        std::size_t other; ///< required node id
        EdgeKind kind;
        bool outgoing;     ///< true: step node -> other
    };

    struct Step
    {
        std::size_t node;
        std::optional<Link> anchor; ///< adjacency used to generate candidates
        std::vector<Link> checks;   ///< all edges to already placed nodes
        DegreeProfile degrees{};
    };

    static std::pair<NodeKind, std::string> label_of(const NodeRecord &n)
    {
        return {n.kind, n.kind == NodeKind::Type ? n.dtype : std::string()};
    }

    bool label_counts_fit() const
    {
        std::map<std::pair<NodeKind, std::string>, long> counts;
        for (const auto &n : cand_.nodes())
            ++counts[label_of(n)];
        for (const auto &n : req_.nodes())
            if (--counts[label_of(n)] < 0)
                return false;
        return true;
    }

    void plan()
    {
        std::size_t n = req_.node_count();
        std::vector<std::size_t> order;
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> seeds;
        for (NodeId c : req_.nodes_of_kind(NodeKind::Contract))
            seeds.push_back(c.value);
        for (std::size_t i = 0; i < n; ++i)
            seeds.push_back(i);

        for (std::size_t seed : seeds) {
            if (seen[seed])
                continue;
            std::deque<std::size_t> queue{seed};
            seen[seed] = true;
            while (!queue.empty()) {
                std::size_t u = queue.front();
                queue.pop_front();
                order.push_back(u);
                auto visit = [&](std::size_t v) {
                    if (!seen[v]) {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                };
                for (std::size_t e : req_.out_edges(NodeId{u}))
                    visit(req_.edges()[e].dst.value);
                for (std::size_t e : req_.in_edges(NodeId{u}))
                    visit(req_.edges()[e].src.value);
            }
        }

        std::vector<std::size_t> position(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            position[order[i]] = i;

        for (std::size_t i = 0; i < n; ++i) {
            Step step{order[i], std::nullopt, {}, degree_profile(req_, NodeId{order[i]})};
            for (std::size_t e : req_.out_edges(NodeId{order[i]})) {
                const Edge &edge = req_.edges()[e];
                if (position[edge.dst.value] <= i)
                    step.checks.push_back({edge.dst.value, edge.kind, true});
            }
            for (std::size_t e : req_.in_edges(NodeId{order[i]})) {
                const Edge &edge = req_.edges()[e];
                if (position[edge.src.value] < i)
                    step.checks.push_back({edge.src.value, edge.kind, false});
            }
            for (const Link &l : step.checks) {
                if (l.other != order[i]) {
                    step.anchor = l;
                    break;
                }
            }
            steps_.push_back(std::move(step));
        }
    }

    std::vector<std::size_t> candidates_for(const Step &step) const
    {
        std::vector<std::size_t> out;
        if (step.anchor) {
            NodeId image{core_[step.anchor->other]};
            // step node -> other means the candidate is a source of an edge into image
            const auto &incident = step.anchor->outgoing ? cand_.in_edges(image) : cand_.out_edges(image);
            for (std::size_t e : incident) {
                const Edge &edge = cand_.edges()[e];
                if (edge.kind == step.anchor->kind)
                    out.push_back(step.anchor->outgoing ? edge.src.value : edge.dst.value);
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        } else {
            out.resize(cand_.node_count());
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = i;
        }
        return out;
    }

    bool feasible(const Step &step, std::size_t c) const
    {
        if (used_[c] || !node_compatible(req_.nodes()[step.node], cand_.nodes()[c]))
            return false;
        const DegreeProfile &have = candDegrees_[c];
        for (std::size_t k = 0; k < have.size(); ++k)
            if (have[k] < step.degrees[k])
                return false;
        for (const Link &l : step.checks) {
            std::size_t other = l.other == step.node ? c : core_[l.other];
            bool ok = l.outgoing ? cand_.has_edge(NodeId{c}, NodeId{other}, l.kind)
                                 : cand_.has_edge(NodeId{other}, NodeId{c}, l.kind);
            if (!ok)
                return false;
        }
        return true;
    }

    bool done() const { return limit_ && found_.size() >= *limit_; }

    void extend(std::size_t depth)
    {
        if (depth == steps_.size()) {
            NodeMapping m;
            for (std::size_t r = 0; r < core_.size(); ++r)
                m.pairs.emplace(NodeId{r}, NodeId{core_[r]});
            project_method_substitution(m, req_, cand_);
            found_.push_back(std::move(m));
            return;
        }
        const Step &step = steps_[depth];
        for (std::size_t c : candidates_for(step)) {
            if (!feasible(step, c))
                continue;
            core_[step.node] = c;
            used_[c] = true;
            extend(depth + 1);
            used_[c] = false;
            core_[step.node] = kUnmapped;
            if (done())
                return;
        }
    }

    const LabeledGraph &req_;
    const LabeledGraph &cand_;
    std::optional<std::size_t> limit_;
    std::vector<Step> steps_;
    std::vector<DegreeProfile> candDegrees_;
    std::vector<std::size_t> core_;
    std::vector<bool> used_;
    std::vector<NodeMapping> found_;
};

} // namespace detail

/// Enumerates subgraph monomorphisms of `required` into `candidate`, at most
/// `limit` of them (all when unset). The required CONTRACT node is placed first,
/// so every mapping anchors it on the candidate's CONTRACT node.
inline std::vector<NodeMapping> find_embeddings(const LabeledGraph &required, const LabeledGraph &candidate,
                                                std::optional<std::size_t> limit = std::nullopt)
{
    return detail::EmbeddingSearch(required, candidate, limit).run();
}

/// Phase one: runs find_embeddings against each component of the architecture.
inline std::vector<MatchReport> match_against_architecture(const LabeledGraph &required, const LabeledGraph &aa,
                                                           std::optional<std::size_t> limit = std::nullopt)
{
    std::vector<MatchReport> reports;
    for (auto &view : component_subgraphs(aa)) {
        MatchReport r;
        r.candidateComponent = std::move(view.component);
        r.mappings = find_embeddings(required, view.graph, limit);
        r.matched = !r.mappings.empty();
        reports.push_back(std::move(r));
    }
    return reports;
}

} // namespace ctrmatch
