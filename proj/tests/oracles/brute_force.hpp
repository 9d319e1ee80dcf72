#pragma once

// Exhaustive subgraph-monomorphism enumeration, used only as a test oracle.

#include "ctrmatch/error.hpp"
#include "ctrmatch/graph.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

inline constexpr std::size_t kBruteForceMaxNodes = 10;

inline bool labels_agree(const ctrmatch::NodeRecord &a, const ctrmatch::NodeRecord &b)
{
    if (a.kind != b.kind)
        return false;
    if (a.kind == ctrmatch::NodeKind::Type)
        return a.dtype == b.dtype;
    return true;
}

/// Every injective, label-compatible map whose image preserves all required
/// edges. Edges are checked only once an assignment is complete.
inline std::vector<std::map<ctrmatch::NodeId, ctrmatch::NodeId>>
brute_force_embeddings(const ctrmatch::LabeledGraph &required, const ctrmatch::LabeledGraph &candidate)
{
    using ctrmatch::NodeId;
    const std::size_t n = required.node_count();
    if (n > kBruteForceMaxNodes)
        throw ctrmatch::SizeError("brute force limited to " + std::to_string(kBruteForceMaxNodes) + " nodes");

    std::vector<std::map<NodeId, NodeId>> out;
    std::vector<std::size_t> image(n, 0);
    std::vector<bool> used(candidate.node_count(), false);

    auto preserves_edges = [&] {
        for (const auto &e : required.edges()) {
            bool found = false;
            for (const auto &f : candidate.edges())
                if (f.src.value == image[e.src.value] && f.dst.value == image[e.dst.value] && f.kind == e.kind) {
                    found = true;
                    break;
                }
            if (!found)
                return false;
        }
        return true;
    };

    auto assign = [&](auto &&self, std::size_t r) -> void {
        if (r == n) {
            if (preserves_edges()) {
                std::map<NodeId, NodeId> m;
                for (std::size_t i = 0; i < n; ++i)
                    m[NodeId{i}] = NodeId{image[i]};
                out.push_back(std::move(m));
            }
            return;
        }
        for (std::size_t c = 0; c < candidate.node_count(); ++c) {
            if (used[c] || !labels_agree(required.nodes()[r], candidate.nodes()[c]))
                continue;
            used[c] = true;
            image[r] = c;
            self(self, r + 1);
            used[c] = false;
        }
    };
    assign(assign, 0);
    return out;
}

} // namespace oracle
