#pragma once

#include "cmatch/levels.hpp"
#include "cmatch/sim.hpp"

namespace cmatch {

/// Alternating base tree: spanning tree rooted at the unmatched source where
/// each node's parent edge is the last edge of a shortest alternating path
/// from the root.
struct AltBaseTree {
    NodeId root = -1;
    std::vector<NodeId> parent;       // -1 for root and absent ids
    std::vector<EdgeId> parent_edge;  // ep(v), -1 for root
    std::vector<int> depth;           // d_v, -1 for absent ids
    std::vector<std::vector<NodeId>> children;
    std::vector<char> tree_edge;  // by edge id
    int height = 0;

    bool is_tree_edge(EdgeId e) const {
        return e >= 0 && e < static_cast<int>(tree_edge.size()) && tree_edge[e];
    }
    std::vector<NodeId> subtree(NodeId v) const;
    std::vector<EdgeId> tree_edges() const;

    /// Definition check: parent edges close shortest alternating paths with
    /// the right matched/unmatched type, and shortest distances strictly
    /// decrease toward the root.
    void validate(const Graph& g, const Matching& m, const AltDist& dist) const;
};

/// Zero-communication local parent rule (ties go to the lowest node id).
/// `dist` must cover the whole graph (an MV run with threshold n).
AltBaseTree build_abt(const Graph& g, const Matching& m, NodeId f, const AltDist& dist);

/// lca(e) per non-tree edge plus each node's root path, computed by the
/// depth-propagation / subtree-broadcast / path-exchange pipeline. Also
/// carries the tree height agreed on by the nodes (needed by the pipelined
/// aggregation downstream).
struct LcaTable {
    std::vector<int> lca_depth;  // by edge id, -1 for tree edges/absent
    std::vector<std::vector<NodeId>> root_path;  // per node, root first
    int height = 0;

    void validate(const Graph& g, const AltBaseTree& t) const;
};

LcaTable lca_preprocess(const AltBaseTree& t, const Graph& g, sim::RoundReport& report,
                        const sim::SimConfig& cfg = {});

}  // namespace cmatch
