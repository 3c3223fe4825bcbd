#pragma once

#include "cmatch/abt.hpp"

namespace cmatch {

constexpr int kNoLevel = -1;

/// Level-k edge sets: unmatched edges keyed by the larger even distance of
/// their endpoints, matched edges by the larger odd distance. Edges with an
/// infinite relevant distance carry no level and never enter any F_k.
struct LevelSets {
    std::vector<int> level;  // by edge id, kNoLevel when undefined
    int max_level = 0;

    std::vector<EdgeId> edges_at(int k) const;
};

LevelSets compute_levels(const Graph& g, const Matching& m, const AltDist& dist);

/// G_k = T + F_{<=k}.
Graph level_subgraph(const Graph& g, const AltBaseTree& t, const LevelSets& ls, int k);

/// Bridges (cut edges) of a possibly disconnected graph.
std::vector<EdgeId> bridges_of(const Graph& g);

/// One aggregation over T: each node's minimum (by lca, then endpoint ids)
/// non-tree level-k edge touching its subtree; none unless that edge leaves the
/// subtree (lca < d_v).
std::vector<std::optional<EdgeId>> constf(const Graph& g, const AltBaseTree& t,
                                          const LcaTable& lca, const LevelSets& levels, int k,
                                          sim::RoundReport& report,
                                          const sim::SimConfig& cfg = {});

/// Spanning tree plus the augmented non-tree edge set F^c.
struct SparseCertificate {
    std::vector<EdgeId> tree_edges;
    std::vector<std::pair<EdgeId, int>> fc;  // (edge, level), sorted by (level, edge)
    std::vector<std::pair<NodeId, EdgeId>> contributors;  // node -> the edge it added
    long long rounds_actual = 0;
    long long rounds_budget = 0;  // the O(n + d) pipeline bound this run was held to

    std::vector<EdgeId> all_edges() const;
    Graph to_graph(const Graph& base) const;
};

/// Runs the aggregation for every level in one pipelined pass; each node
/// contributes at most one edge, at its bridge-transition level.
SparseCertificate build_certificate(const Graph& g, const Matching& m, const AltBaseTree& t,
                                    const LcaTable& lca, const LevelSets& levels,
                                    sim::RoundReport& report, const sim::SimConfig& cfg = {});

/// Debug/test dump: tree edge list, then "level u v" lines for F^c.
std::string dump_certificate(const Graph& g, const SparseCertificate& cert);

}  // namespace cmatch
