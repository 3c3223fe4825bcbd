#pragma once

#include "cmatch/graph.hpp"

namespace cmatch {

/// Exact single-source shortest alternating-path lengths, both parities.
///
/// Computes even[v] = shortest even-length alternating simple path from f to v
/// and odd[v] likewise, for an unmatched source f. Uses plain path semantics at
/// the source (even[f] = 0, odd[f] = infinity); AltDist applies the sentinel
/// swap on top of this.
///
/// Method: level-synchronized alternating BFS. Edges that never propagate a
/// first (minimum) level are bridges; a bridge of tenacity t closes a blossom.
/// The blossom base is the bottleneck vertex below which the two descents from
/// the bridge endpoints cannot stay vertex-disjoint (found with a 2-unit
/// vertex-capacitated flow over the predecessor DAG), and every vertex
/// reachable from the bridge ends without passing the base joins the blossom
/// and receives its missing parity as t - minlevel. Bridges are processed in
/// increasing tenacity.
class AltLevels {
  public:
    int at(NodeId v, int theta) const { return lv_[v][theta]; }
    bool finite(NodeId v, int theta) const { return lv_[v][theta] < kInfDist; }
    int min_level(NodeId v) const { return std::min(lv_[v][0], lv_[v][1]); }

    /// Value used when checking parent rules and path extensions at the
    /// source: the zero-length path at f counts as a 0-alternating path.
    int path_value(NodeId v, int theta, NodeId source) const {
        if (v == source) return theta == 0 ? 0 : kInfDist;
        return lv_[v][theta];
    }

    friend AltLevels compute_alt_levels(const Graph& g, const Matching& m, NodeId f, int cap);

  private:
    std::vector<std::array<int, 2>> lv_;
};

/// cap < 0 computes all levels; otherwise values up to `cap` are exact and
/// larger ones may be left infinite.
AltLevels compute_alt_levels(const Graph& g, const Matching& m, NodeId f, int cap = -1);

/// AltDist view with the source sentinel (dist(f,0)=inf, dist(f,1)=0).
AltDist to_alt_dist(const Graph& g, const AltLevels& levels, NodeId f);

}  // namespace cmatch
