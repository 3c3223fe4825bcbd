#pragma once

#include "cmatch/levels.hpp"
#include "cmatch/sim.hpp"

namespace cmatch {

/// Output of the matching-verification subroutine MV(M, l, f): each node's
/// (theta, r^theta(f,v)) pairs for values within the threshold. Backed by an
/// exact centralized computation and charged 2*l rounds; reports carry the
/// charge under phase "MV".
struct MvOutput {
    NodeId source = -1;
    int limit = 0;
    // per node id: (theta, value) pairs with value <= limit, theta ascending
    std::vector<std::vector<std::pair<int, int>>> pairs;
    // sentinel view (dist(f,0)=inf, dist(f,1)=0), truncated at limit
    AltDist dist;
    // plain path-semantics view used by protocol injections
    AltLevels levels;
};

MvOutput mv(const Graph& g, const Matching& m, int ell, NodeId f, sim::RoundReport& report);

/// Node partition produced by PART(M, l): each part induces a subgraph with
/// exactly two unmatched nodes joined by an augmenting path of length <= l.
/// Nodes outside every part carry label -1 and stay idle.
struct Partition {
    std::vector<int> label;  // by node id, -1 = unassigned
    std::vector<std::pair<NodeId, NodeId>> endpoints;
    std::vector<std::vector<NodeId>> members;
    std::vector<Walk> seed_paths;  // the augmenting path each part was grown from

    int count() const { return static_cast<int>(members.size()); }
    bool empty() const { return members.empty(); }

    /// Checks the contract: two unmatched nodes per part, internal augmenting
    /// path of length <= l, node-disjointness, unsplit matched pairs, and
    /// induced diameter <= 8*l.
    void validate(const Graph& g, const Matching& m, int ell) const;
};

Partition part(const Graph& g, const Matching& m, int ell, sim::RoundReport& report);

/// Centralized backward construction of a shortest augmenting path from f to
/// gnode of known length `len` (the predecessor-discovery rule CAP runs
/// distributed). Used by the PART reference to peel paths.
Walk backward_shortest_augpath(const Graph& g, const Matching& m, NodeId f, NodeId gnode,
                               int len);

}  // namespace cmatch
