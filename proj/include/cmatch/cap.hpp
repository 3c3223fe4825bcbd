#pragma once

#include "cmatch/mv_part.hpp"
#include "cmatch/sim.hpp"

namespace cmatch {

/// No augmenting path within the round budget.
struct CapNoPathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Distributed construction of an augmenting path between the two unmatched
/// nodes f and gnode, walked backwards from gnode. Odd steps run the
/// verification subroutine on the residual subgraph (charged) followed by one
/// announce round and one handoff round; even steps hand off over the matched
/// edge in a single round. Returns a shortest augmenting path.
Walk cap(const Graph& g, const Matching& m, NodeId f, NodeId gnode, int ell,
         sim::RoundReport& report, const sim::SimConfig& cfg = {});

}  // namespace cmatch
