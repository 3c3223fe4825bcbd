#pragma once

#include "cmatch/certificate.hpp"

namespace cmatch {

/// O(n)-round augmenting path construction: verification preprocessing,
/// alternating base tree, sparse certificate, convergecast of the certificate
/// to f, centralized search at f restricted to the collected edges, and
/// downward dissemination of the chosen path.
Walk linear_augpath(const Graph& g, const Matching& m, NodeId f, NodeId gnode,
                    sim::RoundReport& report, const sim::SimConfig& cfg = {});

}  // namespace cmatch
