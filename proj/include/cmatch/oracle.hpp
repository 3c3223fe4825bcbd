#pragma once

#include "cmatch/graph.hpp"

namespace cmatch::oracle {

struct OracleConfig {
    // Node count above which exhaustive path enumeration refuses to run.
    int enum_path_node_limit = 18;

    void validate() const {
        if (enum_path_node_limit < 4)
            throw std::invalid_argument("OracleConfig: enum limit must be >= 4");
    }
};

/// Thrown when exhaustive enumeration is asked to run on an oversize instance.
struct EnumLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximum-cardinality matching via the blossom algorithm (O(n^3) variant).
/// Deterministic for a fixed input.
Matching max_matching(const Graph& g);

/// One augmenting-path search rooted at the unmatched node `from`.
std::optional<Walk> find_augmenting_path(const Graph& g, const Matching& m, NodeId from);

/// Exact r^theta(f, v) for all v by depth-first enumeration of all simple
/// alternating paths from f. Ground truth; exponential, limit-guarded.
AltDist alt_dist_exact(const Graph& g, const Matching& m, NodeId f,
                       const OracleConfig& cfg = {});

/// Same, also returning one witness path per finite (v, theta).
struct ExactAltDist {
    AltDist dist;
    // indexed [node][theta]; empty walk means no witness (infinite distance)
    std::vector<std::array<Walk, 2>> witness;
};
ExactAltDist alt_dist_exact_with_witness(const Graph& g, const Matching& m, NodeId f,
                                         const OracleConfig& cfg = {});

/// True iff for all v and theta, finiteness of r^theta_G(f,v) implies
/// finiteness of r^theta_H(f,v). h must be a subgraph of g.
bool preserves_reachability(const Graph& h, const Graph& g, const Matching& m, NodeId f,
                            const OracleConfig& cfg = {});

}  // namespace cmatch::oracle
