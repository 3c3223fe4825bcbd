#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cmatch/graph.hpp"

namespace cmatch::gen {

struct Instance {
    Graph graph;
    std::optional<Matching> matching;  // structured families ship a matching
    std::string name;
    int analytic_smax = -1;  // maximum matching size known by construction
};

struct Params {
    int n = 0;      // gnp, cycle
    double p = 0.0;  // gnp
    int k = 0;      // long-path, blossom-chain
    std::string fixture;  // p2 | p4 | walktrap | blossom6
};

/// kind: gnp | long-path | cycle | blossom-chain | fixture.
/// Deterministic for a fixed (kind, params, seed).
Instance generate(const std::string& kind, const Params& params, uint64_t seed);

/// P_{2k+2} with the alternating matching of size k (one augmenting path of
/// length 2k+1 between the two free ends).
Instance long_path(int k);

/// k six-node blossom gadgets joined by matched two-node links: k disjoint
/// augmenting paths of length 5.
Instance blossom_chain(int k);

Instance gnp(int n, double p, uint64_t seed);
Instance cycle(int n);

}  // namespace cmatch::gen
