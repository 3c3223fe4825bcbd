#pragma once

#include "cmatch/graph.hpp"

namespace cmatch::fixtures {

struct Fixture {
    Graph graph;
    Matching matching;
};

// P2: f(0) - g(1), M = {}.
Fixture p2();

// P4: f(0) - a(1) - b(2) - g(3), M = {(a,b)}.
Fixture p4();

// WALKTRAP: V = {f(0),a(1),b(2),c(3),d(4)}, E = {fa,ab,bc,cd,da}, M = {ab,cd}.
// Shortest alternating walks to d are shorter than any simple alternating path,
// which defeats walk-based BFS.
Fixture walktrap();

// BLOSSOM6: V = {f(0),a(1),b(2),c(3),d(4),g(5)}, E = {fa,ab,bc,cd,bd,cg},
// M = {ab,cd}. Contains the odd cycle b-c-d.
Fixture blossom6();

}  // namespace cmatch::fixtures
