#include "cmatch/fixtures.hpp"

namespace cmatch::fixtures {

Fixture p2() {
    Graph g = Graph::from_edges(2, {{0, 1}});
    return {g, Matching::empty(g)};
}

Fixture p4() {
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    Matching m = Matching::from_edges(g, {1});
    return {g, m};
}

Fixture walktrap() {
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 1}});
    Matching m = Matching::from_edges(g, {1, 3});
    return {g, m};
}

Fixture blossom6() {
    Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 4}, {3, 5}});
    Matching m = Matching::from_edges(g, {1, 3});
    return {g, m};
}

}  // namespace cmatch::fixtures
