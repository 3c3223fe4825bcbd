#include "cmatch/generators.hpp"

#include <algorithm>

#include "cmatch/fixtures.hpp"

namespace cmatch::gen {

namespace {

struct Rng {
    uint64_t s;
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    int below(int bound) { return static_cast<int>(next() % static_cast<uint64_t>(bound)); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

Instance long_path(int k) {
    if (k < 1) throw std::invalid_argument("long-path: k must be >= 1");
    int n = 2 * k + 2;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    Graph g = Graph::from_edges(n, edges);
    Matching m = Matching::empty(g);
    for (int i = 1; i + 1 < n; i += 2) m.add(g, *g.edge_between(i, i + 1));
    Instance inst{g, m, "long-path(" + std::to_string(k) + ")", k + 1};
    return inst;
}

Instance blossom_chain(int k) {
    if (k < 1) throw std::invalid_argument("blossom-chain: k must be >= 1");
    // gadget i occupies ids [8i, 8i+5] as f,a,b,c,d,g; link nodes 8i+6, 8i+7
    // carry a matched pair between the a-nodes of consecutive gadgets. The
    // a-nodes have no even alternating distance, so the links admit no
    // alternating traversal and the k gadget paths stay disjoint.
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::pair<NodeId, NodeId>> matched;
    auto base = [&](int i) { return 8 * i; };
    for (int i = 0; i < k; ++i) {
        int b = base(i);
        edges.push_back({b + 0, b + 1});  // fa
        edges.push_back({b + 1, b + 2});  // ab (matched)
        edges.push_back({b + 2, b + 3});  // bc
        edges.push_back({b + 3, b + 4});  // cd (matched)
        edges.push_back({b + 2, b + 4});  // bd
        edges.push_back({b + 3, b + 5});  // cg
        matched.push_back({b + 1, b + 2});
        matched.push_back({b + 3, b + 4});
        if (i + 1 < k) {
            edges.push_back({b + 1, b + 6});
            edges.push_back({b + 6, b + 7});
            edges.push_back({b + 7, base(i + 1) + 1});
            matched.push_back({b + 6, b + 7});
        }
    }
    int n = 8 * k - 2;  // the last gadget has no link pair
    Graph g = Graph::from_edges(n, edges);
    Matching m = Matching::empty(g);
    for (auto& [u, v] : matched) m.add(g, *g.edge_between(u, v));
    // maximum: perfect within gadgets (3 each) plus the k-1 link pairs
    Instance inst{g, m, "blossom-chain(" + std::to_string(k) + ")", 3 * k + (k - 1)};
    return inst;
}

Instance gnp(int n, double p, uint64_t seed) {
    Rng rng{seed * 0x9e3779b97f4a7c15ull + 0x12345};
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<NodeId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<char> adj(static_cast<size_t>(n) * n, 0);
    auto put = [&](int a, int b) {
        adj[a * n + b] = adj[b * n + a] = 1;
        edges.emplace_back(a, b);
    };
    for (int i = 1; i < n; ++i) put(order[i], order[rng.below(i)]);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!adj[u * n + v] && rng.unit() < p) put(u, v);
    return {Graph::from_edges(n, edges), std::nullopt,
            "gnp(" + std::to_string(n) + "," + std::to_string(p) + ")", -1};
}

Instance cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return {Graph::from_edges(n, edges), std::nullopt, "cycle(" + std::to_string(n) + ")",
            n / 2};
}

Instance generate(const std::string& kind, const Params& params, uint64_t seed) {
    if (kind == "gnp") return gnp(params.n, params.p, seed);
    if (kind == "long-path") return long_path(params.k);
    if (kind == "cycle") return cycle(params.n);
    if (kind == "blossom-chain") return blossom_chain(params.k);
    if (kind == "fixture") {
        auto make = [&]() -> fixtures::Fixture {
            if (params.fixture == "p2") return fixtures::p2();
            if (params.fixture == "p4") return fixtures::p4();
            if (params.fixture == "walktrap") return fixtures::walktrap();
            if (params.fixture == "blossom6") return fixtures::blossom6();
            throw std::invalid_argument("unknown fixture: " + params.fixture);
        };
        fixtures::Fixture fx = make();
        int smax = params.fixture == "p2" ? 1 : (params.fixture == "blossom6" ? 3 : 2);
        return {fx.graph, fx.matching, "fixture(" + params.fixture + ")", smax};
    }
    throw std::invalid_argument("unknown generator kind: " + kind);
}

}  // namespace cmatch::gen
