#pragma once

#include <algorithm>
#include <functional>
#include <random>

#include "cmatch/graph.hpp"

namespace cmatch::testutil {

// Deterministic uniform int in [lo, hi]; std::uniform_int_distribution is not
// portable across standard libraries, so tests roll their own.
inline int uniform(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

// Random connected simple graph on n nodes: a random spanning tree plus each
// remaining pair independently with probability p.
inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<NodeId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform(rng, 0, i)]);
    std::vector<char> adj(static_cast<size_t>(n) * n, 0);
    auto put = [&](int a, int b) {
        adj[a * n + b] = adj[b * n + a] = 1;
        edges.emplace_back(a, b);
    };
    for (int i = 1; i < n; ++i) put(order[i], order[uniform(rng, 0, i - 1)]);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (adj[u * n + v]) continue;
            double roll = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (roll < p) put(u, v);
        }
    return Graph::from_edges(n, edges);
}

// Random (valid) matching: scan edges in random order, keep what fits, then
// drop each kept edge with probability 1/3 so instances are not all maximal.
inline Matching random_matching(const Graph& g, std::mt19937_64& rng) {
    std::vector<EdgeId> ids;
    for (const Edge& e : g.edges()) ids.push_back(e.id);
    for (int i = static_cast<int>(ids.size()) - 1; i > 0; --i)
        std::swap(ids[i], ids[uniform(rng, 0, i)]);
    Matching m = Matching::empty(g);
    for (EdgeId e : ids) {
        const Edge& ed = g.edge(e);
        if (!m.is_matched(ed.u) && !m.is_matched(ed.v) && rng() % 3 != 0) m.add(g, e);
    }
    return m;
}

// Exponential-time maximum matching by branching on the lowest-id uncovered
// node. Independent of the blossom implementation.
inline int brute_force_max_matching_size(const Graph& g) {
    std::vector<char> used(g.node_capacity(), 0);
    const auto& nodes = g.nodes();
    std::function<int(size_t)> go = [&](size_t idx) -> int {
        while (idx < nodes.size() && used[nodes[idx]]) ++idx;
        if (idx >= nodes.size()) return 0;
        NodeId v = nodes[idx];
        int best = go(idx + 1);  // leave v uncovered
        used[v] = 1;
        for (EdgeId e : g.incident(v)) {
            NodeId u = g.edge(e).other(v);
            if (used[u]) continue;
            used[u] = 1;
            best = std::max(best, 1 + go(idx + 1));
            used[u] = 0;
        }
        used[v] = 0;
        return best;
    };
    return go(0);
}

// Definitional augmenting-path check, written independently of
// cmatch::is_augmenting.
inline bool definitional_is_augmenting(const Graph& g, const Matching& m, const Walk& w) {
    if (w.nodes.size() != w.edges.size() + 1 || w.edges.empty()) return false;
    std::vector<NodeId> sorted_nodes = w.nodes;
    std::sort(sorted_nodes.begin(), sorted_nodes.end());
    if (std::adjacent_find(sorted_nodes.begin(), sorted_nodes.end()) != sorted_nodes.end())
        return false;
    for (size_t i = 0; i < w.edges.size(); ++i) {
        if (!g.has_edge(w.edges[i])) return false;
        if (!g.edge(w.edges[i]).joins(w.nodes[i], w.nodes[i + 1])) return false;
    }
    for (size_t i = 0; i + 1 < w.edges.size(); ++i)
        if (m.contains(w.edges[i]) == m.contains(w.edges[i + 1])) return false;
    return !m.is_matched(w.nodes.front()) && !m.is_matched(w.nodes.back());
}

}  // namespace cmatch::testutil
