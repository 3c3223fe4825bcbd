#include "cmatch/oracle.hpp"

#include <algorithm>
#include <queue>

namespace cmatch::oracle {

namespace {

// Contest-style blossom machinery over node ids [0, cap). Nodes absent from
// the (sub)graph simply have empty adjacency.
struct BlossomSolver {
    const Graph& g;
    int cap;
    std::vector<std::vector<NodeId>> adj;
    std::vector<NodeId> match, p, base;
    std::vector<char> used, inb;

    explicit BlossomSolver(const Graph& g_) : g(g_), cap(g_.node_capacity()) {
        adj.assign(cap, {});
        for (NodeId v : g.nodes()) {
            for (EdgeId e : g.incident(v)) adj[v].push_back(g.edge(e).other(v));
            std::sort(adj[v].begin(), adj[v].end());
        }
        match.assign(cap, -1);
        p.assign(cap, -1);
        base.assign(cap, -1);
        used.assign(cap, 0);
        inb.assign(cap, 0);
    }

    NodeId lca(NodeId a, NodeId b) {
        std::vector<char> seen(cap, 0);
        while (true) {
            a = base[a];
            seen[a] = 1;
            if (match[a] < 0) break;
            a = p[match[a]];
        }
        while (true) {
            b = base[b];
            if (seen[b]) return b;
            b = p[match[b]];
        }
    }

    void mark_path(NodeId v, NodeId b, NodeId child) {
        while (base[v] != b) {
            inb[base[v]] = 1;
            inb[base[match[v]]] = 1;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    }

    bool find_path(NodeId root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(p.begin(), p.end(), -1);
        for (int i = 0; i < cap; ++i) base[i] = i;
        std::queue<NodeId> q;
        used[root] = 1;
        q.push(root);
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop();
            for (NodeId u : adj[v]) {
                if (base[v] == base[u] || match[v] == u) continue;
                if (u == root || (match[u] >= 0 && p[match[u]] >= 0)) {
                    NodeId b = lca(v, u);
                    std::fill(inb.begin(), inb.end(), 0);
                    mark_path(v, b, u);
                    mark_path(u, b, v);
                    for (int i = 0; i < cap; ++i) {
                        if (inb[base[i]]) {
                            base[i] = b;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                    }
                } else if (p[u] < 0) {
                    p[u] = v;
                    if (match[u] < 0) {
                        // augment along the alternating tree path
                        NodeId cur = u;
                        while (cur >= 0) {
                            NodeId prev = p[cur];
                            NodeId nxt = prev >= 0 ? match[prev] : -1;
                            match[cur] = prev;
                            if (prev >= 0) match[prev] = cur;
                            cur = nxt;
                        }
                        return true;
                    }
                    used[match[u]] = 1;
                    q.push(match[u]);
                }
            }
        }
        return false;
    }
};

Matching matching_from_array(const Graph& g, const std::vector<NodeId>& match) {
    Matching m = Matching::empty(g);
    for (NodeId v : g.nodes()) {
        NodeId u = match[v];
        if (u >= 0 && v < u) m.add(g, *g.edge_between(v, u));
    }
    return m;
}

struct EnumState {
    const Graph& g;
    const Matching& m;
    NodeId f;
    std::vector<char> visited;
    std::vector<NodeId> stack;
    std::vector<std::array<int, 2>> best;
    std::vector<std::array<std::vector<NodeId>, 2>> wit;
    bool keep_witness;

    void record(NodeId v, int theta, int len) {
        if (len < best[v][theta]) {
            best[v][theta] = len;
            if (keep_witness) {
                wit[v][theta] = stack;
                wit[v][theta].push_back(v);
            }
        }
    }

    // v was reached by an even-length alternating prefix; extend over an
    // unmatched edge, then (forced) over the new endpoint's matching edge.
    void dfs(NodeId v, int len) {
        for (EdgeId e : g.incident(v)) {
            if (m.contains(e)) continue;
            NodeId u = g.edge(e).other(v);
            if (visited[u]) continue;
            record(u, 1, len + 1);
            auto w = m.partner(u);
            if (!w || visited[*w] || !g.has_node(*w)) continue;
            if (!g.edge_between(u, *w)) continue;
            visited[u] = 1;
            stack.push_back(u);
            record(*w, 0, len + 2);
            visited[*w] = 1;
            stack.push_back(*w);
            dfs(*w, len + 2);
            stack.pop_back();
            stack.pop_back();
            visited[u] = 0;
            visited[*w] = 0;
        }
    }
};

ExactAltDist enumerate(const Graph& g, const Matching& m, NodeId f, const OracleConfig& cfg,
                       bool keep_witness) {
    cfg.validate();
    if (!g.has_node(f)) throw std::invalid_argument("alt_dist_exact: unknown source");
    if (m.is_matched(f)) throw std::logic_error("alt_dist_exact: source must be unmatched");
    if (g.node_count() > cfg.enum_path_node_limit)
        throw EnumLimitError("alt_dist_exact: instance exceeds enumeration limit (" +
                             std::to_string(g.node_count()) + " > " +
                             std::to_string(cfg.enum_path_node_limit) + " nodes)");
    EnumState st{g, m, f, {}, {}, {}, {}, keep_witness};
    st.visited.assign(g.node_capacity(), 0);
    st.best.assign(g.node_capacity(), {kInfDist, kInfDist});
    st.wit.assign(keep_witness ? g.node_capacity() : 0, {});
    st.visited[f] = 1;
    st.stack.push_back(f);
    st.dfs(f, 0);

    ExactAltDist out;
    out.dist = AltDist(f, g.node_capacity());
    for (NodeId v : g.nodes()) {
        if (v == f) continue;
        out.dist.set(v, 0, st.best[v][0]);
        out.dist.set(v, 1, st.best[v][1]);
    }
    if (keep_witness) {
        out.witness.assign(g.node_capacity(), {});
        for (NodeId v : g.nodes()) {
            if (v == f) continue;
            for (int t = 0; t < 2; ++t)
                if (st.best[v][t] < kInfDist)
                    out.witness[v][t] = Walk::from_nodes(g, st.wit[v][t]);
        }
    }
    return out;
}

}  // namespace

Matching max_matching(const Graph& g) {
    BlossomSolver solver(g);
    // greedy seed, then one search per remaining free vertex
    for (NodeId v : g.nodes()) {
        if (solver.match[v] >= 0) continue;
        for (NodeId u : solver.adj[v]) {
            if (solver.match[u] < 0) {
                solver.match[v] = u;
                solver.match[u] = v;
                break;
            }
        }
    }
    for (NodeId v : g.nodes())
        if (solver.match[v] < 0) solver.find_path(v);
    return matching_from_array(g, solver.match);
}

std::optional<Walk> find_augmenting_path(const Graph& g, const Matching& m, NodeId from) {
    if (m.is_matched(from)) throw std::logic_error("find_augmenting_path: node is matched");
    BlossomSolver solver(g);
    for (NodeId v : g.nodes()) {
        auto p = m.partner(v);
        solver.match[v] = p ? *p : -1;
    }
    if (!solver.find_path(from)) return std::nullopt;

    // The symmetric difference of the old and new matchings is exactly the
    // augmenting path that was applied; walk it starting at `from`.
    std::vector<std::vector<NodeId>> diff(g.node_capacity());
    for (NodeId v : g.nodes()) {
        NodeId nu = solver.match[v];
        auto op = m.partner(v);
        NodeId ou = op ? *op : -1;
        if (nu >= 0 && nu != ou && v < nu) {
            diff[v].push_back(nu);
            diff[nu].push_back(v);
        }
        if (ou >= 0 && ou != nu && v < ou) {
            diff[v].push_back(ou);
            diff[ou].push_back(v);
        }
    }
    std::vector<NodeId> seq{from};
    std::vector<char> used(g.node_capacity(), 0);
    used[from] = 1;
    NodeId cur = from;
    while (true) {
        NodeId nxt = -1;
        for (NodeId u : diff[cur])
            if (!used[u]) {
                nxt = u;
                break;
            }
        if (nxt < 0) break;
        used[nxt] = 1;
        seq.push_back(nxt);
        cur = nxt;
    }
    Walk w = Walk::from_nodes(g, seq);
    if (!is_augmenting(g, m, w))
        throw std::logic_error("find_augmenting_path: reconstructed walk is not augmenting");
    return w;
}

AltDist alt_dist_exact(const Graph& g, const Matching& m, NodeId f, const OracleConfig& cfg) {
    return enumerate(g, m, f, cfg, false).dist;
}

ExactAltDist alt_dist_exact_with_witness(const Graph& g, const Matching& m, NodeId f,
                                         const OracleConfig& cfg) {
    return enumerate(g, m, f, cfg, true);
}

bool preserves_reachability(const Graph& h, const Graph& g, const Matching& m, NodeId f,
                            const OracleConfig& cfg) {
    for (NodeId v : h.nodes())
        if (!g.has_node(v)) throw std::invalid_argument("preserves_reachability: h not in g");
    for (const Edge& e : h.edges())
        if (!g.has_edge(e.id) || !g.edge(e.id).joins(e.u, e.v))
            throw std::invalid_argument("preserves_reachability: h edge not in g");
    AltDist dg = alt_dist_exact(g, m, f, cfg);
    AltDist dh = alt_dist_exact(h, m.restricted_to(h), f, cfg);
    for (NodeId v : g.nodes()) {
        for (int t = 0; t < 2; ++t) {
            if (!dg.finite(v, t)) continue;
            if (!h.has_node(v) || !dh.finite(v, t)) return false;
        }
    }
    return true;
}

}  // namespace cmatch::oracle
