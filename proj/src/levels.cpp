#include "cmatch/levels.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace cmatch {

namespace {

struct Engine {
    const Graph& g;
    const Matching& m;
    NodeId f;
    int cap;

    std::vector<std::array<int, 2>> lv;
    std::vector<std::vector<NodeId>> preds;  // minlevel predecessors
    std::vector<NodeId> bud;                 // blossom base pointer
    std::vector<char> prop_edge;
    std::vector<char> registered;
    // (tenacity, edge) min-heap
    std::priority_queue<std::pair<int, EdgeId>, std::vector<std::pair<int, EdgeId>>,
                        std::greater<>>
        bridges;
    std::vector<std::vector<std::pair<NodeId, int>>> bucket;
    std::deque<std::pair<NodeId, int>> ready;  // catch-up entries at or below step
    int step = 0;

    Engine(const Graph& g_, const Matching& m_, NodeId f_, int cap_)
        : g(g_), m(m_), f(f_), cap(cap_) {
        lv.assign(g.node_capacity(), {kInfDist, kInfDist});
        preds.assign(g.node_capacity(), {});
        bud.resize(g.node_capacity());
        for (size_t i = 0; i < bud.size(); ++i) bud[i] = static_cast<NodeId>(i);
        prop_edge.assign(g.edge_capacity(), 0);
        registered.assign(g.edge_capacity(), 0);
        bucket.assign(cap + 2, {});
    }

    NodeId find_base(NodeId v) {
        NodeId root = v;
        while (bud[root] != root) root = bud[root];
        while (bud[v] != root) {
            NodeId nxt = bud[v];
            bud[v] = root;
            v = nxt;
        }
        return root;
    }

    void register_bridges_at(NodeId v, int parity) {
        // A bridge of relevant parity becomes known once both endpoints carry
        // that parity; the hook runs at every assignment so the later endpoint
        // completes the registration.
        if (parity == 0) {
            for (EdgeId e : g.incident(v)) {
                if (m.contains(e) || prop_edge[e] || registered[e]) continue;
                NodeId u = g.edge(e).other(v);
                if (lv[u][0] < kInfDist) {
                    registered[e] = 1;
                    bridges.emplace(lv[v][0] + lv[u][0] + 1, e);
                }
            }
        } else {
            for (EdgeId e : g.incident(v)) {
                if (!m.contains(e) || prop_edge[e] || registered[e]) continue;
                NodeId u = g.edge(e).other(v);
                if (lv[u][1] < kInfDist) {
                    registered[e] = 1;
                    bridges.emplace(lv[v][1] + lv[u][1] + 1, e);
                }
            }
        }
    }

    void assign(NodeId v, int parity, int value) {
        if (lv[v][parity] == value) return;
        if (lv[v][parity] < kInfDist)
            throw std::logic_error("alt levels: conflicting level assignment");
        if (value % 2 != parity) throw std::logic_error("alt levels: parity mismatch");
        lv[v][parity] = value;
        if (value <= cap) {
            if (value <= step)
                ready.emplace_back(v, parity);
            else
                bucket[value].emplace_back(v, parity);
        }
        register_bridges_at(v, parity);
    }

    void process(NodeId v, int parity) {
        int i = lv[v][parity];
        if (parity == 0) {
            for (EdgeId e : g.incident(v)) {
                if (m.contains(e)) continue;
                NodeId u = g.edge(e).other(v);
                if (lv[u][0] < kInfDist) continue;  // bridge, handled by hooks
                if (lv[u][1] >= kInfDist) {
                    prop_edge[e] = 1;
                    preds[u].assign(1, v);
                    assign(u, 1, i + 1);
                } else if (lv[u][1] == i + 1) {
                    prop_edge[e] = 1;
                    preds[u].push_back(v);
                } else if (lv[u][1] > i + 1) {
                    throw std::logic_error("alt levels: late min-level offer");
                }
            }
        } else {
            auto p = m.partner(v);
            if (!p) return;
            NodeId u = *p;
            EdgeId e = *g.edge_between(v, u);
            if (lv[u][1] < kInfDist) return;  // bridge, handled by hooks
            if (lv[u][0] >= kInfDist) {
                prop_edge[e] = 1;
                preds[u].assign(1, v);
                assign(u, 0, i + 1);
            } else if (lv[u][0] == i + 1) {
                prop_edge[e] = 1;
                preds[u].push_back(v);
            } else if (lv[u][0] > i + 1) {
                throw std::logic_error("alt levels: late min-level offer");
            }
        }
    }

    std::vector<NodeId> resolved_preds(NodeId v) {
        std::vector<NodeId> out;
        for (NodeId p : preds[v]) out.push_back(find_base(p));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Vertices reachable from `starts` by descending resolved predecessor
    // links, never entering `blocked` (-1 blocks nothing).
    std::vector<NodeId> closure(const std::vector<NodeId>& starts, NodeId blocked) {
        std::vector<NodeId> order;
        std::vector<char> seen(g.node_capacity(), 0);
        std::vector<NodeId> stack;
        for (NodeId s : starts) {
            if (s == blocked || seen[s]) continue;
            seen[s] = 1;
            stack.push_back(s);
        }
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (NodeId u : resolved_preds(v)) {
                if (u == blocked || seen[u]) continue;
                seen[u] = 1;
                stack.push_back(u);
            }
        }
        std::sort(order.begin(), order.end());
        return order;
    }

    // Bottleneck of the two descents: the deepest-possible meeting vertex, or
    // f when two fully disjoint descents exist. Found with a 2-unit max flow
    // on the vertex-split predecessor DAG.
    NodeId bottleneck(const std::vector<NodeId>& nodes, NodeId r1, NodeId r2) {
        int k = static_cast<int>(nodes.size());
        std::vector<int> local(g.node_capacity(), -1);
        for (int i = 0; i < k; ++i) local[nodes[i]] = i;

        // Vertex split: node i -> arcs in=2i, out=2i+1. Extra source node S.
        struct Arc {
            int to, capacity, flow = 0;
            int rev;
        };
        int nn = 2 * k + 1;
        int S = 2 * k;
        std::vector<std::vector<Arc>> adj(nn);
        auto add_arc = [&](int a, int b, int c) {
            adj[a].push_back({b, c, 0, static_cast<int>(adj[b].size())});
            adj[b].push_back({a, 0, 0, static_cast<int>(adj[a].size()) - 1});
        };
        for (int i = 0; i < k; ++i) {
            int capv = nodes[i] == f ? 2 : 1;
            add_arc(2 * i, 2 * i + 1, capv);
            for (NodeId u : resolved_preds(nodes[i])) {
                int j = local[u];
                if (j >= 0) add_arc(2 * i + 1, 2 * j, 1);
            }
        }
        add_arc(S, 2 * local[r1], 1);
        add_arc(S, 2 * local[r2], 1);
        int sink = 2 * local[f] + 1;

        auto bfs_augment = [&]() -> bool {
            std::vector<std::pair<int, int>> par(nn, {-1, -1});
            std::deque<int> q{S};
            std::vector<char> vis(nn, 0);
            vis[S] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                if (v == sink) break;
                for (size_t ai = 0; ai < adj[v].size(); ++ai) {
                    const Arc& a = adj[v][ai];
                    if (a.flow < a.capacity && !vis[a.to]) {
                        vis[a.to] = 1;
                        par[a.to] = {v, static_cast<int>(ai)};
                        q.push_back(a.to);
                    }
                }
            }
            if (!vis[sink]) return false;
            int v = sink;
            while (v != S) {
                auto [pv, ai] = par[v];
                Arc& a = adj[pv][ai];
                a.flow += 1;
                adj[a.to][a.rev].flow -= 1;
                v = pv;
            }
            return true;
        };
        int flow = 0;
        while (flow < 2 && bfs_augment()) ++flow;
        if (flow == 0) throw std::logic_error("alt levels: descent cannot reach source");
        if (flow == 2) return f;

        // Residual reachability from S; the saturated split arcs crossing the
        // cut are exactly the unavoidable vertices. The deepest one is where
        // the two descents are first forced together.
        std::vector<char> vis(nn, 0);
        std::deque<int> q{S};
        vis[S] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (const Arc& a : adj[v])
                if (a.flow < a.capacity && !vis[a.to]) {
                    vis[a.to] = 1;
                    q.push_back(a.to);
                }
        }
        NodeId best = -1;
        int best_level = -1;
        for (int i = 0; i < k; ++i) {
            if (vis[2 * i] && !vis[2 * i + 1]) {
                int ml = std::min(lv[nodes[i]][0], lv[nodes[i]][1]);
                if (ml > best_level) {
                    best_level = ml;
                    best = nodes[i];
                }
            }
        }
        if (best < 0) throw std::logic_error("alt levels: no cut vertex at unit flow");
        return best;
    }

    void handle_bridge(EdgeId e, int tenacity) {
        NodeId r1 = find_base(g.edge(e).u);
        NodeId r2 = find_base(g.edge(e).v);
        if (r1 == r2) return;
        std::vector<NodeId> reach = closure({r1, r2}, -1);
        NodeId base = bottleneck(reach, r1, r2);
        std::vector<NodeId> members = closure({r1, r2}, base);
        for (NodeId z : members) {
            if (z == f) throw std::logic_error("alt levels: source absorbed into blossom");
            int mn = std::min(lv[z][0], lv[z][1]);
            int other = tenacity - mn;
            int parity = other % 2;
            if (lv[z][parity] >= kInfDist)
                assign(z, parity, other);
            else if (lv[z][parity] > other)
                throw std::logic_error("alt levels: tenacity order violated");
            bud[z] = base;
        }
    }

    void run() {
        preds[f].clear();
        assign(f, 0, 0);
        for (step = 0; step <= cap; ++step) {
            size_t cursor = 0;
            while (true) {
                if (!ready.empty()) {
                    auto [v, par] = ready.front();
                    ready.pop_front();
                    process(v, par);
                    continue;
                }
                if (cursor < bucket[step].size()) {
                    auto [v, par] = bucket[step][cursor++];
                    process(v, par);
                    continue;
                }
                if (!bridges.empty() && bridges.top().first <= 2 * step + 1) {
                    auto [t, e] = bridges.top();
                    bridges.pop();
                    handle_bridge(e, t);
                    continue;
                }
                break;
            }
        }
    }
};

}  // namespace

AltLevels compute_alt_levels(const Graph& g, const Matching& m, NodeId f, int cap) {
    if (!g.has_node(f)) throw std::invalid_argument("alt levels: unknown source");
    if (m.is_matched(f)) throw std::logic_error("alt levels: source must be unmatched");
    int full = std::max(1, g.node_count());
    if (cap < 0 || cap > full) cap = full;
    Engine eng(g, m, f, cap);
    eng.run();
    AltLevels out;
    out.lv_ = std::move(eng.lv);
    return out;
}

AltDist to_alt_dist(const Graph& g, const AltLevels& levels, NodeId f) {
    AltDist d(f, g.node_capacity());
    for (NodeId v : g.nodes()) {
        if (v == f) continue;
        d.set(v, 0, levels.at(v, 0));
        d.set(v, 1, levels.at(v, 1));
    }
    return d;
}

}  // namespace cmatch
