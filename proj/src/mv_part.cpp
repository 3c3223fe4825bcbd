#include "cmatch/mv_part.hpp"

#include <algorithm>
#include <queue>

namespace cmatch {

MvOutput mv(const Graph& g, const Matching& m, int ell, NodeId f, sim::RoundReport& report) {
    if (ell < 0) throw std::invalid_argument("mv: negative threshold");
    if (!g.has_node(f)) throw std::invalid_argument("mv: unknown source");
    if (m.is_matched(f)) throw std::logic_error("mv: source must be unmatched");

    MvOutput out;
    out.source = f;
    out.limit = ell;
    out.levels = compute_alt_levels(g, m, f, ell);
    out.dist = AltDist(f, g.node_capacity());
    out.pairs.assign(g.node_capacity(), {});
    for (NodeId v : g.nodes()) {
        if (v == f) {
            if (0 <= ell) out.pairs[v].push_back({1, 0});
            continue;
        }
        for (int t = 0; t < 2; ++t) {
            int val = out.levels.at(v, t);
            if (val <= ell) {
                out.pairs[v].push_back({t, val});
                out.dist.set(v, t, val);
            }
        }
    }
    report.charge("MV", 2LL * ell);
    return out;
}

Walk backward_shortest_augpath(const Graph& g, const Matching& m, NodeId f, NodeId gnode,
                               int len) {
    if (len % 2 != 1) throw std::logic_error("backward path: augmenting length must be odd");
    std::vector<char> on_path(g.node_capacity(), 0);
    std::vector<NodeId> rev{gnode};
    on_path[gnode] = 1;
    NodeId target = gnode;
    int remaining = len;
    while (remaining > 0) {
        NodeId next = -1;
        if (remaining % 2 == 1) {
            // unmatched step: the predecessor has an even alternating path of
            // length remaining-1 in the graph without the current path suffix
            std::vector<NodeId> residual;
            for (NodeId v : g.nodes())
                if (!on_path[v]) residual.push_back(v);
            Graph h = g.induced(residual);
            Matching mh = m.restricted_to(h);
            AltLevels lv;
            bool have_levels = false;
            for (EdgeId e : g.incident(target)) {
                if (m.contains(e)) continue;
                NodeId v = g.edge(e).other(target);
                if (on_path[v]) continue;
                if (v == f) {
                    if (remaining == 1) {
                        next = f;
                        break;
                    }
                    continue;
                }
                if (!have_levels) {
                    lv = compute_alt_levels(h, mh, f, remaining - 1);
                    have_levels = true;
                }
                if (lv.at(v, 0) == remaining - 1 && (next < 0 || v < next)) next = v;
            }
        } else {
            auto p = m.partner(target);
            if (p && !on_path[*p]) next = *p;
        }
        if (next < 0)
            throw std::logic_error("backward path: no predecessor at remaining length " +
                                   std::to_string(remaining));
        rev.push_back(next);
        on_path[next] = 1;
        target = next;
        --remaining;
    }
    std::reverse(rev.begin(), rev.end());
    Walk w = Walk::from_nodes(g, rev);
    if (!is_augmenting(g, m, w) || w.length() != len)
        throw std::logic_error("backward path: constructed walk is not a shortest augmenting path");
    return w;
}

namespace {

// Hop-limited BFS: is any other unmatched node within `limit` hops?
bool unmatched_within_hops(const Graph& g, const Matching& m, NodeId f, int limit) {
    std::vector<int> dist(g.node_capacity(), -1);
    std::queue<NodeId> q;
    dist[f] = 0;
    q.push(f);
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        if (dist[v] >= limit) continue;
        for (EdgeId e : g.incident(v)) {
            NodeId u = g.edge(e).other(v);
            if (dist[u] >= 0) continue;
            dist[u] = dist[v] + 1;
            if (!m.is_matched(u)) return true;
            q.push(u);
        }
    }
    return false;
}

int induced_diameter(const Graph& g, const std::vector<NodeId>& nodes) {
    std::vector<char> inside(g.node_capacity(), 0);
    for (NodeId v : nodes) inside[v] = 1;
    int diam = 0;
    for (NodeId s : nodes) {
        std::vector<int> dist(g.node_capacity(), -1);
        std::queue<NodeId> q;
        dist[s] = 0;
        q.push(s);
        int reached = 1;
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop();
            diam = std::max(diam, dist[v]);
            for (EdgeId e : g.incident(v)) {
                NodeId u = g.edge(e).other(v);
                if (!inside[u] || dist[u] >= 0) continue;
                dist[u] = dist[v] + 1;
                ++reached;
                q.push(u);
            }
        }
        if (reached != static_cast<int>(nodes.size())) return kInfDist;  // disconnected part
    }
    return diam;
}

}  // namespace

Partition part(const Graph& g, const Matching& m, int ell, sim::RoundReport& report) {
    if (ell < 1) throw std::invalid_argument("part: threshold must be >= 1");
    report.charge("PART", 2LL * ell);

    Partition out;
    out.label.assign(g.node_capacity(), -1);

    std::vector<char> assigned(g.node_capacity(), 0);
    while (true) {
        std::vector<NodeId> residual;
        for (NodeId v : g.nodes())
            if (!assigned[v]) residual.push_back(v);
        if (residual.size() < 2) break;
        Graph r = g.induced(residual);
        Matching mr = m.restricted_to(r);

        // globally shortest augmenting path of length <= ell, ties by ids
        int best_len = kInfDist;
        NodeId best_f = -1, best_g = -1;
        for (NodeId f : mr.unmatched_nodes(r)) {
            if (!unmatched_within_hops(r, mr, f, ell)) continue;
            AltLevels lv = compute_alt_levels(r, mr, f, ell);
            for (NodeId v : r.nodes()) {
                if (v == f || mr.is_matched(v)) continue;
                int len = lv.at(v, 1);
                if (len <= ell && (len < best_len || (len == best_len && f < best_f))) {
                    best_len = len;
                    best_f = f;
                    best_g = v;
                }
            }
        }
        if (best_f < 0) break;

        Walk seed = backward_shortest_augpath(r, mr, best_f, best_g, best_len);

        // Grow the part: matched pairs within alternating distance `radius` of
        // the primary endpoint. The distance-(radius) ball has induced
        // diameter at most 2*(radius+1), so the 8*ell bound always holds; the
        // shrink loop keeps the invariant enforced rather than assumed.
        AltLevels from_f = compute_alt_levels(r, mr, best_f, ell);
        int radius = ell;
        std::vector<NodeId> members;
        while (true) {
            std::vector<char> take(g.node_capacity(), 0);
            for (NodeId v : seed.nodes) take[v] = 1;
            for (NodeId v : r.nodes()) {
                if (take[v] || !mr.is_matched(v)) continue;
                NodeId w = *mr.partner(v);
                if (take[v] || take[w]) continue;
                int dv = std::min(from_f.at(v, 0), from_f.at(v, 1));
                int dw = std::min(from_f.at(w, 0), from_f.at(w, 1));
                if (std::min(dv, dw) <= radius) take[v] = take[w] = 1;
            }
            members.clear();
            for (NodeId v : r.nodes())
                if (take[v]) members.push_back(v);
            if (induced_diameter(g, members) <= 8 * ell) break;
            radius /= 2;
            if (radius == 0)
                throw std::logic_error("part: cannot satisfy diameter bound");
        }

        int idx = out.count();
        for (NodeId v : members) {
            out.label[v] = idx;
            assigned[v] = 1;
        }
        out.members.push_back(std::move(members));
        out.endpoints.push_back({best_f, best_g});
        out.seed_paths.push_back(std::move(seed));
    }
    return out;
}

void Partition::validate(const Graph& g, const Matching& m, int ell) const {
    std::vector<int> seen(g.node_capacity(), -1);
    for (int i = 0; i < count(); ++i) {
        for (NodeId v : members[i]) {
            if (seen[v] >= 0) throw std::logic_error("partition: node in two parts");
            seen[v] = i;
            if (label[v] != i) throw std::logic_error("partition: label mismatch");
        }
    }
    for (EdgeId e : m.edges()) {
        const Edge& ed = g.edge(e);
        if (label[ed.u] != label[ed.v])
            throw std::logic_error("partition: matched pair split across parts");
    }
    for (int i = 0; i < count(); ++i) {
        Graph sub = g.induced(members[i]);
        Matching msub = m.restricted_to(sub);
        auto um = msub.unmatched_nodes(sub);
        if (um.size() != 2) throw std::logic_error("partition: part must have two unmatched nodes");
        auto [f, gn] = endpoints[i];
        if ((um[0] != f || um[1] != gn) && (um[0] != gn || um[1] != f))
            throw std::logic_error("partition: endpoints inconsistent");
        const Walk& p = seed_paths[i];
        if (!is_augmenting(sub, msub, p) || p.length() > ell)
            throw std::logic_error("partition: part lacks an internal augmenting path <= l");
        if (induced_diameter(g, members[i]) > 8 * ell)
            throw std::logic_error("partition: diameter exceeds 8*l");
    }
}

}  // namespace cmatch
