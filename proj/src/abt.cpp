#include "cmatch/abt.hpp"

#include <algorithm>
#include <queue>

#include "cmatch/protocol_util.hpp"

namespace cmatch {

namespace {

// Parent eligibility uses plain path semantics at the root: the zero-length
// path at f is 0-alternating, so r^0(f,f) reads as 0 here even though the
// AltDist sentinel stores infinity.
int parent_value(const AltDist& d, NodeId u, int theta) {
    if (u == d.source()) return theta == 0 ? 0 : kInfDist;
    return d.at(u, theta);
}

}  // namespace

AltBaseTree build_abt(const Graph& g, const Matching& m, NodeId f, const AltDist& dist) {
    if (!g.has_node(f)) throw std::invalid_argument("build_abt: unknown root");
    if (m.is_matched(f)) throw std::logic_error("build_abt: root must be unmatched");

    AltBaseTree t;
    t.root = f;
    t.parent.assign(g.node_capacity(), -1);
    t.parent_edge.assign(g.node_capacity(), -1);
    t.depth.assign(g.node_capacity(), -1);
    t.children.assign(g.node_capacity(), {});
    t.tree_edge.assign(g.edge_capacity(), 0);

    for (NodeId v : g.nodes()) {
        if (v == f) continue;
        int gamma = dist.gamma(v);
        int own = dist.at(v, gamma);
        if (own >= kInfDist)
            throw std::logic_error("build_abt: node " + std::to_string(v) +
                                   " is unreachable from the root");
        NodeId best = -1;
        EdgeId best_edge = -1;
        for (EdgeId e : g.incident(v)) {
            NodeId u = g.edge(e).other(v);
            int em = m.contains(e) ? 1 : 0;
            if (em != 1 - gamma) continue;
            if (parent_value(dist, u, 1 - gamma) + 1 != own) continue;
            if (best < 0 || u < best) {
                best = u;
                best_edge = e;
            }
        }
        if (best < 0)
            throw std::logic_error("build_abt: node " + std::to_string(v) +
                                   " has no eligible parent edge");
        t.parent[v] = best;
        t.parent_edge[v] = best_edge;
        t.tree_edge[best_edge] = 1;
    }

    // depths via BFS over the chosen parent pointers
    for (NodeId v : g.nodes())
        if (v != f) t.children[t.parent[v]].push_back(v);
    std::queue<NodeId> q;
    t.depth[f] = 0;
    q.push(f);
    int seen = 0;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        ++seen;
        t.height = std::max(t.height, t.depth[v]);
        for (NodeId c : t.children[v]) {
            t.depth[c] = t.depth[v] + 1;
            q.push(c);
        }
    }
    if (seen != g.node_count())
        throw std::logic_error("build_abt: parent choices do not form a tree");
    return t;
}

std::vector<NodeId> AltBaseTree::subtree(NodeId v) const {
    std::vector<NodeId> out;
    std::queue<NodeId> q;
    q.push(v);
    while (!q.empty()) {
        NodeId x = q.front();
        q.pop();
        out.push_back(x);
        for (NodeId c : children[x]) q.push(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EdgeId> AltBaseTree::tree_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < static_cast<int>(tree_edge.size()); ++e)
        if (tree_edge[e]) out.push_back(e);
    return out;
}

void AltBaseTree::validate(const Graph& g, const Matching& m, const AltDist& dist) const {
    int n = g.node_count();
    if (static_cast<int>(tree_edges().size()) != n - 1)
        throw std::logic_error("abt: tree must have n-1 edges");
    for (NodeId v : g.nodes()) {
        if (v == root) continue;
        NodeId u = parent[v];
        EdgeId e = parent_edge[v];
        if (u < 0 || e < 0 || !g.edge(e).joins(u, v)) throw std::logic_error("abt: bad parent");
        int gamma = dist.gamma(v);
        if ((m.contains(e) ? 1 : 0) != 1 - gamma)
            throw std::logic_error("abt: parent edge has wrong matching membership");
        if (dist.at(v, gamma) != parent_value(dist, u, 1 - gamma) + 1)
            throw std::logic_error("abt: parent edge does not close a shortest path");
        // strict decrease of the shortest alternating distance toward the root
        int own = dist.at(v, gamma);
        int up = u == root ? 0 : dist.at(u, dist.gamma(u));
        if (own <= up) throw std::logic_error("abt: distance not monotone along the tree");
    }
}

namespace {

constexpr int kTagChild = 1;
constexpr int kTagDepth = 2;
constexpr int kTagMaxDepth = 3;
constexpr int kTagHeight = 4;
constexpr int kTagPair = 5;
constexpr int kTagCrossPair = 6;
constexpr int kTagCrossEnd = 7;

struct LcaNode : detail::QueuedProgram {
    // wiring (local knowledge)
    bool is_root = false;
    EdgeId up_edge = -1;  // edge to parent
    std::vector<EdgeId> non_tree;

    // learned state
    int depth_known = -1;
    int height_known = -1;
    std::vector<EdgeId> child_edges;
    size_t maxd_reports = 0;
    int maxd = 0;
    std::vector<std::pair<NodeId, int>> path;  // deepest-first while growing
    bool path_done = false;
    bool streamed = false;
    std::map<EdgeId, std::vector<std::pair<NodeId, int>>> cross;
    std::map<EdgeId, char> cross_done;
    std::map<EdgeId, int> lca_out;
    NodeId self = -1;
    int idw = 0, dw = 0;

    void init(sim::Env& env) override {
        self = env.id();
        idw = env.id_bits();
        dw = env.id_bits() + 1;
        if (up_edge >= 0) push(up_edge, sim::Message(kTagChild));
        if (is_root) {
            depth_known = 0;
            maybe_finish_path();
        }
        flush(env);
    }

    void maybe_start_depth_broadcast() {
        // root starts once children are known (one round after the claims)
        if (is_root && depth_known == 0) {
            for (EdgeId e : child_edges) push(e, sim::Message(kTagDepth).add(1, dw));
            for (EdgeId e : child_edges)
                push(e, sim::Message(kTagPair).add(self, idw).add(0, dw));
        }
    }

    void maybe_finish_path() {
        if (path_done || depth_known < 0) return;
        if (static_cast<int>(path.size()) != depth_known) return;
        path_done = true;
        // stream the full root path over every incident non-tree edge
        for (EdgeId e : non_tree) {
            push(e, sim::Message(kTagCrossPair).add(self, idw).add(depth_known, dw));
            for (auto it = path.rbegin(); it != path.rend(); ++it)
                push(e, sim::Message(kTagCrossPair).add(it->first, idw).add(it->second, dw));
            push(e, sim::Message(kTagCrossEnd));
        }
    }

    void on_round(sim::Env& env) override {
        for (auto& [e, msg] : env.inbox()) {
            switch (msg.tag) {
                case kTagChild:
                    child_edges.push_back(e);
                    break;
                case kTagDepth: {
                    depth_known = msg.arg(0);
                    maxd = std::max(maxd, depth_known);
                    for (EdgeId c : child_edges)
                        push(c, sim::Message(kTagDepth).add(depth_known + 1, dw));
                    // own (id, depth) pair starts the subtree broadcast
                    for (EdgeId c : child_edges)
                        push(c, sim::Message(kTagPair).add(self, idw).add(depth_known, dw));
                    if (child_edges.empty() && up_edge >= 0)
                        push(up_edge, sim::Message(kTagMaxDepth).add(depth_known, dw));
                    maybe_finish_path();
                    break;
                }
                case kTagMaxDepth: {
                    ++maxd_reports;
                    maxd = std::max(maxd, msg.arg(0));
                    if (maxd_reports == child_edges.size()) {
                        if (is_root) {
                            height_known = maxd;
                            for (EdgeId c : child_edges)
                                push(c, sim::Message(kTagHeight).add(height_known, dw));
                        } else if (up_edge >= 0) {
                            push(up_edge, sim::Message(kTagMaxDepth).add(maxd, dw));
                        }
                    }
                    break;
                }
                case kTagHeight:
                    height_known = msg.arg(0);
                    for (EdgeId c : child_edges)
                        push(c, sim::Message(kTagHeight).add(height_known, dw));
                    break;
                case kTagPair: {
                    // ancestor pair arriving from the parent; forward downward
                    path.push_back({msg.arg(0), msg.arg(1)});
                    for (EdgeId c : child_edges)
                        push(c, sim::Message(kTagPair).add(msg.arg(0), idw).add(msg.arg(1), dw));
                    maybe_finish_path();
                    break;
                }
                case kTagCrossPair:
                    cross[e].push_back({msg.arg(0), msg.arg(1)});
                    break;
                case kTagCrossEnd:
                    cross_done[e] = 1;
                    break;
                default:
                    throw std::logic_error("lca: unexpected tag");
            }
        }
        if (is_root && env.round() == 1) {
            maybe_start_depth_broadcast();
            if (child_edges.empty()) height_known = 0;
        }
        // resolve lca for completed exchanges once the own path is known
        if (path_done) {
            for (auto& [e, done] : cross_done) {
                if (!done || lca_out.count(e)) continue;
                // both streams run root-to-node; the last common entry is the lca
                std::vector<std::pair<NodeId, int>> own;
                for (auto it = path.rbegin(); it != path.rend(); ++it) own.push_back(*it);
                own.push_back({self, depth_known});
                // stream format: the peer itself first, then its root path
                const auto& theirs = cross[e];
                std::vector<std::pair<NodeId, int>> other(theirs.begin() + 1, theirs.end());
                other.push_back(theirs.front());
                int best = -1;
                for (size_t i = 0; i < own.size() && i < other.size(); ++i) {
                    if (own[i] != other[i]) break;
                    best = own[i].second;
                }
                if (best < 0) throw std::logic_error("lca: paths share no prefix");
                lca_out[e] = best;
            }
        }
    }

    bool quiescent(sim::Env&) override {
        if (depth_known < 0 || !path_done || height_known < 0) return false;
        for (EdgeId e : non_tree)
            if (!lca_out.count(e)) return false;
        return true;
    }
};

}  // namespace

LcaTable lca_preprocess(const AltBaseTree& t, const Graph& g, sim::RoundReport& report,
                        const sim::SimConfig& cfg) {
    std::vector<std::unique_ptr<sim::NodeProgram>> programs(g.node_capacity());
    std::vector<LcaNode*> node(g.node_capacity(), nullptr);
    for (NodeId v : g.nodes()) {
        auto p = std::make_unique<LcaNode>();
        p->is_root = (v == t.root);
        p->up_edge = t.parent_edge[v];
        for (EdgeId e : g.incident(v))
            if (!t.is_tree_edge(e)) p->non_tree.push_back(e);
        node[v] = p.get();
        programs[v] = std::move(p);
    }
    sim::run_protocol(g, programs, cfg, report, "ABT-LCA");

    LcaTable table;
    table.lca_depth.assign(g.edge_capacity(), -1);
    table.root_path.assign(g.node_capacity(), {});
    table.height = node[t.root]->height_known;
    for (NodeId v : g.nodes()) {
        LcaNode* n = node[v];
        if (n->depth_known != t.depth[v])
            throw std::logic_error("lca: distributed depth disagrees with the tree");
        if (n->height_known != table.height)
            throw std::logic_error("lca: nodes disagree on the height");
        std::vector<NodeId> rp;
        for (auto it = n->path.rbegin(); it != n->path.rend(); ++it) rp.push_back(it->first);
        rp.push_back(v);
        table.root_path[v] = std::move(rp);
        for (auto& [e, val] : n->lca_out) {
            if (table.lca_depth[e] >= 0 && table.lca_depth[e] != val)
                throw std::logic_error("lca: endpoints disagree");
            table.lca_depth[e] = val;
        }
    }
    return table;
}

void LcaTable::validate(const Graph& g, const AltBaseTree& t) const {
    for (const Edge& e : g.edges()) {
        if (t.is_tree_edge(e.id)) {
            if (lca_depth[e.id] != -1) throw std::logic_error("lca: tree edge has an entry");
            continue;
        }
        // centralized recomputation by walking parents
        NodeId a = e.u, b = e.v;
        while (t.depth[a] > t.depth[b]) a = t.parent[a];
        while (t.depth[b] > t.depth[a]) b = t.parent[b];
        while (a != b) {
            a = t.parent[a];
            b = t.parent[b];
        }
        if (lca_depth[e.id] != t.depth[a])
            throw std::logic_error("lca: entry differs from centralized recomputation");
    }
    for (NodeId v : g.nodes()) {
        const auto& rp = root_path[v];
        if (rp.empty() || rp.front() != t.root || rp.back() != v)
            throw std::logic_error("lca: bad root path");
    }
}

}  // namespace cmatch
