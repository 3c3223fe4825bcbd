#include "cmatch/linear_augment.hpp"

#include <algorithm>

#include "cmatch/mv_part.hpp"
#include "cmatch/oracle.hpp"
#include "cmatch/protocol_util.hpp"

namespace cmatch {

namespace {

constexpr int kTagRecord = 1;
constexpr int kTagEos = 2;
constexpr int kTagPath = 3;
constexpr int kTagPathEnd = 4;

struct EdgeRecord {
    NodeId u, w;
    bool matched;
};

// Leaf-to-root streaming of certificate edge records, one per edge per round.
struct CollectNode : detail::QueuedProgram {
    EdgeId up_edge = -1;
    int n_children = 0;
    std::vector<EdgeRecord> own;
    // root output
    std::vector<EdgeRecord> collected;

    int eos_seen = 0;
    bool eos_sent = false;
    int idw = 0;

    void init(sim::Env& env) override {
        idw = env.id_bits();
        for (const EdgeRecord& r : own) send_record(r);
        maybe_eos();
        flush(env);
    }

    void send_record(const EdgeRecord& r) {
        if (up_edge < 0) {
            collected.push_back(r);
            return;
        }
        push(up_edge, sim::Message(kTagRecord)
                          .add(r.u, idw)
                          .add(r.w, idw)
                          .add(r.matched ? 1 : 0, 1));
    }

    void maybe_eos() {
        if (!eos_sent && eos_seen == n_children) {
            eos_sent = true;
            if (up_edge >= 0) push(up_edge, sim::Message(kTagEos));
        }
    }

    void on_round(sim::Env& env) override {
        for (auto& [e, msg] : env.inbox()) {
            if (msg.tag == kTagRecord)
                send_record({msg.arg(0), msg.arg(1), msg.arg(2) != 0});
            else if (msg.tag == kTagEos) {
                ++eos_seen;
                maybe_eos();
            } else {
                throw std::logic_error("collect: unexpected tag");
            }
        }
    }

    bool quiescent(sim::Env&) override { return eos_sent; }
};

// Root-to-leaves flood of the chosen path edges; nodes mark incident ones.
struct DisseminateNode : detail::QueuedProgram {
    bool is_root = false;
    std::vector<EdgeId> child_list;
    std::vector<std::pair<NodeId, NodeId>> to_send;  // root only
    NodeId self = -1;
    int idw = 0;
    bool done = false;
    std::vector<std::pair<NodeId, NodeId>> marked;  // incident path edges seen

    void init(sim::Env& env) override {
        self = env.id();
        idw = env.id_bits();
        if (is_root) {
            for (auto& [u, w] : to_send) {
                note(u, w);
                for (EdgeId c : child_list)
                    push(c, sim::Message(kTagPath).add(u, idw).add(w, idw));
            }
            for (EdgeId c : child_list) push(c, sim::Message(kTagPathEnd));
            done = true;
        }
        flush(env);
    }

    void note(NodeId u, NodeId w) {
        if (u == self || w == self) marked.push_back({u, w});
    }

    void on_round(sim::Env& env) override {
        for (auto& [e, msg] : env.inbox()) {
            if (msg.tag == kTagPath) {
                note(msg.arg(0), msg.arg(1));
                for (EdgeId c : child_list)
                    push(c, sim::Message(kTagPath).add(msg.arg(0), idw).add(msg.arg(1), idw));
            } else if (msg.tag == kTagPathEnd) {
                done = true;
                for (EdgeId c : child_list) push(c, sim::Message(kTagPathEnd));
            }
        }
    }

    bool quiescent(sim::Env&) override { return done; }
};

}  // namespace

Walk linear_augpath(const Graph& g, const Matching& m, NodeId f, NodeId gnode,
                    sim::RoundReport& report, const sim::SimConfig& cfg) {
    auto um = m.unmatched_nodes(g);
    if (um.size() != 2 || !((um[0] == f && um[1] == gnode) || (um[0] == gnode && um[1] == f)))
        throw std::logic_error("linear_augpath: need exactly the two unmatched endpoints");
    int n = g.node_count();

    MvOutput out = mv(g, m, n, f, report);
    AltBaseTree t = build_abt(g, m, f, out.dist);
    LcaTable lca = lca_preprocess(t, g, report, cfg);
    LevelSets ls = compute_levels(g, m, out.dist);
    SparseCertificate cert = build_certificate(g, m, t, lca, ls, report, cfg);

    // convergecast the certificate to f over the tree; each contributing node
    // emits the edge it added (duplicates collapse at the root)
    std::vector<std::vector<EdgeId>> contributed(g.node_capacity());
    for (auto& [v, e] : cert.contributors) contributed[v].push_back(e);
    std::vector<std::unique_ptr<sim::NodeProgram>> collectors(g.node_capacity());
    std::vector<CollectNode*> cnode(g.node_capacity(), nullptr);
    for (NodeId v : g.nodes()) {
        auto p = std::make_unique<CollectNode>();
        p->up_edge = t.parent_edge[v];
        p->n_children = static_cast<int>(t.children[v].size());
        if (v != t.root) {
            EdgeId ep = t.parent_edge[v];
            p->own.push_back({g.edge(ep).u, g.edge(ep).v, m.contains(ep)});
        }
        for (EdgeId e : contributed[v]) p->own.push_back({g.edge(e).u, g.edge(e).v, m.contains(e)});
        cnode[v] = p.get();
        collectors[v] = std::move(p);
    }
    sim::run_protocol(g, collectors, cfg, report, "certificate-collect");

    // f reconstructs H from the received records only
    std::vector<EdgeId> h_edges;
    for (const EdgeRecord& r : cnode[t.root]->collected) {
        auto e = g.edge_between(r.u, r.w);
        if (!e) throw std::logic_error("linear_augpath: record names a nonexistent edge");
        h_edges.push_back(*e);
    }
    std::sort(h_edges.begin(), h_edges.end());
    h_edges.erase(std::unique(h_edges.begin(), h_edges.end()), h_edges.end());
    if (h_edges != cert.all_edges())
        throw std::logic_error("linear_augpath: convergecast lost certificate edges");
    Graph h = g.edge_subgraph(h_edges);

    auto path = oracle::find_augmenting_path(h, m.restricted_to(h), f);
    if (!path)
        throw std::logic_error(
            "linear_augpath: certificate has no augmenting path; this contradicts H > G");
    if (path->back() != gnode)
        throw std::logic_error("linear_augpath: path does not end at the other unmatched node");

    // flood the chosen edge list down the tree; nodes mark incident edges
    std::vector<std::unique_ptr<sim::NodeProgram>> spreaders(g.node_capacity());
    std::vector<DisseminateNode*> dnode(g.node_capacity(), nullptr);
    for (NodeId v : g.nodes()) {
        auto p = std::make_unique<DisseminateNode>();
        p->is_root = (v == t.root);
        for (NodeId c : t.children[v]) p->child_list.push_back(t.parent_edge[c]);
        std::sort(p->child_list.begin(), p->child_list.end());
        if (v == t.root)
            for (EdgeId e : path->edges) p->to_send.push_back({g.edge(e).u, g.edge(e).v});
        dnode[v] = p.get();
        spreaders[v] = std::move(p);
    }
    sim::run_protocol(g, spreaders, cfg, report, "path-dissemination");

    // assemble the walk from the endpoint marks
    std::vector<EdgeId> marked;
    for (NodeId v : g.nodes())
        for (auto& [u, w] : dnode[v]->marked) marked.push_back(*g.edge_between(u, w));
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    std::vector<char> on(g.edge_capacity(), 0);
    for (EdgeId e : marked) on[e] = 1;
    std::vector<NodeId> seq{f};
    std::vector<char> used(g.edge_capacity(), 0);
    NodeId cur = f;
    while (true) {
        NodeId next = -1;
        for (EdgeId e : g.incident(cur)) {
            if (on[e] && !used[e]) {
                used[e] = 1;
                next = g.edge(e).other(cur);
                break;
            }
        }
        if (next < 0) break;
        seq.push_back(next);
        cur = next;
    }
    Walk w = Walk::from_nodes(g, seq);
    if (w.nodes != path->nodes)
        throw std::logic_error("linear_augpath: disseminated marks disagree with the path");
    if (!is_augmenting(g, m, w))
        throw std::logic_error("linear_augpath: output is not an augmenting path");
    return w;
}

}  // namespace cmatch
