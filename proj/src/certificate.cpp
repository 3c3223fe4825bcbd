#include "cmatch/certificate.hpp"

#include <algorithm>
#include <sstream>

#include "cmatch/protocol_util.hpp"

namespace cmatch {

std::vector<EdgeId> LevelSets::edges_at(int k) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < static_cast<int>(level.size()); ++e)
        if (level[e] == k) out.push_back(e);
    return out;
}

LevelSets compute_levels(const Graph& g, const Matching& m, const AltDist& dist) {
    LevelSets ls;
    ls.level.assign(g.edge_capacity(), kNoLevel);
    for (const Edge& e : g.edges()) {
        int parity = m.contains(e.id) ? 1 : 0;
        int a = dist.at(e.u, parity);
        int b = dist.at(e.v, parity);
        int k = std::max(a, b);
        if (k < kInfDist) {
            ls.level[e.id] = k;
            ls.max_level = std::max(ls.max_level, k);
        }
    }
    return ls;
}

Graph level_subgraph(const Graph& g, const AltBaseTree& t, const LevelSets& ls, int k) {
    std::vector<EdgeId> keep = t.tree_edges();
    for (const Edge& e : g.edges())
        if (!t.is_tree_edge(e.id) && ls.level[e.id] != kNoLevel && ls.level[e.id] <= k)
            keep.push_back(e.id);
    return g.edge_subgraph(keep);
}

std::vector<EdgeId> bridges_of(const Graph& g) {
    std::vector<int> disc(g.node_capacity(), -1), low(g.node_capacity(), 0);
    std::vector<EdgeId> out;
    int timer = 0;
    // iterative DFS to stay safe on long paths
    struct Frame {
        NodeId v;
        EdgeId via;
        size_t idx;
    };
    for (NodeId start : g.nodes()) {
        if (disc[start] >= 0) continue;
        std::vector<Frame> stack{{start, -1, 0}};
        disc[start] = low[start] = timer++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const auto& inc = g.incident(fr.v);
            if (fr.idx < inc.size()) {
                EdgeId e = inc[fr.idx++];
                if (e == fr.via) continue;
                NodeId u = g.edge(e).other(fr.v);
                if (disc[u] < 0) {
                    disc[u] = low[u] = timer++;
                    stack.push_back({u, e, 0});
                } else {
                    low[fr.v] = std::min(low[fr.v], disc[u]);
                }
            } else {
                EdgeId via = fr.via;
                NodeId v = fr.v;
                stack.pop_back();
                if (!stack.empty()) {
                    NodeId p = stack.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) out.push_back(via);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

constexpr int kTagMaxLevel = 1;
constexpr int kTagLevelCount = 2;  // KMAX broadcast
constexpr int kTagRecord = 3;      // (u, w, lca) aggregate

struct Candidate {
    int lca;
    NodeId u, w;  // canonical u < w
    bool operator<(const Candidate& o) const {
        return std::tie(lca, u, w) < std::tie(o.lca, o.u, o.w);
    }
};

struct ConstFNode : detail::QueuedProgram {
    // wiring
    bool is_root = false;
    EdgeId up_edge = -1;
    int n_children = 0;
    int depth = 0;
    int dmax = 0;
    // own non-tree candidates per level, sorted
    std::map<int, std::vector<Candidate>> own;
    int own_max_level = 0;
    // single-shot mode: run exactly this level with anchor 0; -1 = pipelined
    int fixed_k = -1;

    // state
    int reports = 0;
    int maxk_acc = 0;
    int kmax = -1;
    long long anchor = -1;  // round the root launched the level count
    std::map<int, std::vector<Candidate>> received;  // per level
    // outputs
    int transition_k = -1;
    Candidate chosen{kInfDist, -1, -1};
    std::map<int, std::optional<Candidate>> outputs;

    NodeId self = -1;
    int idw = 0, vw = 0;

    void init(sim::Env& env) override {
        self = env.id();
        idw = env.id_bits();
        vw = env.id_bits() + 1;
        maxk_acc = own_max_level;
        if (fixed_k >= 0) {
            // single-shot schedule: level fixed_k is handled at round dmax - depth + 1
            kmax = fixed_k;
            anchor = 1LL - dmax - fixed_k;
            return;
        }
        if (n_children == 0 && up_edge >= 0)
            push(up_edge, sim::Message(kTagMaxLevel).add(maxk_acc, vw));
        if (is_root && n_children == 0) launch(0);
        flush(env);
    }

    void launch(long long round) {
        kmax = maxk_acc;
        anchor = round;
        for (EdgeId c : child_list) push(c, sim::Message(kTagLevelCount).add(kmax, vw));
    }

    std::vector<EdgeId> child_list;

    int slot(long long round) const {
        // level handled this round under the send schedule
        return static_cast<int>(round - (anchor + 2LL * dmax - depth));
    }

    void on_round(sim::Env& env) override {
        for (auto& [e, msg] : env.inbox()) {
            switch (msg.tag) {
                case kTagMaxLevel:
                    ++reports;
                    maxk_acc = std::max(maxk_acc, msg.arg(0));
                    if (reports == n_children) {
                        if (is_root)
                            launch(env.round());
                        else
                            push(up_edge, sim::Message(kTagMaxLevel).add(maxk_acc, vw));
                    }
                    break;
                case kTagLevelCount:
                    kmax = msg.arg(0);
                    anchor = env.round() - depth;
                    for (EdgeId c : child_list)
                        push(c, sim::Message(kTagLevelCount).add(kmax, vw));
                    break;
                case kTagRecord: {
                    int k = slot(env.round());
                    received[k].push_back({msg.arg(2), msg.arg(0), msg.arg(1)});
                    break;
                }
                default:
                    throw std::logic_error("constf: unexpected tag");
            }
        }
        if (kmax < 0) return;
        int k = slot(env.round());
        if (k < 1 || k > kmax) return;
        // aggregate: children minima arrived this round plus own candidates
        Candidate best{kInfDist, -1, -1};
        bool have = false;
        auto consider = [&](const Candidate& c) {
            if (!have || c < best) {
                best = c;
                have = true;
            }
        };
        auto ri = received.find(k);
        if (ri != received.end())
            for (const Candidate& c : ri->second) consider(c);
        auto oi = own.find(k);
        if (oi != own.end())
            for (const Candidate& c : oi->second) consider(c);
        if (have) {
            outputs[k] = best;
            if (best.lca < depth && transition_k < 0) {
                transition_k = k;
                chosen = best;
            }
            if (up_edge >= 0)
                push(up_edge, sim::Message(kTagRecord)
                                  .add(best.u, idw)
                                  .add(best.w, idw)
                                  .add(best.lca, vw));
        } else {
            outputs[k] = std::nullopt;
        }
    }

    bool quiescent(sim::Env& env) override {
        if (kmax < 0) return false;
        return slot(env.round()) >= kmax;
    }
};

struct PipelineResult {
    std::vector<ConstFNode*> node;
    std::vector<std::unique_ptr<sim::NodeProgram>> programs;
};

PipelineResult make_pipeline(const Graph& g, const AltBaseTree& t, const LcaTable& lca,
                             const LevelSets& levels, int fixed_k) {
    PipelineResult pr;
    pr.programs.resize(g.node_capacity());
    pr.node.assign(g.node_capacity(), nullptr);
    for (NodeId v : g.nodes()) {
        auto p = std::make_unique<ConstFNode>();
        p->is_root = (v == t.root);
        p->up_edge = t.parent_edge[v];
        p->n_children = static_cast<int>(t.children[v].size());
        for (NodeId c : t.children[v]) p->child_list.push_back(t.parent_edge[c]);
        std::sort(p->child_list.begin(), p->child_list.end());
        p->depth = t.depth[v];
        p->dmax = lca.height;
        p->fixed_k = fixed_k;
        for (EdgeId e : g.incident(v)) {
            if (t.is_tree_edge(e)) continue;
            int k = levels.level[e];
            if (k == kNoLevel) continue;
            const Edge& ed = g.edge(e);
            Candidate c{lca.lca_depth[e], std::min(ed.u, ed.v), std::max(ed.u, ed.v)};
            p->own[k].push_back(c);
            p->own_max_level = std::max(p->own_max_level, k);
        }
        for (auto& [k, v2] : p->own) std::sort(v2.begin(), v2.end());
        pr.node[v] = p.get();
        pr.programs[v] = std::move(p);
    }
    return pr;
}

}  // namespace

std::vector<std::optional<EdgeId>> constf(const Graph& g, const AltBaseTree& t,
                                          const LcaTable& lca, const LevelSets& levels, int k,
                                          sim::RoundReport& report, const sim::SimConfig& cfg) {
    if (k < 1) throw std::invalid_argument("constf: level must be >= 1");
    PipelineResult pr = make_pipeline(g, t, lca, levels, k);
    sim::run_protocol(g, pr.programs, cfg, report, "ConstF");
    std::vector<std::optional<EdgeId>> out(g.node_capacity());
    for (NodeId v : g.nodes()) {
        auto it = pr.node[v]->outputs.find(k);
        if (it == pr.node[v]->outputs.end() || !it->second) continue;
        const Candidate& c = *it->second;
        if (c.lca < t.depth[v]) out[v] = *g.edge_between(c.u, c.w);
    }
    return out;
}

std::vector<EdgeId> SparseCertificate::all_edges() const {
    std::vector<EdgeId> out = tree_edges;
    for (auto& [e, k] : fc) out.push_back(e);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Graph SparseCertificate::to_graph(const Graph& base) const {
    return base.edge_subgraph(all_edges());
}

SparseCertificate build_certificate(const Graph& g, const Matching& m, const AltBaseTree& t,
                                    const LcaTable& lca, const LevelSets& levels,
                                    sim::RoundReport& report, const sim::SimConfig& cfg) {
    (void)m;
    PipelineResult pr = make_pipeline(g, t, lca, levels, -1);
    auto res = sim::run_protocol(g, pr.programs, cfg, report, "ConstF");

    SparseCertificate cert;
    cert.tree_edges = t.tree_edges();
    cert.rounds_actual = res.rounds;
    cert.rounds_budget = 2LL * (g.node_count() + lca.height) + 8;
    std::vector<char> in_fc(g.edge_capacity(), 0);
    for (NodeId v : g.nodes()) {
        ConstFNode* n = pr.node[v];
        if (n->transition_k < 0) continue;
        EdgeId e = *g.edge_between(n->chosen.u, n->chosen.w);
        cert.contributors.push_back({v, e});
        if (!in_fc[e]) {
            in_fc[e] = 1;
            cert.fc.push_back({e, n->transition_k});
        }
    }
    std::sort(cert.fc.begin(), cert.fc.end(),
              [](auto& a, auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
    if (static_cast<int>(cert.fc.size()) > g.node_count() - 1)
        throw std::logic_error("certificate: F^c exceeds n-1 edges");
    if (static_cast<int>(cert.contributors.size()) > g.node_count() - 1)
        throw std::logic_error("certificate: more contributors than non-root nodes");
    if (cert.rounds_actual > cert.rounds_budget)
        throw std::logic_error("certificate: pipeline exceeded its round budget");
    return cert;
}

std::string dump_certificate(const Graph& g, const SparseCertificate& cert) {
    std::ostringstream out;
    out << "tree";
    for (EdgeId e : cert.tree_edges) out << " " << g.edge(e).u << "-" << g.edge(e).v;
    out << "\n";
    for (auto& [e, k] : cert.fc) out << k << " " << g.edge(e).u << " " << g.edge(e).v << "\n";
    return out.str();
}

}  // namespace cmatch
