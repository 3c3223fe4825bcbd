#include "cmatch/cap.hpp"

#include <algorithm>

namespace cmatch {

namespace {

constexpr int kTagValue = 1;
constexpr int kTagChosen = 2;

struct CapNode : sim::NodeProgram {
    // set by the orchestrator between runs
    bool quit = false;
    bool is_target = false;
    bool is_source = false;
    int mv_value = -1;    // r^0 in the residual subgraph, path semantics at f
    int needed = -1;      // target only: required predecessor value, -1 = derive
    bool announce_step = false;
    EdgeId matched_edge = -1;

    // outputs read by the orchestrator
    NodeId chosen_peer = -1;
    EdgeId chosen_edge = -1;
    int handed_remaining = -1;
    bool became_target = false;

    int width = 0;

    void init(sim::Env& env) override {
        width = env.id_bits() + 2;
        became_target = false;
        if (quit) {
            env.halt();
            return;
        }
        if (announce_step) {
            if (!is_target && mv_value >= 0)
                for (auto& l : env.links()) env.send(l.edge, sim::Message(kTagValue).add(mv_value, width));
        } else if (is_target) {
            // even step: hand off over the matched edge
            if (matched_edge < 0) throw std::logic_error("cap: even step without matched edge");
            env.send(matched_edge, sim::Message(kTagChosen).add(handed_remaining, width));
            env.passive();
            return;
        }
        env.passive();
    }

    void round(sim::Env& env) override {
        if (is_target && announce_step && env.round() == 1) {
            // pick the predecessor among announced values over unmatched edges
            int best_val = -1;
            if (needed >= 0) best_val = needed;
            NodeId best_peer = -1;
            EdgeId best_edge = -1;
            for (auto& l : env.links()) {
                if (l.edge == matched_edge) continue;
                const sim::Message* msg = env.received(l.edge);
                if (!msg || msg->tag != kTagValue) continue;
                int val = msg->arg(0);
                if (needed < 0) {
                    if (best_peer < 0 || val < best_val ||
                        (val == best_val && l.peer < best_peer)) {
                        best_val = val;
                        best_peer = l.peer;
                        best_edge = l.edge;
                    }
                } else if (val == needed && (best_peer < 0 || l.peer < best_peer)) {
                    best_peer = l.peer;
                    best_edge = l.edge;
                }
            }
            if (best_peer < 0) throw CapNoPathError("cap: target found no eligible predecessor");
            chosen_peer = best_peer;
            chosen_edge = best_edge;
            env.send(best_edge, sim::Message(kTagChosen).add(best_val, width));
            env.passive();
            return;
        }
        for (auto& [e, msg] : env.inbox()) {
            if (msg.tag == kTagChosen) {
                became_target = true;
                handed_remaining = msg.arg(0);
                chosen_edge = e;
                env.passive();
                return;
            }
        }
        env.passive();
    }
};

}  // namespace

Walk cap(const Graph& g, const Matching& m, NodeId f, NodeId gnode, int ell,
         sim::RoundReport& report, const sim::SimConfig& cfg) {
    if (!g.has_node(f) || !g.has_node(gnode))
        throw std::invalid_argument("cap: unknown endpoint");
    if (m.is_matched(f) || m.is_matched(gnode))
        throw std::logic_error("cap: endpoints must be unmatched");
    auto um = m.unmatched_nodes(g);
    if (um.size() != 2) throw std::logic_error("cap: graph must have exactly two unmatched nodes");
    if (ell < 1) throw std::invalid_argument("cap: budget must be >= 1");

    std::vector<std::unique_ptr<sim::NodeProgram>> programs(g.node_capacity());
    std::vector<CapNode*> node(g.node_capacity(), nullptr);
    for (NodeId v : g.nodes()) {
        auto p = std::make_unique<CapNode>();
        p->is_source = (v == f);
        auto partner = m.partner(v);
        if (partner) p->matched_edge = *g.edge_between(v, *partner);
        node[v] = p.get();
        programs[v] = std::move(p);
    }

    std::vector<NodeId> path{gnode};  // backwards from g
    std::vector<char> on_path(g.node_capacity(), 0);
    on_path[gnode] = 1;
    NodeId target = gnode;
    node[target]->is_target = true;
    int remaining = -1;  // unknown until the first announce round

    int iteration = 0;
    while (remaining != 0) {
        ++iteration;
        if (iteration > ell + 1)
            throw CapNoPathError("cap: budget exhausted without reaching the source");
        bool odd_step = (iteration == 1) || (remaining % 2 == 1);
        if (odd_step) {
            // residual subgraph excludes the path so far (including target)
            std::vector<NodeId> residual;
            for (NodeId v : g.nodes())
                if (!on_path[v]) residual.push_back(v);
            Graph h = g.induced(residual);
            Matching mh = m.restricted_to(h);
            int threshold = remaining < 0 ? ell - 1 : remaining - 1;
            MvOutput out = mv(h, mh, threshold, f, report);
            for (NodeId v : g.nodes()) {
                CapNode* n = node[v];
                n->quit = on_path[v] && v != target;
                n->announce_step = true;
                n->mv_value = -1;
                n->needed = remaining < 0 ? -1 : remaining - 1;
                if (h.has_node(v)) {
                    int val = out.levels.path_value(v, 0, f);
                    if (val <= threshold) n->mv_value = val;
                }
            }
        } else {
            for (NodeId v : g.nodes()) {
                CapNode* n = node[v];
                n->quit = on_path[v] && v != target;
                n->announce_step = false;
            }
            node[target]->handed_remaining = remaining - 1;
        }
        sim::run_protocol(g, programs, cfg, report, "CAP");

        NodeId next = -1;
        for (NodeId v : g.nodes())
            if (node[v]->became_target) {
                if (next >= 0) throw std::logic_error("cap: two nodes took the handoff");
                next = v;
            }
        if (next < 0)
            throw CapNoPathError("cap: no augmenting path within budget " + std::to_string(ell));
        node[target]->is_target = false;
        remaining = node[next]->handed_remaining;
        node[next]->is_target = true;
        node[next]->needed = -1;
        path.push_back(next);
        on_path[next] = 1;
        target = next;
    }

    std::reverse(path.begin(), path.end());
    Walk w = Walk::from_nodes(g, path);
    if (w.front() != f || w.back() != gnode || !is_augmenting(g, m, w))
        throw std::logic_error("cap: constructed walk is not an augmenting path");
    return w;
}

}  // namespace cmatch
