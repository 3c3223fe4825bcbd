#include "cmatch/driver.hpp"

#include <algorithm>

#include "cmatch/cap.hpp"
#include "cmatch/linear_augment.hpp"
#include "cmatch/protocol_util.hpp"

namespace cmatch {

namespace {

// ---- randomized maximal matching by proposals --------------------------------

constexpr int kMmPropose = 1;
constexpr int kMmAccept = 2;
constexpr int kMmMatched = 3;

struct MmNode : sim::NodeProgram {
    // output
    EdgeId matched_edge = -1;

    std::vector<char> live;  // per link index: neighbor still free and active
    bool announced = false;
    bool proposer = false;  // role for the current cycle

    void init(sim::Env& env) override { live.assign(env.links().size(), 1); }

    void round(sim::Env& env) override {
        const auto& links = env.links();
        // matched announcements land in the next cycle; prune regardless of phase
        for (auto& [e, msg] : env.inbox()) {
            if (msg.tag != kMmMatched) continue;
            for (size_t i = 0; i < links.size(); ++i)
                if (links[i].edge == e) live[i] = 0;
        }
        int phase = static_cast<int>((env.round() - 1) % 3);
        if (phase == 0) {
            if (matched_edge >= 0) {
                if (announced) env.halt();
                return;
            }
            proposer = env.rng() % 2 == 0;
            if (proposer) {
                std::vector<int> cand;
                for (size_t i = 0; i < links.size(); ++i)
                    if (live[i]) cand.push_back(static_cast<int>(i));
                if (!cand.empty()) {
                    int pick = cand[env.rng() % cand.size()];
                    env.send(links[pick].edge, sim::Message(kMmPropose));
                }
            }
            return;
        }
        if (phase == 1) {
            if (matched_edge >= 0 || proposer) return;
            std::vector<EdgeId> proposals;
            for (auto& [e, msg] : env.inbox())
                if (msg.tag == kMmPropose) proposals.push_back(e);
            if (!proposals.empty()) {
                EdgeId pick = proposals[env.rng() % proposals.size()];
                env.send(pick, sim::Message(kMmAccept));
                matched_edge = pick;
            }
            return;
        }
        // phase 2: proposers learn their fate, fresh pairs announce
        if (matched_edge < 0 && proposer)
            for (auto& [e, msg] : env.inbox())
                if (msg.tag == kMmAccept) matched_edge = e;
        if (matched_edge >= 0 && !announced) {
            announced = true;
            for (auto& l : links) env.send(l.edge, sim::Message(kMmMatched));
            return;
        }
        if (matched_edge < 0) {
            bool any_live = false;
            for (char c : live) any_live |= (c != 0);
            if (!any_live) env.halt();
        }
    }
};

// ---- s_hat agreement: max-id flood with counted echo --------------------------

constexpr int kShClaim = 1;     // (id, dist)
constexpr int kShNotChild = 2;  // (claim id)
constexpr int kShNodes = 3;     // (claim id, subtree node count)
constexpr int kShEdges = 4;     // (claim id, subtree matched-edge count)
constexpr int kShResult = 5;    // (s_hat)

struct ShatNode : detail::QueuedProgram {
    bool has_matched_here = false;  // counted at the lower endpoint
    int n_total = 0;

    NodeId best = -1;
    int dist = 0;
    EdgeId parent = -1;
    struct PerEdge {
        NodeId era = -1;
        int nodes = -1, medges = -1;
        bool notchild = false;
    };
    std::map<EdgeId, PerEdge> in;
    bool reported = false;
    int result = -1;
    NodeId self = -1;
    int idw = 0, cw = 0;

    void adopt(sim::Env& env, NodeId id, int d, EdgeId via) {
        best = id;
        dist = d;
        parent = via;
        reported = false;
        for (auto& [e, pe] : in)
            if (pe.era != id) pe = PerEdge{};
        for (auto& l : env.links()) {
            if (l.edge == via) continue;
            push(l.edge, sim::Message(kShClaim).add(best, idw).add(dist, cw));
            push(l.edge, sim::Message(kShNotChild).add(best, idw));
        }
    }

    void init(sim::Env& env) override {
        self = env.id();
        idw = env.id_bits();
        cw = env.id_bits() + 1;
        n_total = env.n();
        adopt(env, self, 0, -1);
        flush(env);
    }

    bool edge_resolved(EdgeId e) {
        auto it = in.find(e);
        if (it == in.end()) return false;
        const PerEdge& pe = it->second;
        return pe.era == best && (pe.notchild || (pe.nodes >= 0 && pe.medges >= 0));
    }

    void maybe_report(sim::Env& env) {
        if (reported || result >= 0) return;
        int nodes = 1, medges = has_matched_here ? 1 : 0;
        for (auto& l : env.links()) {
            if (l.edge == parent) continue;
            if (!edge_resolved(l.edge)) return;
            const PerEdge& pe = in[l.edge];
            if (!pe.notchild) {
                nodes += pe.nodes;
                medges += pe.medges;
            }
        }
        reported = true;
        if (best == self) {
            // candidate leader: sound only if the claim tree spans every node
            if (nodes == n_total) {
                result = 2 * medges;
                for (auto& l : env.links())
                    push(l.edge, sim::Message(kShResult).add(result, cw));
            }
            // otherwise a larger id is still sweeping; stay quiet
            reported = (nodes == n_total);
            return;
        }
        push(parent, sim::Message(kShNodes).add(best, idw).add(nodes, cw));
        push(parent, sim::Message(kShEdges).add(best, idw).add(medges, cw));
    }

    void on_round(sim::Env& env) override {
        for (auto& [e, msg] : env.inbox()) {
            switch (msg.tag) {
                case kShClaim: {
                    NodeId id = msg.arg(0);
                    int d = msg.arg(1);
                    if (id > best) adopt(env, id, d + 1, e);
                    break;
                }
                case kShNotChild:
                    if (msg.arg(0) == best) {
                        in[e].era = best;
                        in[e].notchild = true;
                    }
                    break;
                case kShNodes:
                    if (msg.arg(0) == best) {
                        in[e].era = best;
                        in[e].nodes = msg.arg(1);
                    }
                    break;
                case kShEdges:
                    if (msg.arg(0) == best) {
                        in[e].era = best;
                        in[e].medges = msg.arg(1);
                    }
                    break;
                case kShResult:
                    if (result < 0) {
                        result = msg.arg(0);
                        for (auto& l : env.links())
                            if (l.edge != e) push(l.edge, sim::Message(kShResult).add(result, cw));
                    }
                    break;
                default:
                    throw std::logic_error("shat: unexpected tag");
            }
        }
        maybe_report(env);
    }

    bool quiescent(sim::Env&) override { return result >= 0; }
};

// ---- primary election inside a part -------------------------------------------

constexpr int kElMin = 1;

struct ElectNode : detail::QueuedProgram {
    bool starter = false;
    NodeId seen = -1;
    int idw = 0;

    void init(sim::Env& env) override {
        idw = env.id_bits();
        if (starter) {
            seen = env.id();
            for (auto& l : env.links()) push(l.edge, sim::Message(kElMin).add(seen, idw));
        }
        flush(env);
    }
    void on_round(sim::Env& env) override {
        for (auto& [e, msg] : env.inbox()) {
            NodeId id = msg.arg(0);
            if (seen < 0 || id < seen) {
                seen = id;
                for (auto& l : env.links())
                    if (l.edge != e) push(l.edge, sim::Message(kElMin).add(seen, idw));
            }
        }
    }
};

NodeId elect_primary(const Graph& part, NodeId a, NodeId b, sim::RoundReport& report,
                     const sim::SimConfig& cfg) {
    std::vector<std::unique_ptr<sim::NodeProgram>> programs(part.node_capacity());
    std::vector<ElectNode*> node(part.node_capacity(), nullptr);
    for (NodeId v : part.nodes()) {
        auto p = std::make_unique<ElectNode>();
        p->starter = (v == a || v == b);
        node[v] = p.get();
        programs[v] = std::move(p);
    }
    sim::run_protocol(part, programs, cfg, report, "elect");
    NodeId winner = std::min(a, b);
    if (node[a]->seen != winner || node[b]->seen != winner)
        throw std::logic_error("elect: endpoints disagree on the primary");
    return winner;
}

}  // namespace

Matching maximal_matching(const Graph& g, uint64_t seed, sim::RoundReport& report,
                          const sim::SimConfig& cfg, int* retries) {
    long long budget = std::max(96, 30 * g.id_bits());
    for (int attempt = 0;; ++attempt) {
        sim::SimConfig sub = cfg;
        sub.seed = seed + 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(attempt);
        sub.max_rounds = budget;
        std::vector<std::unique_ptr<sim::NodeProgram>> programs(g.node_capacity());
        std::vector<MmNode*> node(g.node_capacity(), nullptr);
        for (NodeId v : g.nodes()) {
            auto p = std::make_unique<MmNode>();
            node[v] = p.get();
            programs[v] = std::move(p);
        }
        try {
            sim::run_protocol(g, programs, sub, report, "maximal-matching");
        } catch (const sim::NonTerminationError&) {
            if (attempt >= 4) throw;
            continue;
        }
        if (retries) *retries = attempt;
        Matching m = Matching::empty(g);
        for (NodeId v : g.nodes()) {
            EdgeId e = node[v]->matched_edge;
            if (e >= 0 && g.edge(e).u == v) {
                if (node[g.edge(e).v]->matched_edge != e)
                    throw std::logic_error("maximal matching: handshake mismatch");
                m.add(g, e);
            }
        }
        m.validate(g);
        // maximality: no edge joins two unmatched nodes
        for (const Edge& e : g.edges())
            if (!m.is_matched(e.u) && !m.is_matched(e.v))
                throw std::logic_error("maximal matching: result is not maximal");
        return m;
    }
}

int broadcast_shat(const Graph& g, const Matching& mstar, sim::RoundReport& report,
                   const sim::SimConfig& cfg) {
    std::vector<std::unique_ptr<sim::NodeProgram>> programs(g.node_capacity());
    std::vector<ShatNode*> node(g.node_capacity(), nullptr);
    for (NodeId v : g.nodes()) {
        auto p = std::make_unique<ShatNode>();
        auto partner = mstar.partner(v);
        p->has_matched_here = partner && v < *partner;
        node[v] = p.get();
        programs[v] = std::move(p);
    }
    sim::run_protocol(g, programs, cfg, report, "s-hat");
    int want = 2 * mstar.size();
    for (NodeId v : g.nodes())
        if (node[v]->result != want)
            throw std::logic_error("s-hat: node disagrees with 2|M*|");
    return want;
}

std::vector<Walk> wrapper_a(const Graph& g, const Matching& m, int ell,
                            sim::RoundReport& report, const sim::SimConfig& cfg) {
    Partition pt = part(g, m, ell, report);
    if (pt.empty()) return {};
    sim::RoundReport parallel;
    std::vector<Walk> out;
    for (int i = 0; i < pt.count(); ++i) {
        Graph sub = g.induced(pt.members[i]);
        Matching msub = m.restricted_to(sub);
        sim::RoundReport pr;
        auto [a, b] = pt.endpoints[i];
        NodeId f = elect_primary(sub, a, b, pr, cfg);
        NodeId gn = f == a ? b : a;
        Walk w = cap(sub, msub, f, gn, ell, pr, cfg);
        if (!is_augmenting(g, m, w))
            throw std::logic_error("wrapper_a: part path is not augmenting in G");
        out.push_back(std::move(w));
        parallel.merge_parallel(pr);
    }
    report.merge_sequential(parallel);
    return out;
}

std::vector<Walk> wrapper_b(const Graph& g, const Matching& m, int s_hat,
                            sim::RoundReport& report, const sim::SimConfig& cfg) {
    // 2*s_hat + 1 bounds the length of any augmenting path (2|M|+1 edges at
    // most, and |M| <= s_max <= s_hat), so this partition misses nothing.
    int ell = 2 * s_hat + 1;
    Partition pt = part(g, m, ell, report);
    if (pt.empty()) return {};
    sim::RoundReport parallel;
    std::vector<Walk> out;
    for (int i = 0; i < pt.count(); ++i) {
        Graph sub = g.induced(pt.members[i]);
        Matching msub = m.restricted_to(sub);
        if (sub.node_count() > 2 * m.size() + 2)
            throw std::logic_error("wrapper_b: part exceeds 2|M|+2 nodes");
        sim::RoundReport pr;
        auto [a, b] = pt.endpoints[i];
        NodeId f = elect_primary(sub, a, b, pr, cfg);
        NodeId gn = f == a ? b : a;
        Walk w = linear_augpath(sub, msub, f, gn, pr, cfg);
        if (!is_augmenting(g, m, w))
            throw std::logic_error("wrapper_b: part path is not augmenting in G");
        out.push_back(std::move(w));
        parallel.merge_parallel(pr);
    }
    report.merge_sequential(parallel);
    return out;
}

Variant variant_from_string(const std::string& s) {
    if (s == "hybrid") return Variant::kHybrid;
    if (s == "square-only") return Variant::kSquareOnly;
    if (s == "linear-only") return Variant::kLinearOnly;
    throw std::invalid_argument("unknown variant: " + s);
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::kHybrid: return "hybrid";
        case Variant::kSquareOnly: return "square-only";
        default: return "linear-only";
    }
}

namespace {

// One synchronous schedule slice: run the body, verify it fits, and charge the
// unused remainder so every iteration costs exactly its budget.
template <class Body>
void sliced(sim::RoundReport& report, std::vector<std::pair<long long, long long>>& log,
            const std::string& slack_phase, long long slice, Body&& body) {
    sim::RoundReport sub;
    body(sub);
    if (sub.total_rounds() > slice)
        throw std::logic_error(slack_phase + ": iteration exceeded its slice (" +
                               std::to_string(sub.total_rounds()) + " > " +
                               std::to_string(slice) + ")");
    log.push_back({sub.total_rounds(), slice});
    report.merge_sequential(sub);
    report.charge(slack_phase, slice - sub.total_rounds());
}

}  // namespace

SolveResult solve(const Graph& g, uint64_t seed, Variant variant, const sim::SimConfig& cfg) {
    SolveResult res{Matching::empty(g), {}, {}};
    sim::RoundReport& report = res.report;

    Matching mstar =
        maximal_matching(g, seed, report, cfg, &res.stats.maximal_matching_retries);
    int s_hat = broadcast_shat(g, mstar, report, cfg);
    res.stats.s_hat = s_hat;
    res.stats.maximal_size = mstar.size();

    Matching m = mstar;
    Schedule sched{s_hat};
    bool certified_maximum = false;

    auto apply = [&](const std::vector<Walk>& paths) {
        for (const Walk& w : paths) m = augment_along(g, m, w);
        return !paths.empty();
    };

    if (variant != Variant::kLinearOnly) {
        int empties_in_a_row = 0;
        int i = 0;
        while (true) {
            ++i;
            bool scheduled_phase_a = i <= sched.phase_a_count();
            if (variant == Variant::kHybrid && !scheduled_phase_a) break;
            int ell = std::min(sched.ell(i), 2 * s_hat + 1);
            ++res.stats.phase_a_iterations;
            bool found = false;
            sliced(report, res.stats.phase_a_rounds, "phase-a-slack", 8LL * ell * ell + 16,
                   [&](sim::RoundReport& sub) { found = apply(wrapper_a(g, m, ell, sub, cfg)); });
            empties_in_a_row = found ? 0 : empties_in_a_row + 1;
            if (variant == Variant::kSquareOnly && !found && ell >= 2 * s_hat + 1) {
                certified_maximum = true;  // nothing within the universal bound
                break;
            }
            // the declared early exit: a full s_hat of empty iterations is
            // confirmed by one empty B call
            if (variant == Variant::kHybrid && empties_in_a_row >= s_hat) {
                bool b_found = false;
                sliced(report, res.stats.phase_b_rounds, "phase-b-slack", 64LL * s_hat + 256,
                       [&](sim::RoundReport& sub) {
                           b_found = apply(wrapper_b(g, m, s_hat, sub, cfg));
                       });
                if (!b_found) {
                    certified_maximum = true;
                    break;
                }
                empties_in_a_row = 0;
            }
            if (variant == Variant::kSquareOnly && i > 8 * s_hat + 8)
                throw std::logic_error("square-only: schedule failed to terminate");
        }
    }
    res.stats.matching_after_phase_a = m.size();

    if (variant != Variant::kSquareOnly && !certified_maximum) {
        int limit = variant == Variant::kLinearOnly ? s_hat + 1 : sched.phase_b_count();
        for (int i = 1; i <= limit; ++i) {
            ++res.stats.phase_b_iterations;
            bool found = false;
            sliced(report, res.stats.phase_b_rounds, "phase-b-slack", 64LL * s_hat + 256,
                   [&](sim::RoundReport& sub) { found = apply(wrapper_b(g, m, s_hat, sub, cfg)); });
            if (!found) break;  // B certifies there is no augmenting path left
        }
    }

    m.validate(g);
    res.matching = m;
    return res;
}

}  // namespace cmatch
