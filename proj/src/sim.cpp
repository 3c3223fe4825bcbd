#include "cmatch/sim.hpp"

#include <algorithm>

namespace cmatch::sim {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

int SimConfig::resolved_bandwidth(const Graph& g) const {
    int b = bandwidth_bits > 0 ? bandwidth_bits : bandwidth_c * g.id_bits();
    if (b < g.id_bits() + 3)
        throw std::invalid_argument("SimConfig: bandwidth below id width + 3");
    return b;
}

long long SimConfig::resolved_max_rounds(const Graph& g) const {
    if (max_rounds > 0) return max_rounds;
    long long n = g.node_count();
    return 50 * n * n;
}

void RoundReport::merge_parallel(const RoundReport& other) {
    for (auto& [k, v] : other.phases) {
        PhaseRounds& p = phases[k];
        p.simulated = std::max(p.simulated, v.simulated);
        p.charged = std::max(p.charged, v.charged);
    }
    messages += other.messages;
    max_message_bits = std::max(max_message_bits, other.max_message_bits);
    mix(other.trace_hash);
}

void RoundReport::merge_sequential(const RoundReport& other) {
    for (auto& [k, v] : other.phases) {
        PhaseRounds& p = phases[k];
        p.simulated += v.simulated;
        p.charged += v.charged;
    }
    messages += other.messages;
    max_message_bits = std::max(max_message_bits, other.max_message_bits);
    mix(other.trace_hash);
}

class Runner {
  public:
    Runner(const Graph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
           const SimConfig& cfg, std::ostream* trace)
        : g_(g), programs_(programs), cfg_(cfg), trace_(trace) {
        bandwidth_ = cfg.resolved_bandwidth(g);
        max_rounds_ = cfg.resolved_max_rounds(g);
        int cap = g.node_capacity();
        links_.assign(cap, {});
        state_.assign(cap, kAbsent);
        rng_.assign(cap, 0);
        for (NodeId v : g.nodes()) {
            if (!programs_[v]) throw std::invalid_argument("run: node without a program");
            for (EdgeId e : g.incident(v)) links_[v].push_back({e, g.edge(e).other(v)});
            std::sort(links_[v].begin(), links_[v].end(),
                      [](const IncidentLink& a, const IncidentLink& b) { return a.edge < b.edge; });
            state_[v] = kActive;
            uint64_t s = cfg.seed;
            rng_[v] = fnv_mix(fnv_mix(kFnvOffset, s), static_cast<uint64_t>(v)) | 1;
        }
        inflight_.assign(g.edge_capacity(), {});
    }

    RunResult run() {
        RunResult res;
        outgoing_.assign(g_.edge_capacity(), {});
        for (NodeId v : g_.nodes()) {
            Env env = make_env(v, 0, &empty_inbox_);
            programs_[v]->init(env);
            apply_decision(v, env);
        }
        collect_outgoing();
        long long round = 0;
        while (true) {
            // next-round inboxes were filled by the previous iteration
            bool any_inbox = false;
            for (auto& per_edge : inflight_)
                if (!per_edge.empty()) {
                    any_inbox = true;
                    break;
                }
            bool any_active = false;
            for (NodeId v : g_.nodes())
                if (state_[v] == kActive) {
                    any_active = true;
                    break;
                }
            if (!any_inbox && !any_active) break;
            ++round;
            if (round > max_rounds_)
                throw NonTerminationError("simulation exceeded max rounds (" +
                                          std::to_string(max_rounds_) + ")");
            step(round);
        }
        res.rounds = round;
        res.messages = messages_;
        res.max_bits = max_bits_;
        res.trace_hash = hash_;
        return res;
    }

    uint64_t next_rand(NodeId v) { return splitmix64(rng_[v]); }
    void record_send(NodeId sender, EdgeId e, const Message& msg, long long round) {
        if (!g_.has_edge(e)) throw std::logic_error("send: unknown edge");
        const Edge& ed = g_.edge(e);
        if (ed.u != sender && ed.v != sender)
            throw std::logic_error("send: edge not incident to sender");
        if (msg.bits > bandwidth_)
            throw BandwidthError(sender, e, round,
                                 "bandwidth violation: node " + std::to_string(sender) +
                                     " edge " + std::to_string(e) + " round " +
                                     std::to_string(round) + " (" + std::to_string(msg.bits) +
                                     " > " + std::to_string(bandwidth_) + " bits)");
        for (auto& [from, m] : outgoing_[e])
            if (from == sender)
                throw std::logic_error("send: two messages on one edge in one round");
        outgoing_[e].emplace_back(sender, msg);
        ++messages_;
        max_bits_ = std::max(max_bits_, msg.bits);
        hash_ = fnv_mix(hash_, static_cast<uint64_t>(round));
        hash_ = fnv_mix(hash_, static_cast<uint64_t>(sender));
        hash_ = fnv_mix(hash_, static_cast<uint64_t>(e));
        hash_ = fnv_mix(hash_, msg.payload_hash());
        if (trace_)
            (*trace_) << round << " " << sender << " " << e << " " << msg.bits << " "
                      << msg.payload_hash() << "\n";
    }

  private:
    static constexpr int kAbsent = -1;
    static constexpr int kActive = 0;
    static constexpr int kPassive = 1;
    static constexpr int kHalted = 2;

    Env make_env(NodeId v, long long round,
                 const std::vector<std::pair<EdgeId, Message>>* inbox) {
        Env env;
        env.id_ = v;
        env.round_ = round;
        env.n_ = g_.node_count();
        env.id_bits_ = g_.id_bits();
        env.links_ = &links_[v];
        env.inbox_ = inbox;
        env.runner_ = this;
        return env;
    }

    void apply_decision(NodeId v, const Env& env) {
        if (state_[v] == kHalted) return;
        if (env.decision_ == 2)
            state_[v] = kHalted;
        else if (env.decision_ == 1)
            state_[v] = kPassive;
        else
            state_[v] = kActive;
    }

    void step(long long round) {
        // deliver: messages sent in the previous round
        std::vector<std::vector<std::pair<EdgeId, Message>>> inbox(g_.node_capacity());
        for (EdgeId e = 0; e < static_cast<EdgeId>(inflight_.size()); ++e) {
            for (auto& [from, msg] : inflight_[e]) {
                NodeId to = g_.edge(e).other(from);
                inbox[to].emplace_back(e, msg);
            }
            inflight_[e].clear();
        }
        for (auto& ib : inbox)
            std::sort(ib.begin(), ib.end(),
                      [](auto& a, auto& b) { return a.first < b.first; });

        outgoing_.assign(g_.edge_capacity(), {});
        for (NodeId v : g_.nodes()) {
            if (state_[v] == kHalted) continue;
            if (state_[v] == kPassive && inbox[v].empty()) continue;
            Env env = make_env(v, round, &inbox[v]);
            programs_[v]->round(env);
            apply_decision(v, env);
        }
        collect_outgoing();
    }

    // Delivery happens within the sending round; a message whose recipient has
    // already halted is simply ignored and does not extend the run.
    void collect_outgoing() {
        for (EdgeId e = 0; e < static_cast<EdgeId>(outgoing_.size()); ++e) {
            inflight_[e].clear();
            for (auto& [from, msg] : outgoing_[e]) {
                NodeId to = g_.edge(e).other(from);
                if (state_[to] != kHalted) inflight_[e].emplace_back(from, msg);
            }
        }
    }

    const Graph& g_;
    std::vector<std::unique_ptr<NodeProgram>>& programs_;
    const SimConfig& cfg_;
    std::ostream* trace_;
    int bandwidth_ = 0;
    long long max_rounds_ = 0;
    std::vector<std::vector<IncidentLink>> links_;
    std::vector<int> state_;
    std::vector<uint64_t> rng_;
    std::vector<std::vector<std::pair<NodeId, Message>>> inflight_;
    std::vector<std::vector<std::pair<NodeId, Message>>> outgoing_;
    std::vector<std::pair<EdgeId, Message>> empty_inbox_;
    long long messages_ = 0;
    int max_bits_ = 0;
    uint64_t hash_ = kFnvOffset;
};

void Env::send(EdgeId e, const Message& msg) {
    runner_->record_send(id_, e, msg, round_);
}

uint64_t Env::rng() { return runner_->next_rand(id_); }

RunResult run_protocol(const Graph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
                       const SimConfig& cfg, RoundReport& report, const std::string& phase,
                       std::ostream* trace) {
    Runner runner(g, programs, cfg, trace ? trace : cfg.trace);
    RunResult res = runner.run();
    report.add_simulated(phase, res.rounds);
    report.messages += res.messages;
    report.max_message_bits = std::max(report.max_message_bits, res.max_bits);
    uint64_t ph = kFnvOffset;
    for (char c : phase) ph = fnv_mix(ph, static_cast<uint64_t>(static_cast<unsigned char>(c)));
    report.mix(ph);
    report.mix(res.trace_hash);
    return res;
}

}  // namespace cmatch::sim
