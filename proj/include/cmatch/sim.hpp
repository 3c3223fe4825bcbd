#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>

#include "cmatch/graph.hpp"

namespace cmatch::sim {

constexpr int kTagBits = 3;
constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

inline uint64_t fnv_mix(uint64_t h, uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
    return h;
}

/// Width in bits of a value drawn from [0, max_value].
inline int value_bits(int max_value) {
    int b = 1;
    while ((1ll << b) <= max_value) ++b;
    return b;
}

/// One CONGEST message: a small tag plus up to three bounded integer fields.
/// The serialized size is the tag width plus the declared field widths.
struct Message {
    uint8_t tag = 0;
    std::array<int, 3> field{-1, -1, -1};
    uint8_t nfields = 0;
    int bits = kTagBits;

    explicit Message(int t = 0) : tag(static_cast<uint8_t>(t)) {}

    Message& add(int value, int width) {
        if (nfields >= 3) throw std::logic_error("Message: too many fields");
        if (value < 0 || width <= 0 || (width < 31 && value >= (1 << width)))
            throw std::logic_error("Message: field does not fit declared width");
        field[nfields++] = value;
        bits += width;
        return *this;
    }
    int arg(int i) const {
        if (i >= nfields) throw std::logic_error("Message: missing field");
        return field[i];
    }
    uint64_t payload_hash() const {
        uint64_t h = fnv_mix(kFnvOffset, tag);
        for (int i = 0; i < nfields; ++i) h = fnv_mix(h, static_cast<uint64_t>(field[i]));
        return h;
    }
};

struct SimConfig {
    int bandwidth_bits = 0;   // 0: bandwidth_c * ceil(log2 n)
    int bandwidth_c = 4;
    long long max_rounds = 0;  // 0: 50 n^2
    uint64_t seed = 1;
    std::ostream* trace = nullptr;  // optional "round node edge bits payload-hash" dump

    int resolved_bandwidth(const Graph& g) const;
    long long resolved_max_rounds(const Graph& g) const;
};

struct PhaseRounds {
    long long simulated = 0;
    long long charged = 0;
};

/// Per-run accounting: simulated vs contract-charged rounds per phase,
/// message totals, and a deterministic digest of the full message trace.
class RoundReport {
  public:
    std::map<std::string, PhaseRounds> phases;
    long long messages = 0;
    int max_message_bits = 0;
    uint64_t trace_hash = kFnvOffset;

    long long rounds_simulated() const {
        long long s = 0;
        for (auto& [k, v] : phases) s += v.simulated;
        return s;
    }
    long long rounds_charged() const {
        long long s = 0;
        for (auto& [k, v] : phases) s += v.charged;
        return s;
    }
    long long total_rounds() const { return rounds_simulated() + rounds_charged(); }

    void add_simulated(const std::string& phase, long long rounds) {
        phases[phase].simulated += rounds;
    }
    void charge(const std::string& phase, long long rounds) {
        if (rounds < 0) throw std::invalid_argument("charge: negative rounds");
        phases[phase].charged += rounds;
    }
    void mix(uint64_t h) { trace_hash = fnv_mix(trace_hash, h); }

    /// Combine a report from a node-disjoint concurrent run: rounds take the
    /// maximum per phase, message counts add.
    void merge_parallel(const RoundReport& other);
    /// Sequential composition: everything adds.
    void merge_sequential(const RoundReport& other);
};

/// Adds `rounds` to the phase without executing message traffic.
inline RoundReport charge(RoundReport report, const std::string& phase, long long rounds) {
    report.charge(phase, rounds);
    return report;
}

struct BandwidthError : std::runtime_error {
    NodeId node;
    EdgeId edge;
    long long round;
    BandwidthError(NodeId n, EdgeId e, long long r, const std::string& what)
        : std::runtime_error(what), node(n), edge(e), round(r) {}
};

struct NonTerminationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncidentLink {
    EdgeId edge;
    NodeId peer;
};

class Runner;

/// Per-round view a node program gets: its id, incident links, this round's
/// inbox, and the outbox. No other topology is reachable through it.
class Env {
  public:
    NodeId id() const { return id_; }
    long long round() const { return round_; }
    int n() const { return n_; }
    int id_bits() const { return id_bits_; }
    const std::vector<IncidentLink>& links() const { return *links_; }

    const std::vector<std::pair<EdgeId, Message>>& inbox() const { return *inbox_; }
    const Message* received(EdgeId e) const {
        for (auto& [ed, msg] : *inbox_)
            if (ed == e) return &msg;
        return nullptr;
    }

    void send(EdgeId e, const Message& msg);
    void halt() { decision_ = 2; }
    void passive() { decision_ = 1; }

    uint64_t rng();

  private:
    friend class Runner;
    NodeId id_ = -1;
    long long round_ = 0;
    int n_ = 0;
    int id_bits_ = 0;
    const std::vector<IncidentLink>* links_ = nullptr;
    const std::vector<std::pair<EdgeId, Message>>* inbox_ = nullptr;
    int decision_ = 0;  // 0 stay active, 1 passive, 2 halt
    Runner* runner_ = nullptr;
};

class NodeProgram {
  public:
    virtual ~NodeProgram() = default;
    virtual void init(Env&) {}
    virtual void round(Env&) = 0;
};

struct RunResult {
    long long rounds = 0;
    long long messages = 0;
    int max_bits = 0;
    uint64_t trace_hash = kFnvOffset;
};

/// Execute node programs under round synchrony until every node has halted
/// or gone passive with no messages in flight. Programs are indexed by node
/// id (entries for absent nodes stay null).
RunResult run_protocol(const Graph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
                       const SimConfig& cfg, RoundReport& report, const std::string& phase,
                       std::ostream* trace = nullptr);

}  // namespace cmatch::sim
