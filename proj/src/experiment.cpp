#include "cmatch/experiment.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cmatch/oracle.hpp"

namespace cmatch::exp {

using nlohmann::json;

std::string RunRecord::to_json() const {
    json j{{"instance", instance},
           {"n", n},
           {"m", m},
           {"s_max", s_max},
           {"matching", matching},
           {"rounds_sim", rounds_sim},
           {"rounds_charged", rounds_charged},
           {"messages", messages},
           {"max_bits", max_bits},
           {"trace_hash", trace_hash},
           {"variant", variant},
           {"seed", seed}};
    return j.dump();
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : points) {
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double k = static_cast<double>(points.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ExperimentSpec ExperimentSpec::from_json(std::istream& in) {
    json j = json::parse(in);
    ExperimentSpec spec;
    spec.bandwidth_c = j.value("bandwidth_c", 4);
    spec.max_rounds = j.value("max_rounds", 0LL);
    for (const json& ej : j.at("runs")) {
        Entry e;
        e.kind = ej.at("kind").get<std::string>();
        auto ints = [&](const char* key) {
            std::vector<int> out;
            if (!ej.contains(key)) return out;
            if (ej[key].is_array())
                for (const json& x : ej[key]) out.push_back(x.get<int>());
            else
                out.push_back(ej[key].get<int>());
            return out;
        };
        e.n = ints("n");
        e.k = ints("k");
        if (ej.contains("p")) {
            if (ej["p"].is_array())
                for (const json& x : ej["p"]) e.p.push_back(x.get<double>());
            else
                e.p.push_back(ej["p"].get<double>());
        }
        if (ej.contains("fixture")) {
            if (ej["fixture"].is_array())
                for (const json& x : ej["fixture"]) e.fixture.push_back(x.get<std::string>());
            else
                e.fixture.push_back(ej["fixture"].get<std::string>());
        }
        if (ej.contains("seeds"))
            for (const json& x : ej["seeds"]) e.seeds.push_back(x.get<uint64_t>());
        e.variant = ej.value("variant", "hybrid");
        spec.entries.push_back(std::move(e));
    }
    return spec;
}

RunRecord run_one(const gen::Instance& inst, const std::string& variant, uint64_t seed,
                  const sim::SimConfig& cfg) {
    SolveResult res = solve(inst.graph, seed, variant_from_string(variant), cfg);
    RunRecord rec;
    rec.instance = inst.name;
    rec.n = inst.graph.node_count();
    rec.m = inst.graph.edge_count();
    rec.s_max = inst.analytic_smax >= 0 ? inst.analytic_smax
                                        : oracle::max_matching(inst.graph).size();
    rec.matching = res.matching.size();
    rec.rounds_sim = res.report.rounds_simulated();
    rec.rounds_charged = res.report.rounds_charged();
    rec.messages = res.report.messages;
    rec.max_bits = res.report.max_message_bits;
    rec.trace_hash = res.report.trace_hash;
    rec.variant = variant;
    rec.seed = seed;
    return rec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    ExperimentResult result;
    sim::SimConfig cfg;
    cfg.bandwidth_c = spec.bandwidth_c;
    cfg.max_rounds = spec.max_rounds;
    for (const auto& e : spec.entries) {
        std::vector<gen::Instance> instances;
        gen::Params params;
        if (e.kind == "gnp") {
            for (int n : e.n)
                for (double p : e.p)
                    for (uint64_t s : e.seeds) {
                        instances.push_back(gen::gnp(n, p, s));
                        RunRecord rec = run_one(instances.back(), e.variant, s, cfg);
                        result.records.push_back(rec);
                    }
            continue;
        }
        std::vector<uint64_t> seeds = e.seeds.empty() ? std::vector<uint64_t>{} : e.seeds;
        for (uint64_t s : seeds) {
            if (e.kind == "long-path" || e.kind == "blossom-chain") {
                for (int k : e.k) {
                    params.k = k;
                    gen::Instance inst = gen::generate(e.kind, params, s);
                    result.records.push_back(run_one(inst, e.variant, s, cfg));
                }
            } else if (e.kind == "cycle") {
                for (int n : e.n) {
                    params.n = n;
                    gen::Instance inst = gen::generate(e.kind, params, s);
                    result.records.push_back(run_one(inst, e.variant, s, cfg));
                }
            } else if (e.kind == "fixture") {
                for (const std::string& fx : e.fixture) {
                    params.fixture = fx;
                    gen::Instance inst = gen::generate(e.kind, params, s);
                    result.records.push_back(run_one(inst, e.variant, s, cfg));
                }
            } else {
                throw std::invalid_argument("unknown kind in spec: " + e.kind);
            }
        }
    }
    // fitted exponents of rounds vs s_max per (kind-family, variant)
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, double>>> fam;
    for (const RunRecord& r : result.records) {
        if (r.s_max <= 1) continue;
        std::string kind = r.instance.substr(0, r.instance.find('('));
        fam[{kind, r.variant}].push_back(
            {static_cast<double>(r.s_max),
             static_cast<double>(r.rounds_sim + r.rounds_charged)});
    }
    for (auto& [key, pts] : fam) {
        if (pts.size() < 2) continue;
        result.fits.push_back({key.first, key.second, loglog_slope(pts)});
    }
    return result;
}

void write_report(std::ostream& out, const ExperimentResult& result) {
    for (const RunRecord& r : result.records) out << r.to_json() << "\n";
    for (auto& [kind, variant, slope] : result.fits) {
        json j{{"fit", "rounds_vs_smax"}, {"kind", kind}, {"variant", variant}, {"slope", slope}};
        out << j.dump() << "\n";
    }
}

}  // namespace cmatch::exp
