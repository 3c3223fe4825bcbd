#pragma once

#include <iosfwd>

#include "cmatch/driver.hpp"
#include "cmatch/generators.hpp"

namespace cmatch::exp {

/// One line of the machine-readable report.
struct RunRecord {
    std::string instance;
    int n = 0;
    int m = 0;
    int s_max = -1;
    int matching = 0;
    long long rounds_sim = 0;
    long long rounds_charged = 0;
    long long messages = 0;
    int max_bits = 0;
    uint64_t trace_hash = 0;
    std::string variant;
    uint64_t seed = 0;

    std::string to_json() const;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<std::pair<double, double>>& points);

struct ExperimentSpec {
    struct Entry {
        std::string kind;
        std::vector<int> n;       // gnp, cycle
        std::vector<double> p;    // gnp
        std::vector<int> k;       // long-path, blossom-chain
        std::vector<std::string> fixture;
        std::vector<uint64_t> seeds;
        std::string variant = "hybrid";
    };
    std::vector<Entry> entries;
    int bandwidth_c = 4;
    long long max_rounds = 0;

    static ExperimentSpec from_json(std::istream& in);
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    // fitted exponent of total rounds vs s_max per (kind, variant) family
    std::vector<std::tuple<std::string, std::string, double>> fits;
};

RunRecord run_one(const gen::Instance& inst, const std::string& variant, uint64_t seed,
                  const sim::SimConfig& cfg);

ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_report(std::ostream& out, const ExperimentResult& result);

}  // namespace cmatch::exp
