// Experiment harness for the distributed maximum-matching simulator.
//
//   congest-match run       one instance, one record to stdout or --out
//   congest-match batch     run every entry of a JSON spec file
//   congest-match generate  write an instance as an edge list (+ matching)

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cmatch/experiment.hpp"
#include "cmatch/io.hpp"
#include "cmatch/oracle.hpp"

using namespace cmatch;

namespace {

struct RunOptions {
    std::string kind = "gnp";
    int n = 20;
    double p = 0.2;
    int k = 4;
    std::string fixture = "p4";
    std::string graph_file;
    uint64_t seed = 1;
    std::string variant = "hybrid";
    int bandwidth_c = 4;
    long long max_rounds = 0;
    std::string trace_file;
    std::string out;
};

gen::Instance make_instance(const RunOptions& opt) {
    if (!opt.graph_file.empty()) {
        Graph g = io::read_edge_list_file(opt.graph_file);
        return {g, std::nullopt, opt.graph_file, -1};
    }
    gen::Params params;
    params.n = opt.n;
    params.p = opt.p;
    params.k = opt.k;
    params.fixture = opt.fixture;
    return gen::generate(opt.kind, params, opt.seed);
}

int cmd_run(const RunOptions& opt) {
    gen::Instance inst = make_instance(opt);
    sim::SimConfig cfg;
    cfg.bandwidth_c = opt.bandwidth_c;
    cfg.max_rounds = opt.max_rounds;
    std::ofstream trace_file;
    if (!opt.trace_file.empty()) {
        trace_file.open(opt.trace_file);
        cfg.trace = &trace_file;
    }
    exp::RunRecord rec = exp::run_one(inst, opt.variant, opt.seed, cfg);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!opt.out.empty()) {
        file.open(opt.out);
        os = &file;
    }
    (*os) << rec.to_json() << "\n";
    return rec.s_max >= 0 && rec.matching != rec.s_max ? 2 : 0;
}

int cmd_batch(const std::string& spec_path, const std::string& out_path) {
    std::ifstream in(spec_path);
    if (!in) {
        std::cerr << "cannot open spec file " << spec_path << "\n";
        return 1;
    }
    exp::ExperimentSpec spec = exp::ExperimentSpec::from_json(in);
    exp::ExperimentResult result = exp::run_experiment(spec);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        os = &file;
    }
    exp::write_report(*os, result);
    return 0;
}

int cmd_generate(const RunOptions& opt) {
    gen::Instance inst = make_instance(opt);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!opt.out.empty()) {
        file.open(opt.out);
        os = &file;
    }
    io::write_edge_list(*os, inst.graph);
    if (inst.matching) {
        std::ostream* ms = os;
        std::ofstream mfile;
        if (!opt.out.empty()) {
            mfile.open(opt.out + ".matching");
            ms = &mfile;
        } else {
            (*os) << "# matching\n";
        }
        io::write_matching(*ms, inst.graph, *inst.matching);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CONGEST maximum-matching simulator"};
    app.require_subcommand(1);

    RunOptions opt;
    auto add_instance_flags = [&](CLI::App* cmd) {
        cmd->add_option("--kind", opt.kind, "gnp | long-path | cycle | blossom-chain | fixture");
        cmd->add_option("--n", opt.n, "node count (gnp, cycle)");
        cmd->add_option("--p", opt.p, "edge probability (gnp)");
        cmd->add_option("--k", opt.k, "size parameter (long-path, blossom-chain)");
        cmd->add_option("--fixture", opt.fixture, "p2 | p4 | walktrap | blossom6");
        cmd->add_option("--graph-file", opt.graph_file, "edge-list input instead of a generator");
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--out", opt.out, "output path (default stdout)");
    };

    CLI::App* run = app.add_subcommand("run", "solve one instance and print its record");
    add_instance_flags(run);
    run->add_option("--variant", opt.variant, "hybrid | square-only | linear-only");
    run->add_option("--bandwidth-c", opt.bandwidth_c, "per-round budget multiplier");
    run->add_option("--max-rounds", opt.max_rounds, "simulation safety cap");
    run->add_option("--trace", opt.trace_file, "write the message trace to this file");

    std::string spec_path, batch_out;
    CLI::App* batch = app.add_subcommand("batch", "run a JSON experiment spec");
    batch->add_option("spec", spec_path, "spec file")->required();
    batch->add_option("--out", batch_out, "report path (default stdout)");

    CLI::App* generate = app.add_subcommand("generate", "emit an instance as an edge list");
    add_instance_flags(generate);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(opt);
        if (batch->parsed()) return cmd_batch(spec_path, batch_out);
        if (generate->parsed()) return cmd_generate(opt);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
