#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmatch/driver.hpp"
#include "cmatch/fixtures.hpp"
#include "cmatch/generators.hpp"
#include "cmatch/oracle.hpp"
#include "test_util.hpp"

using namespace cmatch;

namespace {

sim::SimConfig fixture_cfg() {
    sim::SimConfig cfg;
    cfg.bandwidth_c = 8;
    return cfg;
}

}  // namespace

TEST_CASE("schedule thresholds are nondecreasing") {
    Schedule s{40};
    int prev = 0;
    for (int i = 1; i <= s.phase_a_count(); ++i) {
        CHECK(s.ell(i) >= prev);
        prev = s.ell(i);
    }
    CHECK(s.phase_a_count() + s.phase_b_count() >= s.s_hat);
}

TEST_CASE("maximal matching on P2 takes the only edge") {
    auto [g, m] = fixtures::p2();
    sim::RoundReport rep;
    Matching mm = maximal_matching(g, 7, rep, fixture_cfg());
    CHECK(mm.size() == 1);
}

TEST_CASE("maximal matching on a star picks one edge") {
    Graph g = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    sim::RoundReport rep;
    Matching mm = maximal_matching(g, 3, rep, fixture_cfg());
    CHECK(mm.size() == 1);
}

TEST_CASE("maximal matching is maximal and fast on a large random graph") {
    gen::Instance inst = gen::gnp(500, 0.012, 99);
    const Graph& g = inst.graph;
    double bound = 20.0 * std::log2(500.0);
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        sim::RoundReport rep;
        Matching mm = maximal_matching(g, seed, rep, {});
        for (const Edge& e : g.edges())
            REQUIRE((mm.is_matched(e.u) || mm.is_matched(e.v)));
        REQUIRE(static_cast<double>(rep.phases["maximal-matching"].simulated) <= bound);
    }
}

TEST_CASE("s-hat broadcast agrees with 2|M*|") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = testutil::random_connected_graph(testutil::uniform(rng, 4, 30), 0.2, rng);
        sim::RoundReport rep;
        Matching mm = maximal_matching(g, trial + 1, rep, fixture_cfg());
        int shat = broadcast_shat(g, mm, rep, fixture_cfg());
        CHECK(shat == 2 * mm.size());
        CHECK(rep.phases["s-hat"].simulated > 0);
    }
}

TEST_CASE("wrapper_a on P4 finds the path at threshold 3 and nothing at 1") {
    auto [g, m] = fixtures::p4();
    sim::RoundReport rep;
    auto paths = wrapper_a(g, m, 3, rep, fixture_cfg());
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].nodes == std::vector<NodeId>{0, 1, 2, 3});
    sim::RoundReport rep1;
    CHECK(wrapper_a(g, m, 1, rep1, fixture_cfg()).empty());
}

TEST_CASE("wrapper_a finds disjoint paths across parts in one call") {
    gen::Instance inst = gen::blossom_chain(3);
    sim::RoundReport rep;
    auto paths = wrapper_a(inst.graph, *inst.matching, 5, rep, fixture_cfg());
    REQUIRE(paths.size() == 3);
    std::vector<char> seen(inst.graph.node_capacity(), 0);
    for (const Walk& w : paths) {
        CHECK(w.length() == 5);
        CHECK(is_augmenting(inst.graph, *inst.matching, w));
        for (NodeId v : w.nodes) {
            CHECK(!seen[v]);
            seen[v] = 1;
        }
    }
}

TEST_CASE("wrapper_b returns a validated nonempty set whenever a path exists") {
    auto [g, m] = fixtures::p4();
    sim::RoundReport rep;
    auto paths = wrapper_b(g, m, 2, rep, fixture_cfg());
    REQUIRE(paths.size() == 1);
    CHECK(is_augmenting(g, m, paths[0]));

    // maximum matching: empty result
    Matching full = oracle::max_matching(g);
    sim::RoundReport rep2;
    CHECK(wrapper_b(g, full, 2, rep2, fixture_cfg()).empty());
}

TEST_CASE("wrapper_b handles the long single path") {
    for (int k : {2, 4, 8}) {
        gen::Instance inst = gen::long_path(k);
        sim::RoundReport rep;
        auto paths = wrapper_b(inst.graph, *inst.matching, 2 * k, rep, fixture_cfg());
        REQUIRE(paths.size() == 1);
        CHECK(paths[0].length() == 2 * k + 1);
    }
}

TEST_CASE("solve on fixtures reaches the maximum") {
    for (const char* name : {"p2", "p4", "walktrap", "blossom6"}) {
        gen::Params params;
        params.fixture = name;
        gen::Instance inst = gen::generate("fixture", params, 1);
        SolveResult res = solve(inst.graph, 5, Variant::kHybrid, fixture_cfg());
        CHECK(res.matching.size() == oracle::max_matching(inst.graph).size());
    }
}

TEST_CASE("solve on C6 finds the perfect matching") {
    gen::Instance inst = gen::cycle(6);
    SolveResult res = solve(inst.graph, 11, Variant::kHybrid, fixture_cfg());
    CHECK(res.matching.size() == 3);
}

TEST_CASE("solve equals the blossom oracle on random graphs, all variants") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 30; ++trial) {
        int n = testutil::uniform(rng, 6, 24);
        Graph g = testutil::random_connected_graph(n, 0.25, rng);
        int want = oracle::max_matching(g).size();
        for (Variant v : {Variant::kHybrid, Variant::kSquareOnly, Variant::kLinearOnly}) {
            SolveResult res = solve(g, 1000 + trial, v, fixture_cfg());
            INFO("variant ", to_string(v), " n=", n);
            CHECK(res.matching.size() == want);
        }
    }
}

TEST_CASE("solve is deterministic for a fixed seed") {
    gen::Instance inst = gen::gnp(24, 0.2, 5);
    SolveResult a = solve(inst.graph, 42, Variant::kHybrid, fixture_cfg());
    SolveResult b = solve(inst.graph, 42, Variant::kHybrid, fixture_cfg());
    CHECK(a.report.trace_hash == b.report.trace_hash);
    CHECK(a.matching.edges() == b.matching.edges());
    SolveResult c = solve(inst.graph, 43, Variant::kHybrid, fixture_cfg());
    CHECK(a.matching.size() == c.matching.size());
}

TEST_CASE("long-path solve: phase B does the long augmentation") {
    gen::Instance inst = gen::long_path(8);
    SolveResult res = solve(inst.graph, 3, Variant::kHybrid, fixture_cfg());
    CHECK(res.matching.size() == inst.analytic_smax);
    CHECK(res.stats.phase_b_iterations >= 0);
}

TEST_CASE("blossom-chain solve reaches the analytic maximum") {
    gen::Instance inst = gen::blossom_chain(4);
    SolveResult res = solve(inst.graph, 9, Variant::kHybrid, fixture_cfg());
    CHECK(res.matching.size() == inst.analytic_smax);
}
