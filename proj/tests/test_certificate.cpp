#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmatch/certificate.hpp"
#include "cmatch/fixtures.hpp"
#include "cmatch/oracle.hpp"
#include "test_util.hpp"

using namespace cmatch;

namespace {

sim::SimConfig fixture_cfg() {
    sim::SimConfig cfg;
    cfg.bandwidth_c = 8;
    return cfg;
}

struct Built {
    Graph g;
    Matching m;
    NodeId f;
    AltDist dist;
    AltBaseTree t;
    LcaTable lca;
    LevelSets ls;
};

std::optional<Built> build_reachable(int n, double p, std::mt19937_64& rng) {
    Graph g0 = testutil::random_connected_graph(n, p, rng);
    Matching m0 = testutil::random_matching(g0, rng);
    auto um = m0.unmatched_nodes(g0);
    if (um.empty()) return std::nullopt;
    NodeId f = um[testutil::uniform(rng, 0, static_cast<int>(um.size()) - 1)];
    AltLevels lv0 = compute_alt_levels(g0, m0, f);
    std::vector<NodeId> keep;
    for (NodeId v : g0.nodes())
        if (v == f || lv0.at(v, 0) < kInfDist || lv0.at(v, 1) < kInfDist) keep.push_back(v);
    if (keep.size() < 2) return std::nullopt;
    Graph g = g0.induced(keep);
    Matching m = m0.restricted_to(g);
    AltLevels lv = compute_alt_levels(g, m, f);
    for (NodeId v : g.nodes())
        if (v != f && lv.at(v, 0) >= kInfDist && lv.at(v, 1) >= kInfDist) return std::nullopt;
    AltDist dist = to_alt_dist(g, lv, f);
    AltBaseTree t = build_abt(g, m, f, dist);
    sim::RoundReport rep;
    LcaTable lca = lca_preprocess(t, g, rep, fixture_cfg());
    LevelSets ls = compute_levels(g, m, dist);
    return Built{g, m, f, dist, std::move(t), std::move(lca), std::move(ls)};
}

// Centralized recomputation of the ConstF output for node v and level k.
std::optional<EdgeId> constf_reference(const Built& b, NodeId v, int k) {
    auto sub = b.t.subtree(v);
    std::vector<char> inside(b.g.node_capacity(), 0);
    for (NodeId x : sub) inside[x] = 1;
    bool have = false;
    std::tuple<int, NodeId, NodeId> best;
    EdgeId best_edge = -1;
    for (const Edge& e : b.g.edges()) {
        if (b.t.is_tree_edge(e.id) || b.ls.level[e.id] != k) continue;
        if (!inside[e.u] && !inside[e.v]) continue;
        std::tuple<int, NodeId, NodeId> c{b.lca.lca_depth[e.id], std::min(e.u, e.v),
                                          std::max(e.u, e.v)};
        if (!have || c < best) {
            best = c;
            best_edge = e.id;
            have = true;
        }
    }
    if (!have || std::get<0>(best) >= b.t.depth[v]) return std::nullopt;
    return best_edge;
}

}  // namespace

TEST_CASE("compute_levels on P4 leaves every edge levelless") {
    auto [g, m] = fixtures::p4();
    AltDist d = oracle::alt_dist_exact(g, m, 0);
    LevelSets ls = compute_levels(g, m, d);
    for (const Edge& e : g.edges()) CHECK(ls.level[e.id] == kNoLevel);
    CHECK(ls.max_level == 0);
}

TEST_CASE("compute_levels on WALKTRAP leaves every edge levelless") {
    auto [g, m] = fixtures::walktrap();
    AltDist d = oracle::alt_dist_exact(g, m, 0);
    LevelSets ls = compute_levels(g, m, d);
    for (const Edge& e : g.edges()) CHECK(ls.level[e.id] == kNoLevel);
}

TEST_CASE("compute_levels on BLOSSOM6") {
    auto [g, m] = fixtures::blossom6();
    AltDist d = oracle::alt_dist_exact(g, m, 0);
    LevelSets ls = compute_levels(g, m, d);
    CHECK(ls.level[*g.edge_between(3, 4)] == 3);  // matched cd: max odd = 3
    CHECK(ls.level[*g.edge_between(2, 3)] == 4);  // bc: max even = 4
    CHECK(ls.level[*g.edge_between(2, 4)] == 4);  // bd
    CHECK(ls.level[*g.edge_between(0, 1)] == kNoLevel);
    CHECK(ls.level[*g.edge_between(1, 2)] == kNoLevel);
    CHECK(ls.level[*g.edge_between(3, 5)] == kNoLevel);
    CHECK(ls.max_level == 4);
}

TEST_CASE("compute_levels on a cycle with both parities finite") {
    // C6 with matching of size 2 leaves the even distances finite around f
    Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    Matching m = Matching::from_edges(g, {*g.edge_between(1, 2), *g.edge_between(3, 4)});
    AltDist d = oracle::alt_dist_exact(g, m, 0);
    LevelSets ls = compute_levels(g, m, d);
    // every edge's level, where defined, equals the larger relevant distance
    for (const Edge& e : g.edges()) {
        int parity = m.contains(e.id) ? 1 : 0;
        int want = std::max(d.at(e.u, parity), d.at(e.v, parity));
        CHECK(ls.level[e.id] == (want >= kInfDist ? kNoLevel : want));
    }
}

TEST_CASE("constf on BLOSSOM6 at the (c,d) level") {
    auto [g, m] = fixtures::blossom6();
    AltDist d = oracle::alt_dist_exact(g, m, 0);
    AltBaseTree t = build_abt(g, m, 0, d);
    sim::RoundReport rep;
    LcaTable lca = lca_preprocess(t, g, rep, fixture_cfg());
    LevelSets ls = compute_levels(g, m, d);
    auto out = constf(g, t, lca, ls, 3, rep, fixture_cfg());
    EdgeId cd = *g.edge_between(3, 4);
    CHECK(out[3] == cd);
    CHECK(out[4] == cd);
    CHECK(!out[2].has_value());  // lca(cd) = depth(b): internal, ep(b) stays a bridge
    CHECK(!out[0].has_value());
    CHECK(!out[1].has_value());
    CHECK(!out[5].has_value());
}

TEST_CASE("constf agrees with centralized recomputation on random instances") {
    std::mt19937_64 rng(2718);
    int built = 0;
    for (int trial = 0; trial < 80 && built < 40; ++trial) {
        auto b = build_reachable(testutil::uniform(rng, 5, 13), 0.4, rng);
        if (!b) continue;
        ++built;
        for (int k = 1; k <= b->ls.max_level; ++k) {
            sim::RoundReport rep;
            auto out = constf(b->g, b->t, b->lca, b->ls, k, rep, fixture_cfg());
            for (NodeId v : b->g.nodes()) {
                auto want = constf_reference(*b, v, k);
                INFO("node ", v, " level ", k);
                CHECK(out[v] == want);
            }
        }
    }
    CHECK(built >= 20);
}

TEST_CASE("certificate of a tree is the tree") {
    auto [g, m] = fixtures::p4();
    AltDist d = oracle::alt_dist_exact(g, m, 0);
    AltBaseTree t = build_abt(g, m, 0, d);
    sim::RoundReport rep;
    LcaTable lca = lca_preprocess(t, g, rep, fixture_cfg());
    LevelSets ls = compute_levels(g, m, d);
    SparseCertificate cert = build_certificate(g, m, t, lca, ls, rep, fixture_cfg());
    CHECK(cert.fc.empty());
    CHECK(cert.all_edges() == t.tree_edges());
}

TEST_CASE("certificate on BLOSSOM6 keeps the blossom edge and preserves reachability") {
    auto [g, m] = fixtures::blossom6();
    AltDist d = oracle::alt_dist_exact(g, m, 0);
    AltBaseTree t = build_abt(g, m, 0, d);
    sim::RoundReport rep;
    LcaTable lca = lca_preprocess(t, g, rep, fixture_cfg());
    LevelSets ls = compute_levels(g, m, d);
    SparseCertificate cert = build_certificate(g, m, t, lca, ls, rep, fixture_cfg());
    REQUIRE(cert.fc.size() == 1);
    CHECK(cert.fc[0] == std::pair<EdgeId, int>{*g.edge_between(3, 4), 3});
    CHECK(static_cast<int>(cert.fc.size()) <= g.node_count() - 1);
    Graph h = cert.to_graph(g);
    CHECK(oracle::preserves_reachability(h, g, m, 0));
    std::string dump = dump_certificate(g, cert);
    CHECK(dump.find("3 3 4") != std::string::npos);
}

TEST_CASE("bridge sets shrink monotonically and transitions match contributor levels") {
    std::mt19937_64 rng(1234321);
    int built = 0;
    for (int trial = 0; trial < 60 && built < 25; ++trial) {
        auto b = build_reachable(testutil::uniform(rng, 6, 14), 0.4, rng);
        if (!b) continue;
        ++built;
        sim::RoundReport rep;
        SparseCertificate cert =
            build_certificate(b->g, b->m, b->t, b->lca, b->ls, rep, fixture_cfg());
        // bridge sets of G_k
        std::vector<std::vector<EdgeId>> bk;
        for (int k = 0; k <= b->ls.max_level; ++k)
            bk.push_back(bridges_of(level_subgraph(b->g, b->t, b->ls, k)));
        for (size_t k = 0; k + 1 < bk.size(); ++k)
            for (EdgeId e : bk[k + 1])
                CHECK(std::find(bk[k].begin(), bk[k].end(), e) != bk[k].end());
        // each contributor's edge leaves its subtree and covers ep(v) at the
        // first level where ep(v) stops being a bridge
        for (auto& [v, e] : cert.contributors) {
            auto sub = b->t.subtree(v);
            std::vector<char> inside(b->g.node_capacity(), 0);
            for (NodeId x : sub) inside[x] = 1;
            const Edge& ed = b->g.edge(e);
            CHECK(inside[ed.u] != inside[ed.v]);
            EdgeId ep = b->t.parent_edge[v];
            int klevel = b->ls.level[e];
            // ep(v) bridge in G_{k-1}, not in G_k
            auto& before = bk[klevel - 1];
            auto& after = bk[klevel];
            CHECK(std::find(before.begin(), before.end(), ep) != before.end());
            CHECK(std::find(after.begin(), after.end(), ep) == after.end());
        }
    }
    CHECK(built >= 10);
}

TEST_CASE("level subgraphs preserve short distances (both parities)") {
    std::mt19937_64 rng(777777);
    int built = 0;
    for (int trial = 0; trial < 60 && built < 25; ++trial) {
        auto b = build_reachable(testutil::uniform(rng, 5, 12), 0.45, rng);
        if (!b) continue;
        ++built;
        for (int k = 0; k <= b->ls.max_level; ++k) {
            Graph gk = level_subgraph(b->g, b->t, b->ls, k);
            AltDist dk = oracle::alt_dist_exact(gk, b->m.restricted_to(gk), b->f);
            for (NodeId v : b->g.nodes()) {
                if (v == b->f) continue;
                for (int th = 0; th < 2; ++th) {
                    if (b->dist.at(v, th) <= k + 1) {
                        INFO("k=", k, " v=", v, " theta=", th);
                        CHECK(dk.at(v, th) == b->dist.at(v, th));
                    }
                }
            }
        }
    }
    CHECK(built >= 10);
}

TEST_CASE("random sweep: certificates are sparse and preserve reachability") {
    std::mt19937_64 rng(60601);
    int built = 0;
    while (built < 200) {
        auto b = build_reachable(testutil::uniform(rng, 4, 14), 0.35, rng);
        if (!b) continue;
        ++built;
        sim::RoundReport rep;
        SparseCertificate cert =
            build_certificate(b->g, b->m, b->t, b->lca, b->ls, rep, fixture_cfg());
        CHECK(static_cast<int>(cert.fc.size()) <= b->g.node_count() - 1);
        Graph h = cert.to_graph(b->g);
        CHECK(oracle::preserves_reachability(h, b->g, b->m, b->f));
    }
}
