#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hydra/analytics.hpp"
#include "hydra/errors.hpp"
#include "hydra/rng.hpp"
#include "support/synthetic.hpp"

using namespace hydra;
using hydra::testsupport::GraphBuilder;

namespace {

Snapshot chain_snapshot(std::vector<Flow>* flows) {
    GraphBuilder b;
    const NodeId u = b.user("U");
    const NodeId s1 = b.satellite("S1", 100.0);
    const NodeId s2 = b.satellite("S2", 100.0);
    const NodeId ub = b.user_beam("S1:UB", 100.0, s1);
    const NodeId fb = b.feeder_beam("S2:FB", 100.0, s2);
    const NodeId g = b.gateway("G", 100.0);
    b.link(u, ub, 50.0, 1.0, EdgeKind::Access);
    b.link(ub, s1, 1000.0, 0.0, EdgeKind::Internal);
    b.link(s1, s2, 80.0, 3.0, EdgeKind::Isl);
    b.link(s2, fb, 1000.0, 0.0, EdgeKind::Internal);
    b.link(fb, g, 60.0, 1.0, EdgeKind::Feeder);
    if (flows) flows->push_back({u, g, 10.0});
    return b.finish();
}

}  // namespace

TEST_CASE("failure hypergraph mirrors the run list") {
    std::vector<Flow> flows;
    const Snapshot snap = chain_snapshot(&flows);
    CascadeConfig cfg;

    CHECK(build_failure_hypergraph(snap, {}).hyperedges.empty());

    std::vector<CascadeResult> results;
    std::vector<NodeId> risk;
    for (NodeId id = 0; id < snap.node_count(); ++id)
        if (snap.risk_eligible(id)) risk.push_back(id);
    for (int i = 0; i < 3; ++i) {
        AttackScenario attack;
        attack.targets[risk[i]] = 1.0;
        results.push_back(run_cascade(snap, flows, attack, cfg));
    }
    std::vector<const CascadeResult*> ptrs;
    for (const auto& r : results) ptrs.push_back(&r);
    const FailureHypergraph h = build_failure_hypergraph(snap, ptrs);

    REQUIRE(h.hyperedges.size() == 3);
    CHECK(h.vertices.size() == snap.risk_node_count());
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(h.hyperedges[i].run_id == i);
        CHECK(h.hyperedges[i].final_set.size() == results[i].final_set.size());
        CHECK(h.hyperedges[i].initial_set.size() == 1);
    }
}

TEST_CASE("cfr is the conditional mean failed fraction") {
    FailureHypergraph h;
    h.vertices = {"a", "b", "c"};
    // v in one run, 3 of 10 risk nodes failed -> 0.3.
    h.hyperedges.push_back({0, {"a"}, {"a", "b", "c"}});
    CHECK(cfr(h, "a", 10) == doctest::Approx(0.3).epsilon(1e-12));
    // Never attacked -> undefined.
    CHECK_FALSE(cfr(h, "b", 10).has_value());
    // Mean of 0.2 and 0.4 -> 0.3.
    FailureHypergraph h2;
    h2.hyperedges.push_back({0, {"v"}, {"v", "x"}});
    h2.hyperedges.push_back({1, {"v"}, {"v", "x", "y", "z"}});
    CHECK(cfr(h2, "v", 10) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(trial_count(h2, "v") == 2);
}

TEST_CASE("hbc normalizes cfr by log degree") {
    CHECK(*hbc(0.1, 1) == doctest::Approx(0.1 / std::log(2.0)).epsilon(1e-9));
    CHECK(*hbc(0.1, 1) == doctest::Approx(0.14427).epsilon(1e-3));
    CHECK(*hbc(0.0, 7) == 0.0);
    CHECK_FALSE(hbc(0.5, 0).has_value());
    CHECK_FALSE(hbc(std::nullopt, 3).has_value());
    // Strictly decreasing in degree for fixed cfr.
    double prev = 1e9;
    for (std::uint32_t d = 1; d < 20; ++d) {
        const double v = *hbc(0.4, d);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("hbc ranking is invariant to the log base") {
    Rng rng(17);
    std::vector<double> cfrs;
    std::vector<std::uint32_t> degrees;
    for (int i = 0; i < 40; ++i) {
        cfrs.push_back(uniform01(rng));
        degrees.push_back(1 + static_cast<std::uint32_t>(uniform_index(rng, 12)));
    }
    auto argsort_for_base = [&](double base) {
        std::vector<double> values(cfrs.size());
        for (std::size_t i = 0; i < cfrs.size(); ++i) {
            values[i] = cfrs[i] / (std::log(1.0 + degrees[i]) / std::log(base));
        }
        std::vector<std::size_t> order(values.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
        return order;
    };
    const auto base_e = argsort_for_base(std::exp(1.0));
    CHECK(argsort_for_base(2.0) == base_e);
    CHECK(argsort_for_base(10.0) == base_e);
}

TEST_CASE("centralities on hand graphs") {
    SUBCASE("path graph: the middle node carries all pairs") {
        SimpleGraph g;
        g.n = 3;
        g.edges = {{0, 1}, {1, 2}};
        const Centralities c = centralities(g);
        CHECK(c.betweenness[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.betweenness[0] == 0.0);  // leaves
        CHECK(c.betweenness[2] == 0.0);
        CHECK(c.degree == std::vector<std::uint32_t>{1, 2, 1});
    }
    SUBCASE("ring: symmetry equalizes everything") {
        SimpleGraph g;
        g.n = 6;
        for (std::uint32_t i = 0; i < 6; ++i) g.edges.push_back({i, (i + 1) % 6});
        const Centralities c = centralities(g);
        for (std::size_t i = 1; i < 6; ++i) {
            CHECK(c.degree[i] == c.degree[0]);
            CHECK(c.betweenness[i] == doctest::Approx(c.betweenness[0]).epsilon(1e-9));
            CHECK(c.pagerank[i] == doctest::Approx(c.pagerank[0]).epsilon(1e-9));
        }
    }
    SUBCASE("pagerank sums to one") {
        SimpleGraph g;
        g.n = 7;
        g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}};  // node 6 isolated
        const Centralities c = centralities(g);
        double total = 0.0;
        for (double v : c.pagerank) total += v;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("pearson correlation") {
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK(*pearson(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> neg{-1.0, -2.0, -3.0};
    CHECK(*pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-12));
    const std::vector<double> y{2.0, 4.0, 7.0};
    CHECK(*pearson(x, y) == doctest::Approx(0.9934).epsilon(1e-3));
    CHECK_FALSE(pearson(x, {5.0, 5.0, 5.0}).has_value());
    CHECK_THROWS_AS(pearson(x, {1.0}), DomainError);
    // pearson(x, a x + b) = 1 for a > 0.
    Rng rng(23);
    std::vector<double> xs, ys;
    for (int i = 0; i < 30; ++i) {
        xs.push_back(uniform01(rng) * 10.0);
        ys.push_back(2.5 * xs.back() + 7.0);
    }
    CHECK(*pearson(xs, ys) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("giant component ratio counts the largest block") {
    SimpleGraph connected;
    connected.n = 5;
    connected.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    CHECK(giant_component_ratio(connected) == doctest::Approx(1.0));

    SimpleGraph split;
    split.n = 10;
    for (std::uint32_t i = 0; i + 1 < 7; ++i) split.edges.push_back({i, i + 1});
    split.edges.push_back({7, 8});
    split.edges.push_back({8, 9});
    CHECK(giant_component_ratio(split) == doctest::Approx(0.7));

    SimpleGraph single;
    single.n = 1;
    CHECK(giant_component_ratio(single) == doctest::Approx(1.0));
}

TEST_CASE("systemic risk counts overloaded non-internal links") {
    GraphBuilder b;
    const NodeId u = b.user("U");
    std::vector<NodeId> sats;
    for (int i = 0; i < 5; ++i) sats.push_back(b.satellite("S" + std::to_string(i)));
    const NodeId ub = b.user_beam("S0:UB", 100.0, sats[0]);
    const NodeId g = b.gateway("G");
    std::vector<EdgeId> physical;
    physical.push_back(b.link(u, ub, 10.0, 1.0, EdgeKind::Access));
    for (int i = 0; i + 1 < 5; ++i)
        physical.push_back(b.link(sats[i], sats[i + 1], 10.0, 1.0, EdgeKind::Isl));
    physical.push_back(b.link(sats[0], sats[2], 10.0, 1.0, EdgeKind::Isl));
    physical.push_back(b.link(sats[1], sats[3], 10.0, 1.0, EdgeKind::Isl));
    physical.push_back(b.link(sats[2], sats[4], 10.0, 1.0, EdgeKind::Isl));
    const EdgeId internal = b.link(ub, sats[0], 1.0, 0.0, EdgeKind::Internal);
    const Snapshot snap = b.finish();
    REQUIRE(physical.size() == 8);

    LoadState loads(snap);
    CHECK(systemic_risk(snap, loads) == 0.0);
    loads.edge_load[physical[0]] = 11.0;
    loads.edge_load[physical[3]] = 10.5;
    loads.edge_load[internal] = 99.0;  // internal edges never count
    CHECK(systemic_risk(snap, loads) == doctest::Approx(0.25));
}

TEST_CASE("black swan detection selects low-degree high-hbc nodes") {
    RiskReport report;
    for (int i = 0; i < 10; ++i) {
        RiskRow row;
        row.name = "N" + std::to_string(i);
        row.kind = NodeKind::Satellite;
        row.degree_phy = static_cast<std::uint32_t>(i + 1);  // degrees 1..10
        row.hbc = 0.1 + 0.044 * i;                           // 0.1 .. 0.496
        report.rows.push_back(row);
    }
    report.rows[0].hbc = 0.9;  // the degree-1 outlier

    const auto swans = detect_black_swans(report, 20.0, 90.0);
    REQUIRE(swans.size() == 1);
    CHECK(report.rows[swans[0]].name == "N0");

    // The maximal-degree node can never qualify.
    for (std::size_t idx : swans) CHECK(report.rows[idx].degree_phy != 10);

    // Degenerate: all equal hbc -> nothing strictly above the percentile.
    for (auto& row : report.rows) row.hbc = 0.25;
    CHECK(detect_black_swans(report, 20.0, 90.0).empty());
}

TEST_CASE("cir reports leverage and network fraction") {
    CascadeResult r;
    r.final_set = {1, 2, 3, 4, 5, 6};
    const CirValue v = cir(r, 2, 600);
    CHECK(v.leverage == doctest::Approx(3.0));
    CHECK(v.network_fraction == doctest::Approx(0.01));

    CascadeResult no_cascade;
    no_cascade.final_set = {1, 2};
    CHECK(cir(no_cascade, 2, 100).leverage == doctest::Approx(1.0));
    CHECK_THROWS_AS(cir(r, 0, 100), DomainError);
}

TEST_CASE("percentile uses nearest rank") {
    std::vector<double> v{15.0, 20.0, 35.0, 40.0, 50.0};
    CHECK(percentile_nearest_rank(v, 30.0) == 20.0);  // rank ceil(1.5) = 2
    CHECK(percentile_nearest_rank(v, 100.0) == 50.0);
    CHECK(percentile_nearest_rank(v, 1.0) == 15.0);
    CHECK_THROWS_AS(percentile_nearest_rank({}, 50.0), DomainError);
}

TEST_CASE("pairwise sum matches plain summation") {
    Rng rng(41);
    for (int n : {0, 1, 7, 8, 9, 100, 1000}) {
        std::vector<double> v;
        double plain = 0.0;
        for (int i = 0; i < n; ++i) {
            v.push_back(uniform01(rng) - 0.5);
            plain += v.back();
        }
        CHECK(pairwise_sum(v) == doctest::Approx(plain).epsilon(1e-12));
    }
}
