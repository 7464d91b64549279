#include "support.hpp"

namespace {

using namespace wdtest;

TEST(WalkOracle, SingleEdgeSeries) {
    const auto v = enumerate_walk_weight(k2(), 0.5, 0, 1, 20);
    EXPECT_NEAR(v.value, 2.0 / 3.0, 1e-5);
    EXPECT_LE(v.value, 2.0 / 3.0);
    EXPECT_LE(2.0 / 3.0 - v.value, v.bound.tail);
    EXPECT_EQ(v.bound.cap, 20);
}

TEST(WalkOracle, EmptyWalkAndShortCaps) {
    const Graph g = make_path(4);
    EXPECT_EQ(enumerate_walk_weight(g, 0.3, 2, 2, 0).value, 1.0);
    EXPECT_EQ(enumerate_walk_weight(g, 0.3, 0, 3, 2).value, 0.0);
    EXPECT_GT(enumerate_walk_weight(g, 0.3, 0, 3, 3).value, 0.0);
    EXPECT_NEAR(enumerate_walk_weight(g, 0.3, 0, 3, 3).value, 0.027, 1e-15);
}

TEST(WalkOracle, EnumerationMatchesPowers) {
    for (const auto& g : exhaustive_small_graphs(4)) {
        const Matrix a = build_adjacency(g);
        const double t = 0.7 / perron(a).rho;
        for (Index i = 0; i < a.rows(); ++i) {
            for (Index j = 0; j < a.rows(); ++j) {
                const auto e = enumerate_walk_weight(g, t, static_cast<VertexId>(i), static_cast<VertexId>(j), 8);
                EXPECT_NEAR(e.value, walk_weight_by_powers(a, t, i, j, 8).value, 1e-12 * std::max(1.0, e.value));
            }
        }
    }
}

TEST(WalkOracle, LoopsAndParallelEdges) {
    const Graph g(2, {{0, 1, 1.0}, {0, 0, 1.0}, {0, 1, 0.5}});
    const Matrix a = build_adjacency(g);
    EXPECT_EQ(a(0, 0), 1.0);
    EXPECT_EQ(a(0, 1), 1.5);
    const double t = 0.4 / perron(a).rho;
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            const auto e = enumerate_walk_weight(g, t, static_cast<VertexId>(i), static_cast<VertexId>(j), 10);
            EXPECT_NEAR(e.value, walk_weight_by_powers(a, t, i, j, 10).value, 1e-12 * e.value);
            const double closed = walk_weight_matrix(a, t).values(i, j);
            EXPECT_LE(closed - e.value, e.bound.tail + 1e-15);
        }
    }
}

TEST(WalkOracle, TailBoundShrinksGeometrically) {
    const auto b10 = oracle::walk_tail_bound(0.5, 1.0, 10, 3);
    const auto b11 = oracle::walk_tail_bound(0.5, 1.0, 11, 3);
    EXPECT_NEAR(b11.tail / b10.tail, 0.5, 1e-15);
    EXPECT_THROW(oracle::walk_tail_bound(1.0, 1.0, 5, 3), DomainError);
}

TEST(WalkOracle, VisitCap) {
    EXPECT_THROW(enumerate_walk_weight(make_complete(8), 0.1, 0, 1, 12), EnumerationLimit);
}

TEST(HittingOracle, SingleEdge) {
    EXPECT_EQ(enumerate_hitting_weight(k2(), 0.5, 0, 1, 10).value, 0.5);
    EXPECT_EQ(enumerate_hitting_weight(k2(), 0.5, 1, 1, 10).value, 1.0);
    EXPECT_NEAR(hitting_weight_by_powers(build_adjacency(k2()), 0.5, 0, 1, 10).value, 0.5, 1e-15);
}

TEST(HittingOracle, MatchesClosedForm) {
    for (const auto& g : exhaustive_small_graphs(4)) {
        const Matrix a = build_adjacency(g);
        const double t = 0.6 / perron(a).rho;
        const auto h = hitting_weight_matrix(a, t).entries;
        for (Index i = 0; i < a.rows(); ++i) {
            for (Index j = 0; j < a.rows(); ++j) {
                const auto e = enumerate_hitting_weight(g, t, static_cast<VertexId>(i), static_cast<VertexId>(j), 9);
                EXPECT_NEAR(e.value, hitting_weight_by_powers(a, t, i, j, 9).value, 1e-12);
                EXPECT_LE(e.value, h(i, j) + 1e-12);
                EXPECT_LE(h(i, j) - e.value, e.bound.tail + 1e-12);
            }
        }
    }
}

TEST(CommuteOracle, PathPairWithinTail) {
    const Graph g = make_path(4);
    const Matrix a = build_adjacency(g);
    const double closed = commute_cycle_weight(a, 0.3, 0, 2);
    const auto e = enumerate_commute_cycle_weight(g, 0.3, 0, 2, 16);
    EXPECT_LE(e.value, closed + 1e-15);
    EXPECT_LE(closed - e.value, e.bound.tail);
    const auto sw = commute_cycle_sandwich(g, 0.3, 0, 2, 16);
    EXPECT_LE(sw.lower, e.value + 1e-15);
    EXPECT_LE(e.value, sw.upper + 1e-15);
    EXPECT_NEAR(sw.split, e.value, 1e-14);
}

TEST(AvoidingCycles, SingleEdgeGivesUnitLongWalk) {
    const Matrix a = build_adjacency(k2());
    const auto c = avoiding_cycles_by_powers(a, 0, 1, 50, indicator_matrix(a));
    EXPECT_NEAR(c.cycles, 1.0, 1e-15);
    // Both directions contribute equally; n rho = 2.
    EXPECT_NEAR((c.cycles + c.cycles) / 2.0, long_walk_distance(a).values(0, 1), 1e-14);
    const auto e = enumerate_avoiding_cycles(k2(), 0, 1, 10, indicator_matrix(a));
    EXPECT_NEAR(e.cycles, 1.0, 1e-15);
}

TEST(AvoidingCycles, ThreePathRecoversLongWalk) {
    const Graph g = make_path(3);
    const Matrix a = build_adjacency(g);
    const double rho = std::sqrt(2.0);
    const Matrix lw = long_walk_distance(a).values;
    const Matrix pattern = indicator_matrix(a);
    const double th = theta_infinity(a);
    const Matrix lew = long_ewalk_distance(a, th).values;
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 3; ++j) {
            if (i == j) continue;
            const auto ij = avoiding_cycles_by_powers(a, i, j, 400, pattern);
            const auto ji = avoiding_cycles_by_powers(a, j, i, 400, pattern);
            EXPECT_NEAR((ij.cycles + ji.cycles) / (3.0 * rho), lw(i, j), 1e-10);
            EXPECT_NEAR((ij.jump_cycles + ji.jump_cycles) * th / (2.0 * rho), lew(i, j), 1e-10);
            const auto e = enumerate_avoiding_cycles(g, static_cast<VertexId>(i), static_cast<VertexId>(j), 12, pattern);
            const auto p = avoiding_cycles_by_powers(a, i, j, 12, pattern);
            EXPECT_NEAR(e.cycles, p.cycles, 1e-13);
            EXPECT_NEAR(e.jump_cycles, p.jump_cycles, 1e-13);
        }
    }
}

TEST(OracleSuite, ExhaustiveSmallGraphs) {
    for (const auto& g : exhaustive_small_graphs(4)) EXPECT_TRUE(report_ok(verify_oracles(g)));
}

TEST(OracleSuite, RandomMultigraphs) {
    const auto& graphs = corpus();
    for (std::size_t k = 0; k < 20; ++k) EXPECT_TRUE(report_ok(verify_oracles(graphs[k])));
}

TEST(PropertyChecks, MetricReportFlagsTriangleViolation) {
    Matrix d(3, 3);
    d << 0, 1, 3, 1, 0, 1, 3, 1, 0;
    const auto r = check_metric(d);
    EXPECT_TRUE(r.symmetric());
    EXPECT_TRUE(r.positive());
    EXPECT_FALSE(r.triangle());
    EXPECT_NEAR(r.max_triangle_excess, 1.0, 1e-15);
    d(0, 1) = 0.0;
    EXPECT_FALSE(check_metric(d).positive());
}

TEST(PropertyChecks, GeodeticReportFlagsPlainWalk) {
    const Graph g = make_path(4);
    EXPECT_FALSE(check_geodetic(plain_walk_distance(g, 1.0).values, g).passed());
    EXPECT_TRUE(check_geodetic(walk_distance(g, 1.0).values, g).passed());
    // K4 has no separators and every defect is 1; on C4 hop counts add up through non-separating vertices.
    EXPECT_TRUE(check_geodetic(shortest_path_matrix(make_complete(4)).values, make_complete(4)).passed());
    EXPECT_FALSE(check_geodetic(shortest_path_matrix(make_cycle(4)).values, make_cycle(4)).passed());
}

TEST(PropertyChecks, TransitionReportFlagsViolation) {
    Matrix s(2, 2);
    s << 1, 2, 2, 1;
    EXPECT_FALSE(check_transition(s).passed());
    s << 2, 1, 1, 2;
    EXPECT_TRUE(check_transition(s).passed());
}

TEST(PropertyChecks, PsdReportFlagsNonEuclidean) {
    Matrix d(3, 3);
    d << 0, 1, 9, 1, 0, 1, 9, 1, 0;
    EXPECT_FALSE(check_psd_centered(d).passed());
    d << 0, 1, 4, 1, 0, 1, 4, 1, 0;
    EXPECT_TRUE(check_psd_centered(d).passed());
}

}  // namespace
