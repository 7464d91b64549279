#include "support.hpp"

namespace {

using namespace wdtest;

Graph weighted_p4() { return make_path(std::vector<double>{std::sqrt(2.0), 1.0, std::sqrt(2.0)}); }

/// A multigraph whose parallel edges make the indicator and multiplicity patterns differ.
Graph doubled_triangle() { return Graph(3, {{0, 1, 1.0}, {0, 1, 0.5}, {1, 2, 2.0}, {0, 2, 1.0}, {2, 2, 0.7}}); }

TEST(EpsilonTransform, Limits) {
    const Graph g = k2(2.0);
    const double rho = 2.0;
    EXPECT_NEAR(epsilon_transform(g, 1e9).edges()[0].weight, 2.0 / rho, 1e-9);
    EXPECT_LT(epsilon_transform(g, 1e-2).edges()[0].weight, 1e-20);
    EXPECT_NEAR(epsilon_transform(k2(), 1.0).edges()[0].weight, std::exp(-1.0), 1e-15);
    EXPECT_THROW(epsilon_transform(g, 0.0), DomainError);
}

TEST(EpsilonTransform, ParallelEdgesTransformedSeparately) {
    const Graph g = Graph(2, {{0, 1, 1.0}, {0, 1, 3.0}});
    const double rho = 4.0;
    const Graph t = epsilon_transform(g, 0.5);
    ASSERT_EQ(t.edges().size(), 2u);
    const double expected = (std::exp(-2.0) + 3.0 * std::exp(-2.0 / 3.0)) / rho;
    EXPECT_NEAR(build_adjacency(t)(0, 1), expected, 1e-15);
}

TEST(EpsilonTransform, SpectralRadiusBelowOne) {
    for (const auto& g : corpus()) {
        for (double alpha : {0.05, 1.0, 10.0, 1e3, 1e6}) {
            const Matrix a = build_adjacency(epsilon_transform(g, alpha));
            EXPECT_LT(linalg::largest_eigenvalue(a), 1.0) << alpha;
        }
    }
}

TEST(EWalk, StabilizedMatchesDirectInverse) {
    for (const auto& g : corpus()) {
        const auto schedule = default_theta_schedule(g);
        for (double alpha : {0.5, 2.0, 20.0}) {
            const double scale = schedule.at(alpha) * alpha;
            const Matrix direct = log_kernel_distance(ewalk_proximity(g, alpha).values, scale);
            EXPECT_TRUE(matrices_near(ewalk_distance(g, alpha, schedule).values, direct, 1e-9)) << alpha;
        }
    }
}

TEST(EWalk, SmallAlphaApproachesWeightedShortestPath) {
    const Graph g = weighted_p4();
    const auto d = ewalk_distance(g, 1e-3, default_theta_schedule(g)).values;
    EXPECT_LE(linalg::max_abs(d - weighted_shortest_path_matrix(g).values), 5e-2);
    const Graph unit = make_path(5);
    const auto du = ewalk_distance(unit, 1e-3, default_theta_schedule(unit)).values;
    EXPECT_LE(linalg::max_abs(du - shortest_path_matrix(unit).values), 5e-2);
}

TEST(EWalk, ExtremeSmallAlphaStaysFinite) {
    for (const auto& g : corpus()) {
        const auto d = ewalk_distance(g, 1e-6, default_theta_schedule(g)).values;
        EXPECT_TRUE(d.allFinite());
    }
}

TEST(EWalk, RejectsNonPositiveAlpha) {
    const Graph g = make_path(3);
    EXPECT_THROW(ewalk_distance(g, 0.0, default_theta_schedule(g)), DomainError);
    EXPECT_THROW(ewalk_distance(g, -2.0, default_theta_schedule(g)), DomainError);
}

TEST(EWalk, GeodeticMetricOnCorpus) {
    for (const auto& g : corpus()) {
        for (double alpha : {1.0, 10.0}) {
            const auto d = ewalk_distance(g, alpha, default_theta_schedule(g)).values;
            EXPECT_TRUE(check_metric(d).passed()) << alpha;
            EXPECT_TRUE(check_geodetic(d, g).passed()) << alpha;
        }
    }
}

TEST(EWalk, SmallAlphaKeepsSeparatorEqualities) {
    // Non-separator defects shrink like exp(-c/alpha) and fall below double resolution
    // near alpha = 0.1, so only the separator direction is decidable there.
    for (const auto& g : corpus()) {
        const auto d = ewalk_distance(g, 0.1, default_theta_schedule(g)).values;
        EXPECT_TRUE(check_metric(d).passed());
        const auto r = check_geodetic(d, g);
        for (const auto& tr : r.mismatches) EXPECT_FALSE(tr.separator);
        EXPECT_LE(r.max_separator_defect, 1e-9 * std::max(1.0, linalg::max_abs(d)));
    }
}

TEST(ThetaInfinity, HandValues) {
    EXPECT_NEAR(theta_infinity(build_adjacency(k2())), 1.0, 1e-15);
    // Unweighted k-regular: (2/n) / k, so C4 gives 1/4 rather than 2/n.
    EXPECT_NEAR(theta_infinity(build_adjacency(make_cycle(4))), 0.25, 1e-14);
    EXPECT_NEAR(theta_infinity(build_adjacency(make_complete(5))), 0.1, 1e-14);
}

TEST(ThetaInfinity, UniformWeightScaling) {
    const double w = 2.7;
    for (const Graph& base : {make_path(5), make_cycle(6), make_complete(4)}) {
        const Graph g = base.with_weights([&](const EdgeRecord&) { return w; });
        const Matrix a = build_adjacency(g);
        const double n = static_cast<double>(g.order());
        EXPECT_NEAR(theta_infinity(a), 2.0 / n * w / perron(a).rho, 1e-13);
    }
}

TEST(ThetaInfinity, GraphOverloadUsesMultiplicities) {
    const Graph g = doubled_triangle();
    const Matrix a = build_adjacency(g);
    EXPECT_NEAR(theta_infinity(g), theta_infinity(a, edge_multiplicity_matrix(g)), 1e-15);
    EXPECT_GT(std::abs(theta_infinity(g) - theta_infinity(a)), 1e-3);
    const Graph simple = make_cycle(5, 1.5);
    EXPECT_TRUE(matrices_near(edge_multiplicity_matrix(simple), indicator_matrix(build_adjacency(simple)), 0.0));
}

TEST(LongEWalk, EqualsLongWalkOnCorpus) {
    for (const auto& g : corpus()) {
        const Matrix a = build_adjacency(g);
        const Matrix lw = long_walk_distance(a).values;
        EXPECT_TRUE(matrices_near(long_ewalk_distance(g, theta_infinity(g)).values, lw, 1e-9));
        EXPECT_TRUE(matrices_near(long_ewalk_distance(a, theta_infinity(a)).values, lw, 1e-9));
    }
}

TEST(LongEWalk, PatternsMustMatchTheirTheta) {
    const Graph g = doubled_triangle();
    const Matrix a = build_adjacency(g);
    const Matrix lw = long_walk_distance(a).values;
    EXPECT_GT(relative_deviation(long_ewalk_distance(a, indicator_matrix(a), theta_infinity(g)).values, lw), 1e-3);
}

TEST(LongEWalk, GoldenRatioOnPath4) {
    const Graph g = make_path(4);
    const auto d = long_ewalk_distance(g, theta_infinity(g)).values;
    EXPECT_NEAR(d(0, 1) / d(1, 2), kPhi, 1e-9 * kPhi);
}

TEST(LongEWalk, LinearInTheta) {
    const Matrix a = build_adjacency(corpus()[5]);
    EXPECT_TRUE(matrices_near(long_ewalk_distance(a, 3.0).values, 3.0 * long_ewalk_distance(a, 1.0).values, 1e-14));
}

TEST(ThetaSchedule, Limits) {
    for (const auto& g : corpus()) {
        const auto s = default_theta_schedule(g);
        EXPECT_NEAR(s.at(1e-6), 1.0, 1e-5);
        EXPECT_NEAR(s.at(1e6), s.theta_infinity, 1e-5 * s.theta_infinity);
    }
}

const std::vector<double> kSmall{1e-1, 1e-2, 1e-3, 1e-4};
const std::vector<double> kLarge{1e1, 1e2, 1e3, 1e4};

TEST(EWalkSweeps, WeightedPathConvergesBothWays) {
    const Graph g = weighted_p4();
    const auto s = default_theta_schedule(g);
    const auto down = ewalk_limit_sweep(g, s, SweepDirection::to_zero, kSmall);
    EXPECT_TRUE(is_decreasing(down));
    EXPECT_LE(down.back().deviation, 5e-2);
    const auto up = ewalk_limit_sweep(g, s, SweepDirection::to_infinity, kLarge);
    EXPECT_TRUE(is_decreasing(up));
    EXPECT_LE(up.back().deviation, 1e-2);
}

TEST(EWalkSweeps, UnitPathReachesShortestPath) {
    const Graph g = make_path(4);
    const auto down = ewalk_limit_sweep(g, default_theta_schedule(g), SweepDirection::to_zero, kSmall);
    EXPECT_TRUE(is_decreasing(down));
    EXPECT_LE(down.back().deviation, 5e-2);
}

}  // namespace
