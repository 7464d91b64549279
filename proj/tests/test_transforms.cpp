#include "support.hpp"

namespace {

using namespace wdtest;

TEST(BalanceGraph, PathGetsEndLoops) {
    const auto b = balance_graph(make_path(4));
    EXPECT_EQ(b.m, 2.0);
    const Matrix a = build_adjacency(b.result);
    EXPECT_EQ(a(0, 0), 1.0);
    EXPECT_EQ(a(3, 3), 1.0);
    EXPECT_EQ(a(1, 1), 0.0);
    EXPECT_EQ(b.result.edges().size(), 5u);
    EXPECT_LE((a.rowwise().sum().array() - 2.0).abs().maxCoeff(), 1e-15);
}

TEST(BalanceGraph, RegularGraphUnchanged) {
    const Graph c = make_cycle(6, 1.5);
    const auto b = balance_graph(c);
    EXPECT_EQ(b.m, 3.0);
    EXPECT_EQ(b.result.edges().size(), c.edges().size());
}

TEST(BalanceGraph, ExplicitLevel) {
    const auto b = balance_graph(k2(), 3.0);
    const Matrix a = build_adjacency(b.result);
    EXPECT_EQ(a(0, 0), 2.0);
    EXPECT_EQ(a(1, 1), 2.0);
    EXPECT_NEAR(perron(a).rho, 3.0, 1e-14);
    EXPECT_THROW(balance_graph(make_path(4), 1.5), DomainError);
}

TEST(BalanceGraph, LaplacianUnchangedAndRowSumsEqual) {
    for (const auto& g : corpus()) {
        for (double extra : {0.0, 2.5}) {
            const auto b = balance_graph(g, max_weighted_degree(g) + extra);
            EXPECT_TRUE(matrices_near(laplacian(b.result), laplacian(g), 1e-14));
            const Vector rows = build_adjacency(b.result).rowwise().sum();
            EXPECT_LE((rows.array() - b.m).abs().maxCoeff(), 1e-12 * b.m);
        }
    }
}

TEST(GeneralBalance, ShapeAndRowSums) {
    const Matrix l = laplacian(corpus()[2]);
    const double m = l.diagonal().maxCoeff() + 1.0;
    const Matrix a = general_balance(l, m);
    EXPECT_TRUE(linalg::is_symmetric(a));
    EXPECT_GE(a.minCoeff(), 0.0);
    EXPECT_LE((a.rowwise().sum().array() - m / (m + 1.0)).abs().maxCoeff(), 1e-14);
    EXPECT_TRUE(matrices_near((m + 1.0) * a, m * Matrix::Identity(l.rows(), l.cols()) - l, 1e-14));
    EXPECT_THROW(general_balance(l, 0.5 * l.diagonal().maxCoeff()), DomainError);
}

TEST(GeneralBalance, ForestMatrixIdentity) {
    // (I - A(alpha))^{-1} = (m + 1)(I + L_alpha)^{-1}
    for (const auto& g : corpus()) {
        const Matrix l = laplacian(g);
        const double m = l.diagonal().maxCoeff();
        const Matrix lhs = modified_walk_matrix(general_balance(l, m)).values;
        EXPECT_TRUE(matrices_near(lhs, (m + 1.0) * forest_matrix(l, 1.0).values, 1e-12));
    }
}

TEST(SimilarityTransform, ScalesEdgesByPerronEntries) {
    for (const auto& g : corpus()) {
        const auto s = perron(build_adjacency(g));
        const Matrix expected = s.P_prime() * build_adjacency(g) * s.P_prime();
        const Graph h = similarity_transform(g);
        EXPECT_EQ(h.edges().size(), g.edges().size());
        EXPECT_TRUE(matrices_near(build_adjacency(h), expected, 1e-14));
    }
}

TEST(Equivalences, LogForestIsWalkOnBalanceGraph) {
    for (const auto& g : corpus()) {
        const Graph b = balance_graph(g).result;
        for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
            EXPECT_TRUE(matrices_near(log_forest_distance(g, alpha).values, walk_distance(b, alpha).values, 1e-9));
        }
    }
}

TEST(Equivalences, ResistanceIsLongWalkOnBalanceGraph) {
    for (const auto& g : corpus()) {
        EXPECT_TRUE(
            matrices_near(resistance_distance(g).values, long_walk_distance(balance_graph(g).result).values, 1e-9));
    }
}

TEST(Equivalences, LongWalkIsResistanceAfterSimilarity) {
    for (const auto& g : corpus()) {
        EXPECT_TRUE(matrices_near(long_walk_distance(g).values, resistance_distance(similarity_transform(g)).values, 1e-9));
    }
}

TEST(Equivalences, FullSuiteOnExhaustiveSmallGraphs) {
    for (const auto& g : exhaustive_small_graphs(4)) {
        EXPECT_TRUE(report_ok(verify_equivalences(g)));
    }
}

TEST(Equivalences, FullSuiteOnCorpus) {
    for (const auto& g : corpus()) {
        EXPECT_TRUE(report_ok(verify_equivalences(g)));
    }
}

}  // namespace
