#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "walkdist/verify.hpp"
#include "walkdist/walkdist.hpp"

namespace wdtest {

using namespace walkdist;

inline constexpr double kPhi = std::numbers::phi;
inline constexpr std::uint64_t kCorpusSeed = 20240611;

/// Random connected weighted multigraphs with loops and parallel edges.
inline const std::vector<Graph>& corpus() {
    static const std::vector<Graph> graphs = random_corpus(kCorpusSeed, 40);
    return graphs;
}

inline Graph k2(double w = 1.0) { return Graph(2, {{0, 1, w}}); }

/// Eigenvalues of the unit path P_n are 2 cos(k pi / (n + 1)).
inline double path_spectral_radius(std::size_t n) {
    return 2.0 * std::cos(std::numbers::pi / static_cast<double>(n + 1));
}

/// Test-side separator oracle: DFS over simple paths i -> k, true iff all of them visit j.
inline bool every_path_visits(const Graph& g, VertexId j, VertexId i, VertexId k) {
    if (j == i || j == k) return true;
    const auto a = build_adjacency(g);
    const auto n = g.order();
    std::vector<bool> on_path(n, false);
    bool avoided = false;
    std::function<void(VertexId)> dfs = [&](VertexId v) {
        if (avoided) return;
        if (v == k) {
            avoided = true;
            return;
        }
        on_path[v] = true;
        for (VertexId u = 0; u < n; ++u) {
            if (u == v || u == j || on_path[u]) continue;
            if (a(static_cast<Index>(v), static_cast<Index>(u)) != 0.0) dfs(u);
        }
        on_path[v] = false;
    };
    dfs(i);
    return !avoided;
}

inline ::testing::AssertionResult matrices_near(const Matrix& x, const Matrix& y, double rel) {
    const double dev = relative_deviation(x, y);
    if (dev <= rel) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "relative deviation " << dev << " exceeds " << rel;
}

/// Succeeds iff the report passed; otherwise lists every failed check.
inline ::testing::AssertionResult report_ok(const Report& r) {
    if (r.passed()) return ::testing::AssertionSuccess();
    auto out = ::testing::AssertionFailure() << r.suite << ":";
    for (const auto& c : r.checks) {
        if (!c.pass && !c.informational) out << "\n  " << c.name << " measured " << c.measured << " limit " << c.tolerance;
    }
    return out;
}

}  // namespace wdtest
