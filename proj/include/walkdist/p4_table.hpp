#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "walkdist/limit_metrics.hpp"
#include "walkdist/walk_metrics.hpp"

namespace walkdist {

/// Three shape ratios of a distance on the unit path 1-2-3-4:
/// d(1,2)/d(2,3), (d(1,2)+d(2,3))/d(1,3), d(1,4)/d(1,3).
using P4Ratios = std::array<double, 3>;

inline P4Ratios p4_ratios(const Matrix& d) {
    return {d(0, 1) / d(1, 2), (d(0, 1) + d(1, 2)) / d(0, 2), d(0, 3) / d(0, 2)};
}

struct P4Row {
    std::string name;
    P4Ratios published;
    std::vector<Matrix> distances;  ///< every metric the row stands for
};

inline constexpr double kP4Tolerance = 0.005;

struct P4Cell {
    double published = 0.0;
    double computed = 0.0;  ///< worst case over the row's metrics
    bool pass = false;
};

/// The seven rows on the unit path P4, each computed live.
inline std::vector<P4Row> p4_rows() {
    const Graph g = make_path(4);
    const double phi = std::numbers::phi;
    return {
        {"shortest path / resistance", {1.0, 1.0, 1.5},
         {shortest_path_matrix(g).values, resistance_distance(g).values}},
        {"walk, alpha=1", {1.08, 1.0, 1.52}, {walk_distance(g, 1.0).values}},
        {"long walk", {phi, 1.0, phi}, {long_walk_distance(g).values}},
        {"log forest, alpha=2", {0.89, 1.0, 1.47}, {log_forest_distance(g, 2.0).values}},
        {"forest, alpha=1", {1.08, 1.32, 1.26}, {forest_distance(g, 1.0).values}},
        {"plain walk, alpha=4.5", {1.08, 1.28, 0.95}, {plain_walk_distance(g, 4.5).values}},
        {"plain walk, alpha=1", {0.96, 1.46, 1.03}, {plain_walk_distance(g, 1.0).values}},
    };
}

inline std::array<P4Cell, 3> p4_cells(const P4Row& row, double tol = kP4Tolerance) {
    std::array<P4Cell, 3> out;
    for (std::size_t c = 0; c < 3; ++c) {
        out[c].published = row.published[c];
        out[c].pass = true;
        double worst = -1.0;
        for (const auto& d : row.distances) {
            const double v = p4_ratios(d)[c];
            const double dev = std::abs(v - row.published[c]);
            if (dev > worst) {
                worst = dev;
                out[c].computed = v;
            }
            if (!(dev <= tol)) out[c].pass = false;
        }
    }
    return out;
}

}  // namespace walkdist
