#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

#include "walkdist/error.hpp"
#include "walkdist/linalg.hpp"

namespace walkdist {

enum class MetricFamily {
    shortest_path,
    weighted_shortest_path,
    walk,
    plain_walk,
    forest,
    log_forest,
    ewalk,
    long_walk,
    long_ewalk,
    resistance,
};

inline constexpr std::array<MetricFamily, 10> kAllMetricFamilies = {
    MetricFamily::shortest_path, MetricFamily::weighted_shortest_path,
    MetricFamily::walk,          MetricFamily::plain_walk,
    MetricFamily::forest,        MetricFamily::log_forest,
    MetricFamily::ewalk,         MetricFamily::long_walk,
    MetricFamily::long_ewalk,    MetricFamily::resistance,
};

/// Command-line spelling of each family.
inline constexpr std::string_view to_string(MetricFamily f) {
    switch (f) {
        case MetricFamily::shortest_path: return "shortest-path";
        case MetricFamily::weighted_shortest_path: return "weighted-shortest-path";
        case MetricFamily::walk: return "walk";
        case MetricFamily::plain_walk: return "plain-walk";
        case MetricFamily::forest: return "forest";
        case MetricFamily::log_forest: return "log-forest";
        case MetricFamily::ewalk: return "e-walk";
        case MetricFamily::long_walk: return "long-walk";
        case MetricFamily::long_ewalk: return "long-ewalk";
        case MetricFamily::resistance: return "resistance";
    }
    return "?";
}

inline std::optional<MetricFamily> parse_metric_family(std::string_view name) {
    for (auto f : kAllMetricFamilies) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

/// Families evaluated at a parameter alpha.
inline constexpr bool is_parametric(MetricFamily f) {
    switch (f) {
        case MetricFamily::walk:
        case MetricFamily::plain_walk:
        case MetricFamily::forest:
        case MetricFamily::log_forest:
        case MetricFamily::ewalk: return true;
        default: return false;
    }
}

/// Scaling factor of the walk distances:
/// theta = ln(e + alpha^(2/n)) (alpha - 1) / ln(alpha), extended by continuity at alpha = 1.
inline double walk_theta(double alpha, std::size_t n) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const double x = alpha - 1.0;
    const double ratio = x == 0.0 ? 1.0 : x / std::log1p(x);
    return std::log(std::numbers::e + std::pow(alpha, 2.0 / static_cast<double>(n))) * ratio;
}

/// The linked parameters of one walk-distance evaluation: alpha = (1/t - rho)^{-1}.
struct ParamPoint {
    double t = 0.0;
    double alpha = 0.0;
    double theta = 0.0;
    double rho = 0.0;

    static ParamPoint from_alpha(double alpha, double rho, std::size_t n) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive and finite");
        return {1.0 / (rho + 1.0 / alpha), alpha, walk_theta(alpha, n), rho};
    }

    static ParamPoint from_t(double t, double rho, std::size_t n) {
        const double gap = 1.0 / t - rho;
        if (!(t > 0.0) || !(gap > 0.0) || t * rho >= 1.0) throw DomainError("t must lie in (0, 1/rho)");
        const double alpha = 1.0 / gap;
        return {t, alpha, walk_theta(alpha, n), rho};
    }
};

/// Symmetric zero-diagonal matrix of pairwise distances.
struct DistanceMatrix {
    Matrix values;
    MetricFamily family = MetricFamily::shortest_path;
    std::optional<ParamPoint> param;

    Index size() const { return values.rows(); }
    double operator()(Index i, Index j) const { return values(i, j); }
};

/// (D + D^T)/2 with the diagonal set to exactly zero.
inline Matrix finalize_distance(const Matrix& d) {
    Matrix out = linalg::symmetrized(d);
    out.diagonal().setZero();
    return out;
}

}  // namespace walkdist
