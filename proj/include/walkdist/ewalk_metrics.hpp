#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "walkdist/distance.hpp"
#include "walkdist/graph.hpp"
#include "walkdist/limit_metrics.hpp"
#include "walkdist/spectral.hpp"
#include "walkdist/walk_metrics.hpp"

namespace walkdist {

/// theta_alpha = (theta_inf alpha + beta) / (alpha + beta): 1 as alpha -> 0, theta_inf as alpha -> inf.
struct ThetaSchedule {
    double theta_infinity = 1.0;
    double beta = 1.0;

    double at(double alpha) const { return (theta_infinity * alpha + beta) / (alpha + beta); }
};

/// 0/1 matrix marking the nonzero entries of A.
inline Matrix indicator_matrix(const Matrix& a) { return (a.array() != 0.0).cast<double>().matrix(); }

/// Number of edge records joining each pair (loops counted once on the diagonal).
/// This is the derivative pattern of the exponential edge transform at alpha = inf;
/// on simple graphs it equals indicator_matrix(build_adjacency(g)).
inline Matrix edge_multiplicity_matrix(const Graph& g) {
    const auto n = static_cast<Index>(g.order());
    Matrix m = Matrix::Zero(n, n);
    for (const auto& e : g.edges()) {
        const auto i = static_cast<Index>(e.a);
        const auto j = static_cast<Index>(e.b);
        m(i, j) += 1.0;
        if (i != j) m(j, i) += 1.0;
    }
    return m;
}

/// Each edge weight w -> (w / rho) exp(-1 / (alpha w)), rho taken from the original graph.
inline Graph epsilon_transform(const Graph& g, double alpha, double rho) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    return g.with_weights([&](const EdgeRecord& e) { return e.weight / rho * std::exp(-1.0 / (alpha * e.weight)); });
}

inline Graph epsilon_transform(const Graph& g, double alpha) {
    return epsilon_transform(g, alpha, perron(build_adjacency(g)).rho);
}

/// Walk weights (I - A)^{-1} of a graph whose adjacency has spectral radius below one.
inline ProximityMatrix modified_walk_matrix(const Matrix& a_alpha) {
    const double top = linalg::largest_eigenvalue(a_alpha);
    if (!(top < 1.0)) throw DomainError("modified walk series diverges: rho(A(alpha)) >= 1");
    const Index n = a_alpha.rows();
    return {linalg::symmetrized(linalg::SpdSolver(Matrix::Identity(n, n) - a_alpha).inverse()),
            ProximityKind::ewalk};
}

/// Modified walk distance: D from scale * ln((I - A(alpha))^{-1}).
inline DistanceMatrix modified_walk_distance(const Matrix& a_alpha, double scale) {
    return {log_kernel_distance(modified_walk_matrix(a_alpha).values, scale), MetricFamily::ewalk, std::nullopt};
}

/// R~_alpha = (I - A(alpha))^{-1} formed directly. Entries underflow once
/// exp(-1/(alpha w)) does, so this is only usable for moderate alpha.
inline ProximityMatrix ewalk_proximity(const Graph& g, double alpha) {
    g.require_connected();
    return modified_walk_matrix(build_adjacency(epsilon_transform(g, alpha)));
}

/// epsilon-walk distance -theta_alpha alpha ln(r~_ij / sqrt(r~_ii r~_jj)).
///
/// Row i of R~ is computed from the similar matrix S^{-1}(I - A(alpha))S with
/// S = diag(exp(d_ws(i, k) / alpha)). Every entry of the rescaled adjacency
/// carries the factor exp((d_ws(i,l) - d_ws(i,k) - 1/w) / alpha) <= 1 and
/// entry (i,j) of the rescaled inverse is r~_ij exp(d_ws(i,j)/alpha) = O(1),
/// so nothing under- or overflows however small alpha is.
inline DistanceMatrix ewalk_distance(const Graph& g, double alpha, const ThetaSchedule& schedule) {
    g.require_connected();
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive and finite");
    const Matrix a = build_adjacency(g);
    const double rho = perron(a).rho;
    const Index n = a.rows();
    // A(alpha) <= exp(-1/(alpha w_max)) A / rho entrywise, so rho(A(alpha)) < 1 for every finite alpha.
    const Matrix dws = weighted_shortest_path_matrix(g).values;

    // log_r(i, j) = ln r~_ij + d_ws(i,j) / alpha
    Matrix log_r(n, n);
    for (Index i = 0; i < n; ++i) {
        Matrix m = Matrix::Identity(n, n);
        for (const auto& e : g.edges()) {
            const auto k = static_cast<Index>(e.a);
            const auto l = static_cast<Index>(e.b);
            const double base = e.weight / rho;
            m(k, l) -= base * std::exp((dws(i, l) - dws(i, k) - e.length()) / alpha);
            if (k != l) m(l, k) -= base * std::exp((dws(i, k) - dws(i, l) - e.length()) / alpha);
        }
        // Row i of M^{-1} solves M^T x = e_i.
        const Vector x = linalg::LuSolver(m.transpose()).solve(Vector::Unit(n, i));
        if ((x.array() <= 0.0).any()) throw NumericalError("epsilon-walk weights lost positivity");
        log_r.row(i) = x.array().log().matrix().transpose();
    }

    const double theta = schedule.at(alpha);
    Matrix d(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            d(i, j) = theta * dws(i, j) - theta * alpha * (log_r(i, j) - 0.5 * log_r(i, i) - 0.5 * log_r(j, j));
        }
    }
    ParamPoint param{};
    param.alpha = alpha;
    param.theta = theta;
    param.rho = rho;
    return {finalize_distance(d), MetricFamily::ewalk, param};
}

/// theta_inf = (2/n) (p^T (A/rho) p) / (p^T N p) for a derivative pattern N.
inline double theta_infinity(const Matrix& a, const Matrix& pattern) {
    require_irreducible(a);
    const auto s = perron(a);
    const double num = s.p.dot((a / s.rho) * s.p);
    const double den = s.p.dot(pattern * s.p);
    return 2.0 / static_cast<double>(a.rows()) * num / den;
}

/// Uses the 0/1 indicator of A as the pattern.
inline double theta_infinity(const Matrix& a) { return theta_infinity(a, indicator_matrix(a)); }

/// Uses edge multiplicities, the pattern that governs the alpha -> inf limit of ewalk_distance.
inline double theta_infinity(const Graph& g) {
    g.require_connected();
    return theta_infinity(build_adjacency(g), edge_multiplicity_matrix(g));
}

/// (theta_inf / 2) (p_i^{-1} ((Lambda_jj)^{-1} N_{-j})_i + p_j^{-1} ((Lambda_ii)^{-1} N_{-i})_j) p,
/// where N_{-j} is the pattern with row j removed.
inline DistanceMatrix long_ewalk_distance(const Matrix& a, const Matrix& pattern, double theta_inf) {
    require_irreducible(a);
    const auto s = perron(a);
    const Index n = a.rows();
    Matrix lam = -a;
    lam.diagonal().array() += s.rho;
    const Vector np = pattern * s.p;
    Matrix half = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        const Vector x = linalg::SpdSolver(linalg::remove_index(lam, j)).solve(linalg::remove_entry(np, j));
        for (Index i = 0; i < n; ++i) {
            if (i != j) half(i, j) = x(linalg::position_without(i, j)) / s.p(i);
        }
    }
    return {finalize_distance(0.5 * theta_inf * (half + half.transpose())), MetricFamily::long_ewalk, std::nullopt};
}

inline DistanceMatrix long_ewalk_distance(const Matrix& a, double theta_inf) {
    return long_ewalk_distance(a, indicator_matrix(a), theta_inf);
}

/// Limit of ewalk_distance(g, alpha, schedule) as alpha -> inf.
inline DistanceMatrix long_ewalk_distance(const Graph& g, double theta_inf) {
    g.require_connected();
    return long_ewalk_distance(build_adjacency(g), edge_multiplicity_matrix(g), theta_inf);
}

/// beta = sqrt(theta_inf) balances the two ends: |theta_alpha - 1| <= alpha |1 - theta_inf| / beta and
/// |theta_alpha - theta_inf| <= beta |1 - theta_inf| / alpha, relative to 1 and theta_inf respectively.
inline double default_theta_beta(double theta_inf) { return std::sqrt(theta_inf); }

/// theta_inf from the graph's multiplicity pattern with the default beta.
inline ThetaSchedule default_theta_schedule(const Graph& g) {
    const double th = theta_infinity(g);
    return {th, default_theta_beta(th)};
}

enum class SweepDirection { to_zero, to_infinity };

/// alpha -> 0 compares against the weighted shortest path distance;
/// alpha -> inf against the long epsilon-walk distance.
inline std::vector<SweepPoint> ewalk_limit_sweep(const Graph& g, const ThetaSchedule& schedule,
                                                 SweepDirection direction, std::span<const double> alphas) {
    const Matrix reference = direction == SweepDirection::to_zero
                                 ? weighted_shortest_path_matrix(g).values
                                 : long_ewalk_distance(g, schedule.theta_infinity).values;
    return limit_sweep([&](double a) { return ewalk_distance(g, a, schedule).values; }, alphas, reference);
}

}  // namespace walkdist
