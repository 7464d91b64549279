#pragma once

#include <cmath>
#include <functional>

#include "walkdist/distance.hpp"
#include "walkdist/graph.hpp"
#include "walkdist/spectral.hpp"

namespace walkdist {

enum class ProximityKind { walk, forest, log_forest, ewalk };

/// Strictly positive symmetric proximity (walk weights, forest accessibilities).
struct ProximityMatrix {
    Matrix values;
    ProximityKind kind = ProximityKind::walk;
};

inline void require_irreducible(const Matrix& a) {
    if (!linalg::is_irreducible(a)) throw DisconnectedGraph("adjacency matrix is reducible (graph not connected)");
}

// ---------------------------------------------------------------------------
// Kernel -> distance conversions

/// D = 1/2 (h 1^T + 1 h^T) - H for H = theta * ln(S) elementwise.
/// Equivalently d_ij = -theta ln(s_ij / sqrt(s_ii s_jj)).
inline Matrix log_kernel_distance(const Matrix& s, double theta) {
    if ((s.array() <= 0.0).any() || !s.allFinite()) {
        throw NumericalError("proximity matrix must be strictly positive and finite");
    }
    const Matrix h = theta * s.array().log().matrix();
    const Vector diag = h.diagonal();
    Matrix d = -h;
    d.colwise() += 0.5 * diag;
    d.rowwise() += 0.5 * diag.transpose();
    return finalize_distance(d);
}

/// D = 1/2 (s 1^T + 1 s^T) - S with no logarithm.
inline Matrix kernel_distance(const Matrix& s) {
    const Vector diag = s.diagonal();
    Matrix d = -s;
    d.colwise() += 0.5 * diag;
    d.rowwise() += 0.5 * diag.transpose();
    return finalize_distance(d);
}

inline DistanceMatrix proximity_to_distance(const ProximityMatrix& s, double theta) {
    MetricFamily family = MetricFamily::walk;
    switch (s.kind) {
        case ProximityKind::walk: family = MetricFamily::walk; break;
        case ProximityKind::forest:
        case ProximityKind::log_forest: family = MetricFamily::log_forest; break;
        case ProximityKind::ewalk: family = MetricFamily::ewalk; break;
    }
    return {log_kernel_distance(s.values, theta), family, std::nullopt};
}

// ---------------------------------------------------------------------------
// Walk weights

/// R_t = (I - tA)^{-1} = sum_k (tA)^k, for 0 < t < 1/rho.
inline ProximityMatrix walk_weight_matrix(const Matrix& a, double t, double rho) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    if (t * rho >= 1.0) throw DomainError("walk series diverges: t must be below 1/rho");
    const Index n = a.rows();
    Matrix r = linalg::SpdSolver(Matrix::Identity(n, n) - t * a).inverse();
    return {linalg::symmetrized(r), ProximityKind::walk};
}

inline ProximityMatrix walk_weight_matrix(const Matrix& a, double t) {
    return walk_weight_matrix(a, t, perron(a).rho);
}

/// d^W_alpha = theta * d_t with t = (rho + 1/alpha)^{-1} and the walk theta.
inline DistanceMatrix walk_distance(const Matrix& a, double alpha) {
    require_irreducible(a);
    const auto s = perron(a);
    const auto param = ParamPoint::from_alpha(alpha, s.rho, static_cast<std::size_t>(a.rows()));
    const auto r = walk_weight_matrix(a, param.t, s.rho);
    return {log_kernel_distance(r.values, param.theta), MetricFamily::walk, param};
}

inline DistanceMatrix walk_distance(const Graph& g, double alpha) {
    g.require_connected();
    return walk_distance(build_adjacency(g), alpha);
}

/// Distance conversion applied to R_t itself (no logarithm).
inline DistanceMatrix plain_walk_distance(const Matrix& a, double alpha) {
    require_irreducible(a);
    const auto s = perron(a);
    const auto param = ParamPoint::from_alpha(alpha, s.rho, static_cast<std::size_t>(a.rows()));
    const auto r = walk_weight_matrix(a, param.t, s.rho);
    return {kernel_distance(r.values), MetricFamily::plain_walk, param};
}

inline DistanceMatrix plain_walk_distance(const Graph& g, double alpha) {
    g.require_connected();
    return plain_walk_distance(build_adjacency(g), alpha);
}

/// Largest alpha (capped at `cap`) with t max_i (A 1)_i <= 1, i.e. I - tA
/// diagonally dominant. The plain walk distance obeys the triangle inequality
/// there; for larger alpha it may not.
inline double plain_walk_metric_alpha(const Matrix& a, double cap = 1.0) {
    const double gap = a.rowwise().sum().maxCoeff() - perron(a).rho;
    return gap * cap <= 1.0 ? cap : 1.0 / gap;
}

// ---------------------------------------------------------------------------
// Forest metrics

/// (I + alpha L)^{-1}; always exists for alpha > 0.
inline ProximityMatrix forest_matrix(const Matrix& laplacian_matrix, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const Index n = laplacian_matrix.rows();
    return {linalg::symmetrized(linalg::SpdSolver(Matrix::Identity(n, n) + alpha * laplacian_matrix).inverse()),
            ProximityKind::forest};
}

/// Distance conversion of (I + alpha L)^{-1} without logarithm.
inline DistanceMatrix forest_distance(const Graph& g, double alpha) {
    g.require_connected();
    const auto q = forest_matrix(laplacian(g), alpha);
    ParamPoint param{};
    param.alpha = alpha;
    return {kernel_distance(q.values), MetricFamily::forest, param};
}

/// Logarithmic forest distance: Q = (I + L(G_alpha))^{-1} where G_alpha has
/// every edge weight w replaced by phi(w); then D from theta * ln(Q).
template <class WeightTransform>
DistanceMatrix log_forest_distance(const Graph& g, WeightTransform&& phi, double alpha, double theta) {
    g.require_connected();
    const Graph transformed = g.with_weights([&](const EdgeRecord& e) { return phi(e.weight); });
    const auto q = forest_matrix(laplacian(transformed), 1.0);
    ParamPoint param{};
    param.alpha = alpha;
    param.theta = theta;
    return {log_kernel_distance(q.values, theta), MetricFamily::log_forest, param};
}

/// phi(w) = alpha w with theta from walk_theta(alpha, n).
inline DistanceMatrix log_forest_distance(const Graph& g, double alpha) {
    return log_forest_distance(
        g, [alpha](double w) { return alpha * w; }, alpha, walk_theta(alpha, g.order()));
}

}  // namespace walkdist
