#pragma once

#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "walkdist/distance.hpp"
#include "walkdist/graph.hpp"
#include "walkdist/spectral.hpp"
#include "walkdist/walk_metrics.hpp"

namespace walkdist {

// ---------------------------------------------------------------------------
// Shortest paths

/// Hop counts. Weights, parallel edges and loops play no role.
inline DistanceMatrix shortest_path_matrix(const Graph& g) {
    g.require_connected();
    const auto n = g.order();
    std::vector<std::vector<VertexId>> adj(n);
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    Matrix d = Matrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
    for (VertexId s = 0; s < n; ++s) {
        std::vector<long> dist(n, -1);
        dist[s] = 0;
        std::queue<VertexId> todo;
        todo.push(s);
        while (!todo.empty()) {
            const auto u = todo.front();
            todo.pop();
            for (auto v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    todo.push(v);
                }
            }
        }
        for (VertexId v = 0; v < n; ++v) d(static_cast<Index>(s), static_cast<Index>(v)) = static_cast<double>(dist[v]);
    }
    return {d, MetricFamily::shortest_path, std::nullopt};
}

/// Minimum over paths of the summed edge lengths 1/w (Floyd-Warshall).
inline DistanceMatrix weighted_shortest_path_matrix(const Graph& g) {
    g.require_connected();
    const auto n = static_cast<Index>(g.order());
    constexpr double inf = std::numeric_limits<double>::infinity();
    Matrix d = Matrix::Constant(n, n, inf);
    d.diagonal().setZero();
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        const auto i = static_cast<Index>(e.a);
        const auto j = static_cast<Index>(e.b);
        d(i, j) = std::min(d(i, j), e.length());
        d(j, i) = d(i, j);
    }
    for (Index k = 0; k < n; ++k) {
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
        }
    }
    return {d, MetricFamily::weighted_shortest_path, std::nullopt};
}

// ---------------------------------------------------------------------------
// Hitting walks and commute cycles

namespace detail {

/// Weights of i->j hitting walks for all i, at inverse parameter s = 1/t:
/// (sI - A_jj)^{-1} a_j, where A_jj drops vertex j and a_j is column j without a_jj.
/// Entry j of the result is 1 (the trivial walk).
inline Vector hitting_column(const Matrix& a, double s, Index j) {
    const Index n = a.rows();
    Matrix m = -linalg::remove_index(a, j);
    m.diagonal().array() += s;
    const Vector rhs = linalg::remove_entry(a.col(j), j);
    const Vector x = linalg::SpdSolver(m).solve(rhs);
    Vector out(n);
    for (Index k = 0; k < n; ++k) out(k) = k == j ? 1.0 : x(linalg::position_without(k, j));
    return out;
}

inline void check_hitting_parameter(const Matrix& a, double t, Index j) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    const double sub = submatrix_spectral_radius(a, j);
    // Within rounding of the boundary the solve is singular; report it as a domain error.
    if (t * sub >= 1.0 - 1e-12) throw DomainError("t must lie below 1/rho(A with vertex removed)");
}

}  // namespace detail

/// Weight of all i->j hitting walks in G(t); defined as 1 when i == j.
/// Valid for 0 < t < 1/rho(A_jj), which includes t = 1/rho(A).
inline double hitting_weight(const Matrix& a, double t, Index i, Index j) {
    if (i == j) return 1.0;
    detail::check_hitting_parameter(a, t, j);
    return detail::hitting_column(a, 1.0 / t, j)(i);
}

/// Hitting weight at t = 1/rho(A), where it equals p_i / p_j.
inline double hitting_weight_at_spectral_radius(const Matrix& a, Index i, Index j) {
    if (i == j) return 1.0;
    return detail::hitting_column(a, perron(a).rho, j)(i);
}

/// Weight of i<->j commute cycles: product of the two hitting weights.
inline double commute_cycle_weight(const Matrix& a, double t, Index i, Index j) {
    return hitting_weight(a, t, i, j) * hitting_weight(a, t, j, i);
}

inline double commute_cycle_weight_at_spectral_radius(const Matrix& a, Index i, Index j) {
    return hitting_weight_at_spectral_radius(a, i, j) * hitting_weight_at_spectral_radius(a, j, i);
}

/// Matrix of hitting-walk weights r_{ij(1)}(t).
struct HittingWeights {
    Matrix entries;
    bool at_spectral_radius = false;

    double commute(Index i, Index j) const { return entries(i, j) * entries(j, i); }
};

inline HittingWeights hitting_weight_matrix(const Matrix& a, double t) {
    const Index n = a.rows();
    HittingWeights out{Matrix(n, n), false};
    for (Index j = 0; j < n; ++j) {
        detail::check_hitting_parameter(a, t, j);
        out.entries.col(j) = detail::hitting_column(a, 1.0 / t, j);
    }
    return out;
}

inline HittingWeights hitting_weight_matrix_at_spectral_radius(const Matrix& a) {
    const Index n = a.rows();
    const double rho = perron(a).rho;
    HittingWeights out{Matrix(n, n), true};
    for (Index j = 0; j < n; ++j) out.entries.col(j) = detail::hitting_column(a, rho, j);
    return out;
}

// ---------------------------------------------------------------------------
// Long walk distance: five independent routes

/// (Lambda_jj)^{-1}_i p_{-j} / p_i + (Lambda_ii)^{-1}_j p_{-i} / p_j, all over n.
inline DistanceMatrix long_walk_distance(const Matrix& a) {
    require_irreducible(a);
    const auto s = perron(a);
    const Index n = a.rows();
    Matrix lam = -a;
    lam.diagonal().array() += s.rho;
    Matrix half = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        // Lambda_jj is symmetric, so row i of its inverse times p equals entry i of the solve.
        const Vector x = linalg::SpdSolver(linalg::remove_index(lam, j)).solve(linalg::remove_entry(s.p, j));
        for (Index i = 0; i < n; ++i) {
            if (i != j) half(i, j) = x(linalg::position_without(i, j)) / s.p(i);
        }
    }
    const Matrix d = (half + half.transpose()) / static_cast<double>(n);
    return {finalize_distance(d), MetricFamily::long_walk, std::nullopt};
}

inline DistanceMatrix long_walk_distance(const Graph& g) {
    g.require_connected();
    return long_walk_distance(build_adjacency(g));
}

enum class StochasticForm {
    similarity,  ///< B = P^{-1} A P, prefactor 1/n, rows of (rho I - B_jj)^{-1}
    transition,  ///< Q = (rho P)^{-1} A P, prefactor 1/(n rho), rows of (I - Q_jj)^{-1}
};

/// Q = (rho P)^{-1} A P; every row sums to one.
inline Matrix stochastic_matrix(const Matrix& a) {
    const auto s = perron(a);
    return (s.p.cwiseInverse() / s.rho).asDiagonal() * a * s.p.asDiagonal();
}

inline DistanceMatrix long_walk_via_stochastic(const Matrix& a, StochasticForm form = StochasticForm::similarity) {
    require_irreducible(a);
    const auto s = perron(a);
    const Index n = a.rows();
    const Matrix b = s.p.cwiseInverse().asDiagonal() * a * s.p.asDiagonal();
    Matrix m;
    double prefactor = 0.0;
    if (form == StochasticForm::similarity) {
        m = -b;
        m.diagonal().array() += s.rho;
        prefactor = 1.0 / static_cast<double>(n);
    } else {
        m = -b / s.rho;
        m.diagonal().array() += 1.0;
        prefactor = 1.0 / (static_cast<double>(n) * s.rho);
    }
    Matrix half = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        // Row i of M^{-1} times 1 is entry i of M^{-1} 1.
        const Vector x = linalg::LuSolver(linalg::remove_index(m, j)).solve(Vector::Ones(n - 1));
        for (Index i = 0; i < n; ++i) {
            if (i != j) half(i, j) = x(linalg::position_without(i, j));
        }
    }
    return {finalize_distance(prefactor * (half + half.transpose())), MetricFamily::long_walk, std::nullopt};
}

/// (||p||_2^2 / n) [((rho I - A~_j) P)^{-1}_i + ((rho I - A~_i) P)^{-1}_j] 1, where
/// A~_j is A with row and column j set to zero and kept at full size n. Row i of
/// the full-size inverse has a zero in column j for i != j, so no index is dropped.
inline DistanceMatrix long_walk_via_row_scaled(const Matrix& a) {
    require_irreducible(a);
    const auto s = perron(a);
    const Index n = a.rows();
    const double scale = s.p.squaredNorm() / static_cast<double>(n);
    Matrix half = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        Matrix zeroed = a;
        zeroed.row(j).setZero();
        zeroed.col(j).setZero();
        Matrix m = -zeroed;
        m.diagonal().array() += s.rho;
        // ((M P)^{-1} 1)_i = (M^{-1} 1)_i / p_i
        const Vector x = linalg::SpdSolver(m).solve(Vector::Ones(n));
        for (Index i = 0; i < n; ++i) {
            if (i != j) half(i, j) = x(i) / s.p(i);
        }
    }
    return {finalize_distance(scale * (half + half.transpose())), MetricFamily::long_walk, std::nullopt};
}

/// det((Lambda_ii)_jj) / (p'_j^2 det Lambda_ii), evaluated with log-determinants.
inline DistanceMatrix long_walk_via_determinant(const Matrix& a) {
    require_irreducible(a);
    const auto s = perron(a);
    const Index n = a.rows();
    Matrix lam = -a;
    lam.diagonal().array() += s.rho;
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const Matrix li = linalg::remove_index(lam, i);
        const auto outer = linalg::log_determinant(li);
        if (outer.sign == 0) throw NumericalError("singular principal submatrix of the para-Laplacian");
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const auto inner = linalg::log_determinant(linalg::remove_index(li, linalg::position_without(j, i)));
            const double ratio = inner.sign * outer.sign * std::exp(inner.log_abs - outer.log_abs);
            d(i, j) = ratio / (s.p_prime(j) * s.p_prime(j));
        }
    }
    return {finalize_distance(d), MetricFamily::long_walk, std::nullopt};
}

// ---------------------------------------------------------------------------
// g-inverses of singular symmetric matrices with a one-dimensional kernel

enum class GInverseKind {
    plus_projector,  ///< (X + k k^T)^{-1}; for a Laplacian, (L + J/n)^{-1}
    group_inverse,   ///< (X + k k^T)^{-1} - k k^T, also the Moore-Penrose inverse
    shifted,         ///< group inverse + a k^T + k b^T
};

struct GInverse {
    Matrix matrix;
    GInverseKind kind = GInverseKind::group_inverse;
};

/// g-inverse of a symmetric X whose kernel is spanned by the unit vector `kernel`.
/// The shift vectors are used only for GInverseKind::shifted.
inline GInverse g_inverse(const Matrix& x, const Vector& kernel, GInverseKind kind, const Vector& shift_a = {},
                          const Vector& shift_b = {}) {
    const Matrix proj = kernel * kernel.transpose();
    GInverse out{linalg::SpdSolver(x + proj).inverse(), kind};
    if (kind != GInverseKind::plus_projector) out.matrix -= proj;
    if (kind == GInverseKind::shifted) {
        if (shift_a.size() != x.rows() || shift_b.size() != x.rows()) {
            throw std::invalid_argument("g_inverse: shift vectors must have the matrix order");
        }
        out.matrix += shift_a * kernel.transpose() + kernel * shift_b.transpose();
    }
    return out;
}

/// ||X Z X - X|| / ||X|| in the max norm.
inline double g_inverse_residual(const Matrix& x, const Matrix& z) {
    return linalg::max_abs(x * z * x - x) / std::max(linalg::max_abs(x), 1e-300);
}

/// z^T Lambda^- z with z_i = 1/p'_i, z_j = -1/p'_j.
inline DistanceMatrix long_walk_via_ginverse(const Matrix& a, GInverseKind kind = GInverseKind::group_inverse,
                                             const Vector& shift_a = {}, const Vector& shift_b = {}) {
    require_irreducible(a);
    const auto s = perron(a);
    const Index n = a.rows();
    Matrix lam = -a;
    lam.diagonal().array() += s.rho;
    const auto z = g_inverse(lam, s.p_tilde, kind, shift_a, shift_b).matrix;
    const Vector q = s.p_prime.cwiseInverse();
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            d(i, j) = q(i) * q(i) * z(i, i) + q(j) * q(j) * z(j, j) - q(i) * q(j) * (z(i, j) + z(j, i));
        }
    }
    return {finalize_distance(d), MetricFamily::long_walk, std::nullopt};
}

/// z_{-u}^T (Lambda with row v and column u removed)^{-1} z_{-v}, for any u, v.
inline DistanceMatrix long_walk_via_reduced(const Matrix& a, Index u, Index v) {
    require_irreducible(a);
    const auto s = perron(a);
    const Index n = a.rows();
    Matrix lam = -a;
    lam.diagonal().array() += s.rho;
    const Matrix inv = linalg::LuSolver(linalg::remove_row_col(lam, v, u)).inverse();
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            Vector z = Vector::Zero(n);
            z(i) = 1.0 / s.p_prime(i);
            z(j) = -1.0 / s.p_prime(j);
            d(i, j) = linalg::remove_entry(z, u).dot(inv * linalg::remove_entry(z, v));
        }
    }
    return {finalize_distance(d), MetricFamily::long_walk, std::nullopt};
}

enum class ParaLaplacianForm { determinant, g_inverse, reduced };

/// Dispatch over the three para-Laplacian expressions.
inline DistanceMatrix long_walk_via_det_and_ginverse(const Matrix& a, ParaLaplacianForm form, Index u = 0,
                                                     Index v = 0) {
    switch (form) {
        case ParaLaplacianForm::determinant: return long_walk_via_determinant(a);
        case ParaLaplacianForm::g_inverse: return long_walk_via_ginverse(a);
        case ParaLaplacianForm::reduced: return long_walk_via_reduced(a, u, v);
    }
    throw std::invalid_argument("unknown para-Laplacian form");
}

// ---------------------------------------------------------------------------
// Resistance distance

enum class ResistanceFormula {
    principal_submatrix,  ///< ((L_jj)^{-1}_i + (L_ii)^{-1}_j) 1 / n
    cofactor,             ///< (-1)^(u+v) det((L_ii)_jj) / det(L without row u, column v)
    plus_jbar,            ///< l-_ii + l-_jj - 2 l-_ij with L- = (L + J/n)^{-1}
    group_inverse,        ///< same with L# = (L + J/n)^{-1} - J/n
    reduced,              ///< x_{-u}^T (L without row v, column u)^{-1} x_{-v}
};

inline DistanceMatrix resistance_distance(const Graph& g, ResistanceFormula formula, Index u = 0, Index v = 0) {
    g.require_connected();
    const Matrix l = laplacian(g);
    const Index n = l.rows();
    const double nd = static_cast<double>(n);
    Matrix d = Matrix::Zero(n, n);
    switch (formula) {
        case ResistanceFormula::principal_submatrix: {
            for (Index j = 0; j < n; ++j) {
                const Vector x = linalg::SpdSolver(linalg::remove_index(l, j)).solve(Vector::Ones(n - 1));
                for (Index i = 0; i < n; ++i) {
                    if (i != j) d(i, j) = x(linalg::position_without(i, j)) / nd;
                }
            }
            d += d.transpose().eval();
            break;
        }
        case ResistanceFormula::cofactor: {
            const auto denom = linalg::log_determinant(linalg::remove_row_col(l, u, v));
            if (denom.sign == 0) throw NumericalError("singular Laplacian minor");
            const int parity = ((u + v) % 2 == 0) ? 1 : -1;
            for (Index i = 0; i < n; ++i) {
                const Matrix li = linalg::remove_index(l, i);
                for (Index j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const auto num = linalg::log_determinant(linalg::remove_index(li, linalg::position_without(j, i)));
                    d(i, j) = parity * num.sign * denom.sign * std::exp(num.log_abs - denom.log_abs);
                }
            }
            break;
        }
        case ResistanceFormula::plus_jbar:
        case ResistanceFormula::group_inverse: {
            const auto kind = formula == ResistanceFormula::plus_jbar ? GInverseKind::plus_projector
                                                                      : GInverseKind::group_inverse;
            const Matrix z = g_inverse(l, Vector::Constant(n, 1.0 / std::sqrt(nd)), kind).matrix;
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < n; ++j) {
                    if (i != j) d(i, j) = z(i, i) + z(j, j) - z(i, j) - z(j, i);
                }
            }
            break;
        }
        case ResistanceFormula::reduced: {
            const Matrix inv = linalg::LuSolver(linalg::remove_row_col(l, v, u)).inverse();
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < n; ++j) {
                    if (i == j) continue;
                    Vector x = Vector::Zero(n);
                    x(i) = 1.0;
                    x(j) = -1.0;
                    d(i, j) = linalg::remove_entry(x, u).dot(inv * linalg::remove_entry(x, v));
                }
            }
            break;
        }
    }
    return {finalize_distance(d), MetricFamily::resistance, std::nullopt};
}

inline DistanceMatrix resistance_distance(const Graph& g) {
    return resistance_distance(g, ResistanceFormula::principal_submatrix);
}

// ---------------------------------------------------------------------------
// Limit sweeps

struct SweepPoint {
    double alpha = 0.0;
    double deviation = std::numeric_limits<double>::quiet_NaN();  ///< sup-norm distance to the reference
    std::string error;                                            ///< non-empty if evaluation failed

    bool ok() const { return error.empty(); }
};

/// Evaluates `distance_at(alpha)` along the schedule and records the sup-norm
/// deviation from `reference`. Failures are recorded per point.
template <class DistanceAt>
std::vector<SweepPoint> limit_sweep(DistanceAt&& distance_at, std::span<const double> alphas, const Matrix& reference) {
    std::vector<SweepPoint> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        SweepPoint pt;
        pt.alpha = alpha;
        try {
            const Matrix d = distance_at(alpha);
            pt.deviation = linalg::max_abs(d - reference);
            if (!std::isfinite(pt.deviation)) pt.error = "non-finite distance";
        } catch (const Error& e) {
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

/// Walk or log-forest sweep against a reference matrix.
inline std::vector<SweepPoint> limit_sweep(MetricFamily family, const Graph& g, std::span<const double> alphas,
                                           const DistanceMatrix& reference) {
    switch (family) {
        case MetricFamily::walk:
            return limit_sweep([&](double a) { return walk_distance(g, a).values; }, alphas, reference.values);
        case MetricFamily::log_forest:
            return limit_sweep([&](double a) { return log_forest_distance(g, a).values; }, alphas, reference.values);
        case MetricFamily::plain_walk:
            return limit_sweep([&](double a) { return plain_walk_distance(g, a).values; }, alphas, reference.values);
        case MetricFamily::forest:
            return limit_sweep([&](double a) { return forest_distance(g, a).values; }, alphas, reference.values);
        default: throw std::invalid_argument("limit_sweep: family has no alpha parameter here");
    }
}

/// True iff every point from `burn_in` on succeeded and deviations strictly decrease.
inline bool is_decreasing(const std::vector<SweepPoint>& pts, std::size_t burn_in = 0) {
    for (std::size_t k = burn_in; k < pts.size(); ++k) {
        if (!pts[k].ok()) return false;
        if (k > burn_in && !(pts[k].deviation < pts[k - 1].deviation)) return false;
    }
    return true;
}

}  // namespace walkdist
