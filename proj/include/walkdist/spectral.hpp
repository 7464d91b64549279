#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "walkdist/error.hpp"
#include "walkdist/linalg.hpp"

namespace walkdist {

/// Perron root and Perron vector of a symmetric nonnegative irreducible matrix.
struct SpectralData {
    double rho = 0.0;
    Vector p;        ///< Perron vector, positive, ||p||_1 = 1
    Vector p_tilde;  ///< p / ||p||_2
    Vector p_prime;  ///< sqrt(n) p / ||p||_2, so ||p_prime||_2^2 = n

    Matrix P() const { return p.asDiagonal(); }
    Matrix P_prime() const { return p_prime.asDiagonal(); }
    std::size_t order() const { return static_cast<std::size_t>(p.size()); }
};

/// Matrices up to this order use the dense eigensolver; larger ones use power iteration.
inline constexpr Index kEigensolverMaxOrder = 64;

struct PowerIterationOptions {
    double relative_residual = 1e-12;
    long max_iterations = 100000;
};

namespace detail {

inline void require_perron_input(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("perron: matrix must be square");
    if (!linalg::is_symmetric(a)) throw NumericalError("perron: matrix is not symmetric");
    if ((a.array() < 0.0).any()) throw NumericalError("perron: matrix has negative entries");
}

/// Fixes the sign, normalizes, and checks the eigen-residual.
inline SpectralData finish_spectral(const Matrix& a, double rho, Vector v) {
    if (v.sum() < 0.0) v = -v;
    if ((v.array() <= 0.0).any()) {
        throw NumericalError("Perron vector is not strictly positive; is the graph connected?");
    }
    SpectralData s;
    s.rho = rho;
    s.p = v / v.sum();
    s.p_tilde = s.p / s.p.norm();
    s.p_prime = std::sqrt(static_cast<double>(v.size())) * s.p_tilde;
    const double residual = (a * s.p - rho * s.p).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-10 * rho)) {
        throw NumericalError("Perron pair fails the residual check");
    }
    return s;
}

}  // namespace detail

inline SpectralData perron_by_eigensolver(const Matrix& a) {
    detail::require_perron_input(a);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    const Index top = a.rows() - 1;
    return detail::finish_spectral(a, es.eigenvalues()(top), es.eigenvectors().col(top));
}

/// Power iteration on A + sI (s = half the largest row sum) so that the
/// Perron root strictly dominates even for bipartite graphs.
inline SpectralData perron_by_power_iteration(const Matrix& a, PowerIterationOptions opts = {}) {
    detail::require_perron_input(a);
    const Index n = a.rows();
    const double shift = 0.5 * a.rowwise().sum().maxCoeff();
    Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
    for (long it = 0; it < opts.max_iterations; ++it) {
        const Vector ax = a * x;
        const double mu = x.dot(ax) / x.squaredNorm();
        const double res = (ax - mu * x).norm() / (std::abs(mu) * x.norm());
        if (res <= opts.relative_residual) return detail::finish_spectral(a, mu, x);
        x = ax + shift * x;
        x /= x.norm();
    }
    throw NumericalError("power iteration did not converge");
}

inline SpectralData perron(const Matrix& a) {
    return a.rows() <= kEigensolverMaxOrder ? perron_by_eigensolver(a) : perron_by_power_iteration(a);
}

/// rho(A with row and column j removed); strictly below rho(A) for irreducible A.
inline double submatrix_spectral_radius(const Matrix& a, Index j) {
    return linalg::largest_eigenvalue(linalg::remove_index(a, j));
}

struct EigenprojectionCheck {
    std::vector<double> t;
    std::vector<double> deviation;  ///< sup-norm of (1/t - rho) R_t - rho p~ p~^T

    double final_deviation() const { return deviation.empty() ? 0.0 : deviation.back(); }
};

/// Tracks (1/t - rho) (I - tA)^{-1} approaching rho p~ p~^T as t rises to 1/rho.
inline EigenprojectionCheck eigenprojection_limit_check(const Matrix& a, std::span<const double> ts) {
    const auto s = perron(a);
    const Matrix target = s.rho * s.p_tilde * s.p_tilde.transpose();
    const Index n = a.rows();
    EigenprojectionCheck out;
    for (double t : ts) {
        if (!(t > 0.0) || t * s.rho >= 1.0) throw DomainError("t must lie in (0, 1/rho)");
        const Matrix r = linalg::SpdSolver(Matrix::Identity(n, n) - t * a).inverse();
        out.t.push_back(t);
        out.deviation.push_back(linalg::max_abs((1.0 / t - s.rho) * r - target));
    }
    return out;
}

}  // namespace walkdist
