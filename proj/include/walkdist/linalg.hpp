#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "walkdist/error.hpp"

namespace walkdist {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Solves whose reciprocal condition estimate falls below this are rejected.
inline constexpr double kConditionLimit = 1e14;

namespace linalg {

/// Indices 0..n-1 with `skip` left out, in increasing order.
inline std::vector<Index> complement(Index n, Index skip) {
    std::vector<Index> idx;
    idx.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    for (Index k = 0; k < n; ++k) {
        if (k != skip) idx.push_back(k);
    }
    return idx;
}

/// Position of vertex `v` inside complement(n, skip). Requires v != skip.
inline Index position_without(Index v, Index skip) { return v < skip ? v : v - 1; }

/// M with row `row` and column `col` removed. Remaining rows/columns keep
/// their relative order, so position_without() maps vertex ids onto them.
inline Matrix remove_row_col(const Matrix& m, Index row, Index col) {
    const auto rows = complement(m.rows(), row);
    const auto cols = complement(m.cols(), col);
    return m(rows, cols);
}

/// Principal submatrix with vertex `j` removed.
inline Matrix remove_index(const Matrix& m, Index j) { return remove_row_col(m, j, j); }

inline Vector remove_entry(const Vector& v, Index j) { return v(complement(v.size(), j)); }

inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool is_symmetric(const Matrix& m, double rel_tol = 1e-12) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, max_abs(m));
    return max_abs(m - m.transpose()) <= rel_tol * scale;
}

/// True iff the nonzero pattern of the square matrix m is a connected graph.
inline bool is_irreducible(const Matrix& m) {
    const Index n = m.rows();
    if (n == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<Index> todo;
    todo.push(0);
    seen[0] = 1;
    Index count = 1;
    while (!todo.empty()) {
        const Index u = todo.front();
        todo.pop();
        for (Index v = 0; v < n; ++v) {
            if (!seen[static_cast<std::size_t>(v)] && (m(u, v) != 0.0 || m(v, u) != 0.0)) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                todo.push(v);
            }
        }
    }
    return count == n;
}

/// Factorization of a symmetric positive definite matrix with a conditioning guard.
class SpdSolver {
public:
    explicit SpdSolver(const Matrix& m) : llt_(m) {
        if (llt_.info() != Eigen::Success) {
            throw NumericalError("matrix is not positive definite");
        }
        if (m.size() > 0 && llt_.rcond() * kConditionLimit < 1.0) {
            throw NumericalError("matrix is too ill-conditioned to solve");
        }
    }

    template <class Rhs>
    Matrix solve(const Rhs& b) const {
        return llt_.solve(b);
    }

    Matrix inverse() const { return solve(Matrix::Identity(llt_.rows(), llt_.cols())); }

    /// log det, valid since the matrix is positive definite.
    double log_determinant() const {
        const auto& l = llt_.matrixLLT();
        double acc = 0.0;
        for (Index k = 0; k < l.rows(); ++k) acc += std::log(l(k, k));
        return 2.0 * acc;
    }

private:
    Eigen::LLT<Matrix> llt_;
};

/// LU factorization of a general square matrix with a conditioning guard.
class LuSolver {
public:
    explicit LuSolver(const Matrix& m) : lu_(m) {
        if (m.size() > 0 && !(lu_.rcond() * kConditionLimit >= 1.0)) {
            throw NumericalError("matrix is singular or too ill-conditioned to solve");
        }
    }

    template <class Rhs>
    Matrix solve(const Rhs& b) const {
        return lu_.solve(b);
    }

    Matrix inverse() const { return lu_.inverse(); }

private:
    Eigen::PartialPivLU<Matrix> lu_;
};

struct LogDeterminant {
    double log_abs = 0.0;  ///< log |det M|; -inf for singular M
    int sign = 1;          ///< +1, -1, or 0 for singular M
};

/// log|det M| with sign tracking. The empty matrix has determinant 1.
inline LogDeterminant log_determinant(const Matrix& m) {
    LogDeterminant out;
    if (m.size() == 0) return out;
    const Eigen::FullPivLU<Matrix> lu(m);
    const auto& packed = lu.matrixLU();
    int sign = static_cast<int>(lu.permutationP().determinant() * lu.permutationQ().determinant());
    double acc = 0.0;
    for (Index k = 0; k < packed.rows(); ++k) {
        const double d = packed(k, k);
        if (d == 0.0) return {-HUGE_VAL, 0};
        if (d < 0.0) sign = -sign;
        acc += std::log(std::abs(d));
    }
    out.log_abs = acc;
    out.sign = sign;
    return out;
}

/// Largest eigenvalue of a symmetric matrix.
inline double largest_eigenvalue(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    const Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

inline double smallest_eigenvalue(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    const Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    return es.eigenvalues()(0);
}

}  // namespace linalg
}  // namespace walkdist
