#pragma once

#include <optional>
#include <vector>

#include "walkdist/graph.hpp"
#include "walkdist/spectral.hpp"

namespace walkdist {

/// A copy of `base` with loops attached so that every weighted degree equals m.
struct BalanceGraph {
    Graph base;
    double m = 0.0;
    Graph result;
};

inline double max_weighted_degree(const Graph& g) { return build_adjacency(g).rowwise().sum().maxCoeff(); }

/// Attaches a loop of weight m - deg(i) at each vertex with deg(i) < m.
/// The adjacency becomes m I - diag(A 1) + A and the Laplacian is unchanged.
inline BalanceGraph balance_graph(const Graph& g, std::optional<double> m = std::nullopt) {
    const Vector deg = build_adjacency(g).rowwise().sum();
    const double max_deg = deg.maxCoeff();
    const double level = m.value_or(max_deg);
    if (level < max_deg * (1.0 - 1e-15)) throw DomainError("balance level m is below the maximum weighted degree");
    std::vector<EdgeRecord> loops;
    for (VertexId v = 0; v < g.order(); ++v) {
        const double gap = level - deg(static_cast<Index>(v));
        if (gap > 1e-15 * level) loops.push_back({v, v, gap});
    }
    return {g, level, g.with_added_edges(loops)};
}

/// A(alpha) = (m + 1)^{-1} (m I - L_alpha), the adjacency of the loop-balanced
/// graph with row sums m / (m + 1). Requires m >= max diagonal of L_alpha.
inline Matrix general_balance(const Matrix& laplacian_alpha, double m_alpha) {
    const double max_diag = laplacian_alpha.diagonal().maxCoeff();
    if (m_alpha < max_diag * (1.0 - 1e-15)) throw DomainError("m_alpha is below the largest Laplacian diagonal entry");
    Matrix a = -laplacian_alpha;
    a.diagonal().array() += m_alpha;
    return a / (m_alpha + 1.0);
}

inline Matrix general_balance(const Graph& g_alpha, double m_alpha) { return general_balance(laplacian(g_alpha), m_alpha); }

/// The graph with adjacency P'AP', P' = diag(sqrt(n) p / ||p||_2): each edge
/// weight w between i and j becomes p'_i p'_j w, preserving multi-edges.
inline Graph similarity_transform(const Graph& g) {
    g.require_connected();
    const auto s = perron(build_adjacency(g));
    return g.with_weights([&](const EdgeRecord& e) {
        return s.p_prime(static_cast<Index>(e.a)) * s.p_prime(static_cast<Index>(e.b)) * e.weight;
    });
}

}  // namespace walkdist
