#pragma once

// Brute-force references for the closed forms. Everything here is naive on
// purpose: walks are enumerated edge by edge (so parallel edges and loops
// count separately), truncated series are summed term by term, and property
// checks scan every triple.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "walkdist/graph.hpp"
#include "walkdist/linalg.hpp"
#include "walkdist/spectral.hpp"

namespace walkdist {

/// Raised when an enumeration would visit more than kEnumerationCap walks.
class EnumerationLimit : public Error {
public:
    EnumerationLimit() : Error("walk enumeration exceeds the visit cap") {}
};

inline constexpr std::size_t kEnumerationCap = 10'000'000;

/// A walk: vertex sequence v_0..v_m and the edge records traversed.
struct WalkRecord {
    std::vector<VertexId> vertices;
    std::vector<std::size_t> edges;
    double weight = 1.0;           ///< product of edge weights
    double weighted_length = 0.0;  ///< sum of 1/w over the edge multiset

    std::size_t length() const { return edges.size(); }
    VertexId last() const { return vertices.back(); }
};

/// Truncation at length `cap`; `tail` bounds the omitted mass from above.
struct TruncationBound {
    int cap = 0;
    double tail = 0.0;
};

struct OracleValue {
    double value = 0.0;
    TruncationBound bound;
};

namespace oracle {

struct Arc {
    std::size_t edge;
    VertexId to;
    double weight;
};

/// Outgoing arcs per vertex; a loop yields one arc, matching a_ii = loop weight.
inline std::vector<std::vector<Arc>> arcs(const Graph& g) {
    std::vector<std::vector<Arc>> out(g.order());
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
        const auto& e = g.edges()[k];
        out[e.a].push_back({k, e.b, e.weight});
        if (!e.is_loop()) out[e.b].push_back({k, e.a, e.weight});
    }
    return out;
}

/// Depth-first enumeration of walks from `start` with at most `max_length`
/// edges. `may_enter(walk, v)` filters steps; `visit(walk)` sees every walk
/// (including the trivial one) and returns false to stop extending it.
template <class MayEnter, class Visit>
void for_each_walk(const Graph& g, VertexId start, int max_length, MayEnter&& may_enter, Visit&& visit) {
    const auto out = arcs(g);
    WalkRecord walk;
    walk.vertices.push_back(start);
    std::size_t visited = 0;
    std::function<void()> recurse = [&]() {
        if (++visited > kEnumerationCap) throw EnumerationLimit();
        if (!visit(std::as_const(walk))) return;
        if (static_cast<int>(walk.length()) >= max_length) return;
        for (const auto& arc : out[walk.last()]) {
            if (!may_enter(std::as_const(walk), arc.to)) continue;
            walk.vertices.push_back(arc.to);
            walk.edges.push_back(arc.edge);
            const double w = walk.weight;
            const double l = walk.weighted_length;
            walk.weight *= arc.weight;
            walk.weighted_length += 1.0 / arc.weight;
            recurse();
            walk.weight = w;
            walk.weighted_length = l;
            walk.vertices.pop_back();
            walk.edges.pop_back();
        }
    };
    recurse();
}

/// Geometric envelope (t rho)^{K+1} n / (1 - t rho) for the tail of sum_k (tA)^k.
inline TruncationBound walk_tail_bound(double t, double rho, int cap, std::size_t n) {
    const double q = t * rho;
    if (!(q < 1.0)) throw DomainError("truncation bound needs t < 1/rho");
    return {cap, std::pow(q, cap + 1) * static_cast<double>(n) / (1.0 - q)};
}

/// Sums of t^len w over walks grouped by exact length (index = length).
using LengthProfile = std::vector<double>;

inline double profile_total(const LengthProfile& prof, int cap) {
    double acc = 0.0;
    for (int k = 0; k <= cap && k < static_cast<int>(prof.size()); ++k) acc += prof[static_cast<std::size_t>(k)];
    return acc;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// Walk weights

/// Sum of t^{m} w over all i->j walks of length m <= K, by explicit enumeration.
inline OracleValue enumerate_walk_weight(const Graph& g, double t, VertexId i, VertexId j, int K) {
    const double rho = perron(build_adjacency(g)).rho;
    double acc = 0.0;
    oracle::for_each_walk(
        g, i, K, [](const WalkRecord&, VertexId) { return true; },
        [&](const WalkRecord& w) {
            if (w.last() == j) acc += std::pow(t, static_cast<double>(w.length())) * w.weight;
            return true;
        });
    return {acc, oracle::walk_tail_bound(t, rho, K, g.order())};
}

/// Same truncated sum through matrix powers: sum_{k<=K} ((tA)^k)_ij.
inline OracleValue walk_weight_by_powers(const Matrix& a, double t, Index i, Index j, int K) {
    const double rho = perron(a).rho;
    Vector v = Vector::Unit(a.rows(), i);
    double acc = v(j);
    for (int k = 1; k <= K; ++k) {
        v = t * (a * v);
        acc += v(j);
    }
    return {acc, oracle::walk_tail_bound(t, rho, K, static_cast<std::size_t>(a.rows()))};
}

// ---------------------------------------------------------------------------
// Hitting walks and commute cycles

/// Length profile of i->j hitting walks (j occurs only at the end), lengths <= K.
inline oracle::LengthProfile hitting_profile(const Graph& g, double t, VertexId i, VertexId j, int K) {
    oracle::LengthProfile prof(static_cast<std::size_t>(K) + 1, 0.0);
    if (i == j) {
        prof[0] = 1.0;
        return prof;
    }
    oracle::for_each_walk(
        g, i, K, [](const WalkRecord&, VertexId) { return true; },
        [&](const WalkRecord& w) {
            if (w.length() > 0 && w.last() == j) {
                prof[w.length()] += std::pow(t, static_cast<double>(w.length())) * w.weight;
                return false;
            }
            return true;
        });
    return prof;
}

inline OracleValue enumerate_hitting_weight(const Graph& g, double t, VertexId i, VertexId j, int K) {
    const double rho = perron(build_adjacency(g)).rho;
    if (i == j) return {1.0, {K, 0.0}};
    return {oracle::profile_total(hitting_profile(g, t, i, j, K), K), oracle::walk_tail_bound(t, rho, K, g.order())};
}

/// sum_{m<K} ((tA_jj)^m t a_j)_i with vertex j zeroed out instead of removed.
inline OracleValue hitting_weight_by_powers(const Matrix& a, double t, Index i, Index j, int K) {
    const double rho = perron(a).rho;
    if (i == j) return {1.0, {K, 0.0}};
    Matrix sub = a;
    sub.row(j).setZero();
    sub.col(j).setZero();
    Vector v = t * a.col(j);
    v(j) = 0.0;
    double acc = 0.0;
    for (int m = 1; m <= K; ++m) {
        acc += v(i);
        v = t * (sub * v);
    }
    return {acc, oracle::walk_tail_bound(t, rho, K, static_cast<std::size_t>(a.rows()))};
}

/// Closed walks i -> ... -> i of length <= K that contain j and have no i
/// strictly between the first j and the final i.
inline OracleValue enumerate_commute_cycle_weight(const Graph& g, double t, VertexId i, VertexId j, int K) {
    const double rho = perron(build_adjacency(g)).rho;
    double acc = 0.0;
    oracle::for_each_walk(
        g, i, K,
        [](const WalkRecord&, VertexId) { return true; },
        [&](const WalkRecord& w) {
            if (w.length() == 0) return true;
            const bool seen_j = std::find(w.vertices.begin(), w.vertices.end(), j) != w.vertices.end();
            if (seen_j && w.last() == i) {
                acc += std::pow(t, static_cast<double>(w.length())) * w.weight;
                return false;
            }
            return true;
        });
    return {acc, oracle::walk_tail_bound(t, rho, K, g.order())};
}

/// Lower and upper envelopes of the truncated commute weight built from
/// hitting walks, plus the exact split sum over pairs with len_1 + len_2 <= K.
struct CommuteSandwich {
    double lower = 0.0;  ///< H_{K/2}(i->j) H_{K/2}(j->i)
    double split = 0.0;  ///< sum over a + b <= K of h_a(i->j) h_b(j->i)
    double upper = 0.0;  ///< H_K(i->j) H_K(j->i)
};

inline CommuteSandwich commute_cycle_sandwich(const Graph& g, double t, VertexId i, VertexId j, int K) {
    const auto hij = hitting_profile(g, t, i, j, K);
    const auto hji = hitting_profile(g, t, j, i, K);
    CommuteSandwich out;
    out.lower = oracle::profile_total(hij, K / 2) * oracle::profile_total(hji, K / 2);
    out.upper = oracle::profile_total(hij, K) * oracle::profile_total(hji, K);
    for (int a = 0; a <= K; ++a) {
        for (int b = 0; a + b <= K; ++b) out.split += hij[static_cast<std::size_t>(a)] * hji[static_cast<std::size_t>(b)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cycles avoiding a vertex, at t = 1/rho

/// c^{i(j)}: cycles at i made of a walk from i to a marked vertex k that avoids
/// j, followed by a hitting walk from k back to i. c_jump^{i(j)}: the same with
/// the first edge of the second leg replaced by a jump k -> q weighted by
/// pattern(k, q).
struct AvoidingCycles {
    double cycles = 0.0;
    double jump_cycles = 0.0;
    TruncationBound cycles_bound;
    TruncationBound jump_bound;
};

namespace oracle {

struct LegSums {
    Vector first;   ///< walks i -> k avoiding j (index k, zero at j)
    Vector second;  ///< hitting walks k -> i (index k, one at i)
    double first_tail = 0.0;
    double second_tail = 0.0;
};

inline AvoidingCycles combine_legs(const LegSums& legs, const Matrix& pattern, Index j, int cap) {
    const Index n = legs.first.size();
    AvoidingCycles out;
    double tail_c = 0.0;
    double tail_jump = 0.0;
    for (Index k = 0; k < n; ++k) {
        if (k == j) continue;
        const double w1 = legs.first(k);
        out.cycles += w1 * legs.second(k);
        tail_c += legs.first_tail * (legs.second(k) + legs.second_tail) + w1 * legs.second_tail;
        for (Index q = 0; q < n; ++q) {
            if (pattern(k, q) == 0.0) continue;
            out.jump_cycles += w1 * pattern(k, q) * legs.second(q);
            tail_jump +=
                pattern(k, q) * (legs.first_tail * (legs.second(q) + legs.second_tail) + w1 * legs.second_tail);
        }
    }
    out.cycles_bound = {cap, tail_c};
    out.jump_bound = {cap, tail_jump};
    return out;
}

/// Envelopes for the two legs from the spectral radii of the vertex-deleted matrices.
inline void leg_tails(const Matrix& a, double rho, Index i, Index j, int cap, LegSums& legs) {
    const double r1 = submatrix_spectral_radius(a, j) / rho;
    const double r2 = submatrix_spectral_radius(a, i) / rho;
    legs.first_tail = std::pow(r1, cap + 1) / (1.0 - r1);
    const double entry = linalg::remove_entry(a.col(i), i).norm() / rho;
    legs.second_tail = std::pow(r2, cap) / (1.0 - r2) * entry;
}

}  // namespace oracle

/// Both legs enumerated walk by walk, each leg capped at K edges.
inline AvoidingCycles enumerate_avoiding_cycles(const Graph& g, VertexId i, VertexId j, int K, const Matrix& pattern) {
    const Matrix a = build_adjacency(g);
    const double rho = perron(a).rho;
    const double t = 1.0 / rho;
    const Index n = a.rows();
    oracle::LegSums legs{Vector::Zero(n), Vector::Zero(n), 0.0, 0.0};
    oracle::for_each_walk(
        g, i, K, [&](const WalkRecord&, VertexId v) { return v != j; },
        [&](const WalkRecord& w) {
            legs.first(static_cast<Index>(w.last())) += std::pow(t, static_cast<double>(w.length())) * w.weight;
            return true;
        });
    for (VertexId k = 0; k < g.order(); ++k) {
        legs.second(static_cast<Index>(k)) = oracle::profile_total(hitting_profile(g, t, k, i, K), K);
    }
    oracle::leg_tails(a, rho, static_cast<Index>(i), static_cast<Index>(j), K, legs);
    return oracle::combine_legs(legs, pattern, static_cast<Index>(j), K);
}

/// Same sets summed length by length through matrix-vector products (any K).
inline AvoidingCycles avoiding_cycles_by_powers(const Matrix& a, Index i, Index j, int K, const Matrix& pattern) {
    const double rho = perron(a).rho;
    const Index n = a.rows();
    oracle::LegSums legs{Vector::Zero(n), Vector::Zero(n), 0.0, 0.0};

    Matrix without_j = a / rho;
    without_j.row(j).setZero();
    without_j.col(j).setZero();
    Vector v = Vector::Unit(n, i);
    for (int m = 0; m <= K; ++m) {
        legs.first += v;
        v = without_j.transpose() * v;
    }

    Matrix without_i = a / rho;
    without_i.row(i).setZero();
    without_i.col(i).setZero();
    Vector h = a.col(i) / rho;
    h(i) = 0.0;
    for (int m = 1; m <= K; ++m) {
        legs.second += h;
        h = without_i * h;
    }
    legs.second(i) = 1.0;

    oracle::leg_tails(a, rho, i, j, K, legs);
    return oracle::combine_legs(legs, pattern, j, K);
}

// ---------------------------------------------------------------------------
// Property checks. These report; they never throw on a failed property.

struct Triple {
    VertexId i = 0;
    VertexId j = 0;
    VertexId k = 0;
    double defect = 0.0;
    bool separator = false;
};

struct MetricReport {
    double max_asymmetry = 0.0;
    double max_abs_diagonal = 0.0;
    double min_off_diagonal = 0.0;
    double max_triangle_excess = 0.0;  ///< max of d(i,k) - d(i,j) - d(j,k)
    double slack = 0.0;

    bool symmetric() const { return max_asymmetry == 0.0; }
    bool zero_diagonal() const { return max_abs_diagonal == 0.0; }
    bool positive() const { return min_off_diagonal > 0.0; }
    bool triangle() const { return max_triangle_excess <= slack; }
    bool passed() const { return symmetric() && zero_diagonal() && positive() && triangle(); }
};

/// Exact symmetry and zero diagonal; triangle inequality up to slack * max(1, max d).
inline MetricReport check_metric(const Matrix& d, double slack = 1e-10) {
    const Index n = d.rows();
    MetricReport r;
    r.slack = slack * std::max(1.0, linalg::max_abs(d));
    r.max_asymmetry = linalg::max_abs(d - d.transpose());
    r.max_abs_diagonal = d.diagonal().cwiseAbs().maxCoeff();
    r.min_off_diagonal = HUGE_VAL;
    r.max_triangle_excess = -HUGE_VAL;
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < n; ++k) {
            if (i != k) r.min_off_diagonal = std::min(r.min_off_diagonal, d(i, k));
            for (Index j = 0; j < n; ++j) {
                r.max_triangle_excess = std::max(r.max_triangle_excess, d(i, k) - d(i, j) - d(j, k));
            }
        }
    }
    return r;
}

/// d(i,j) + d(j,k) - d(i,k).
inline double geodetic_defect(const Matrix& d, Index i, Index j, Index k) { return d(i, j) + d(j, k) - d(i, k); }

struct GeodeticReport {
    std::size_t triples = 0;
    std::vector<Triple> mismatches;  ///< classification disagrees with separates()
    std::vector<Triple> dead_zone;   ///< defect between the two thresholds
    double max_separator_defect = 0.0;
    double min_nonseparator_defect = HUGE_VAL;

    bool passed() const { return mismatches.empty() && dead_zone.empty(); }
};

/// Two-sided check of "d(i,j) + d(j,k) = d(i,k) iff j separates i and k" over
/// all triples of distinct vertices. Thresholds scale with max(1, max d).
inline GeodeticReport check_geodetic(const Matrix& d, const Graph& g, double eps = 1e-9, double delta = 1e-6) {
    const auto n = g.order();
    const double scale = std::max(1.0, linalg::max_abs(d));
    GeodeticReport r;
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId k = 0; k < n; ++k) {
            if (k == i) continue;
            for (VertexId j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                ++r.triples;
                const double defect = std::abs(
                    geodetic_defect(d, static_cast<Index>(i), static_cast<Index>(j), static_cast<Index>(k)));
                const bool sep = separates(g, j, i, k);
                const Triple tr{i, j, k, defect, sep};
                if (sep) {
                    r.max_separator_defect = std::max(r.max_separator_defect, defect);
                } else {
                    r.min_nonseparator_defect = std::min(r.min_nonseparator_defect, defect);
                }
                if (defect <= eps * scale) {
                    if (!sep) r.mismatches.push_back(tr);
                } else if (defect >= delta * scale) {
                    if (sep) r.mismatches.push_back(tr);
                } else {
                    r.dead_zone.push_back(tr);
                }
            }
        }
    }
    return r;
}

struct TransitionReport {
    /// max over triples of (s_ij s_jk - s_ik s_jj) / (s_ik s_jj); should be <= tol
    double max_violation = -HUGE_VAL;
    double tolerance = 1e-12;

    bool passed() const { return max_violation <= tolerance; }
};

/// s_ij s_jk <= s_ik s_jj for all triples (i = k included).
inline TransitionReport check_transition(const Matrix& s, double tol = 1e-12) {
    const Index n = s.rows();
    TransitionReport r;
    r.tolerance = tol;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            for (Index k = 0; k < n; ++k) {
                const double rhs = s(i, k) * s(j, j);
                r.max_violation = std::max(r.max_violation, (s(i, j) * s(j, k) - rhs) / rhs);
            }
        }
    }
    return r;
}

/// Two-sided check of "s_ij s_jk = s_ik s_jj iff j separates i and k" using the
/// relative gap 1 - s_ij s_jk / (s_ik s_jj).
inline GeodeticReport check_bottleneck(const Matrix& s, const Graph& g, double eps = 1e-9, double delta = 1e-6) {
    const auto n = g.order();
    GeodeticReport r;
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId k = 0; k < n; ++k) {
            if (k == i) continue;
            for (VertexId j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                ++r.triples;
                const auto I = static_cast<Index>(i), J = static_cast<Index>(j), K = static_cast<Index>(k);
                const double gap = std::abs(1.0 - s(I, J) * s(J, K) / (s(I, K) * s(J, J)));
                const bool sep = separates(g, j, i, k);
                const Triple tr{i, j, k, gap, sep};
                if (sep) {
                    r.max_separator_defect = std::max(r.max_separator_defect, gap);
                } else {
                    r.min_nonseparator_defect = std::min(r.min_nonseparator_defect, gap);
                }
                if (gap <= eps) {
                    if (!sep) r.mismatches.push_back(tr);
                } else if (gap >= delta) {
                    if (sep) r.mismatches.push_back(tr);
                } else {
                    r.dead_zone.push_back(tr);
                }
            }
        }
    }
    return r;
}

struct PsdReport {
    double min_eigenvalue = 0.0;
    double floor = 0.0;

    bool passed() const { return min_eigenvalue >= floor; }
};

/// Smallest eigenvalue of -1/2 J D J with J = I - 11^T/n; a squared Euclidean
/// D gives a PSD matrix. The floor scales with max(1, max d).
inline PsdReport check_psd_centered(const Matrix& d, double floor = -1e-9) {
    const Index n = d.rows();
    const Matrix j = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
    const Matrix gram = -0.5 * j * d * j;
    return {linalg::smallest_eigenvalue(linalg::symmetrized(gram)), floor * std::max(1.0, linalg::max_abs(d))};
}

}  // namespace walkdist
