#pragma once

// Verification suites shared by the CLI and the acceptance binary. Each suite
// evaluates one graph and returns a flat list of measured checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "walkdist/ewalk_metrics.hpp"
#include "walkdist/limit_metrics.hpp"
#include "walkdist/oracle.hpp"
#include "walkdist/transforms.hpp"
#include "walkdist/walk_metrics.hpp"

namespace walkdist {

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool informational = false;  ///< reported but never counted as a failure
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    /// Passes iff measured <= tolerance (NaN fails).
    Check& expect_at_most(std::string name, double measured, double tolerance) {
        checks.push_back({std::move(name), measured, tolerance, measured <= tolerance, false});
        return checks.back();
    }

    Check& expect_true(std::string name, bool ok, double measured = 0.0) {
        checks.push_back({std::move(name), measured, 0.0, ok, false});
        return checks.back();
    }

    void note(std::string name, double measured) { checks.push_back({std::move(name), measured, 0.0, true, true}); }

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || c.informational; });
    }

    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass && !c.informational; }));
    }

    void append(const Report& other, const std::string& prefix = {}) {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
};

/// max |x - y| / max(max |x|, max |y|); zero when both vanish.
inline double relative_deviation(const Matrix& x, const Matrix& y) {
    const double scale = std::max(linalg::max_abs(x), linalg::max_abs(y));
    if (scale == 0.0) return 0.0;
    return linalg::max_abs(x - y) / scale;
}

inline double relative_deviation(double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

// ---------------------------------------------------------------------------
// Oracles

struct OracleOptions {
    std::array<double, 2> t_fractions{0.3, 0.7};  ///< t = fraction / rho
    int explicit_cap = 12;                        ///< longest enumerated walk
    double explicit_budget = 5e4;                 ///< rough walk count per enumeration
    std::size_t explicit_max_order = 5;
    int power_cap = 60;
};

namespace detail {

/// Largest K <= cap with about budget walks from one vertex of arc degree delta.
inline int explicit_length(const Graph& g, const OracleOptions& opt) {
    std::size_t delta = 1;
    for (const auto& out : oracle::arcs(g)) delta = std::max(delta, out.size());
    if (delta <= 1) return opt.explicit_cap;
    const int k = static_cast<int>(std::floor(std::log(opt.explicit_budget) / std::log(static_cast<double>(delta))));
    return std::clamp(k, 1, opt.explicit_cap);
}

/// Truncated sums never exceed the closed form; the gap is bounded by the tail.
inline void expect_within_bound(Report& r, const std::string& name, double closed, const OracleValue& oracle) {
    const double slack = 1e-12 * std::max(1.0, std::abs(closed));
    const double gap = closed - oracle.value;
    r.expect_at_most(name + " (truncated sum <= closed form)", -gap, slack);
    r.expect_at_most(name + " (gap <= tail bound)", gap, oracle.bound.tail + slack);
}

/// Leg cap that pushes both avoiding-cycle tails below ~1e-13.
inline int avoiding_cycle_cap(const Matrix& a, double rho, Index i, Index j) {
    const double r = std::max(submatrix_spectral_radius(a, i), submatrix_spectral_radius(a, j)) / rho;
    const int k = static_cast<int>(std::ceil(std::log(1e-13 * (1.0 - r)) / std::log(r)));
    return std::clamp(k, 50, 200000);
}

}  // namespace detail

/// Closed forms of walk weights, hitting weights and commute weights against
/// truncated walk sums, plus the avoiding-cycle expressions of the long walk
/// and long epsilon-walk distances.
inline Report verify_oracles(const Graph& g, const OracleOptions& opt = {}) {
    g.require_connected();
    Report r{"oracles", {}};
    const Matrix a = build_adjacency(g);
    const auto sd = perron(a);
    const Index n = a.rows();
    const bool explicit_ok = g.order() <= opt.explicit_max_order;
    const int ke = detail::explicit_length(g, opt);

    for (double frac : opt.t_fractions) {
        const double t = frac / sd.rho;
        const std::string tag = "t=" + format_double(frac) + "/rho ";
        const Matrix rt = walk_weight_matrix(a, t, sd.rho).values;
        const auto hit = hitting_weight_matrix(a, t);
        double decomposition = 0.0;
        double commute_below_one = 0.0;
        double split_gap = 0.0;
        bool sandwich = true;
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                const auto vi = static_cast<VertexId>(i);
                const auto vj = static_cast<VertexId>(j);
                const std::string pair = "(" + g.label(vi) + "," + g.label(vj) + ")";
                detail::expect_within_bound(r, tag + "walk weight by powers " + pair, rt(i, j),
                                            walk_weight_by_powers(a, t, i, j, opt.power_cap));
                detail::expect_within_bound(r, tag + "hitting weight by powers " + pair, hit.entries(i, j),
                                            hitting_weight_by_powers(a, t, i, j, opt.power_cap));
                decomposition = std::max(decomposition, relative_deviation(rt(i, j), hit.entries(i, j) * rt(j, j)));
                if (i != j) commute_below_one = std::max(commute_below_one, hit.commute(i, j));
                if (!explicit_ok) continue;

                const auto walk_enum = enumerate_walk_weight(g, t, vi, vj, ke);
                const auto walk_pow = walk_weight_by_powers(a, t, i, j, ke);
                r.expect_at_most(tag + "walk enumeration = powers " + pair,
                                 relative_deviation(walk_enum.value, walk_pow.value), 1e-12);
                detail::expect_within_bound(r, tag + "walk weight by enumeration " + pair, rt(i, j), walk_enum);

                const auto hit_enum = enumerate_hitting_weight(g, t, vi, vj, ke);
                const auto hit_pow = hitting_weight_by_powers(a, t, i, j, ke);
                r.expect_at_most(tag + "hitting enumeration = powers " + pair,
                                 relative_deviation(hit_enum.value, hit_pow.value), 1e-12);
                detail::expect_within_bound(r, tag + "hitting weight by enumeration " + pair, hit.entries(i, j),
                                            hit_enum);

                if (i == j) continue;
                const auto cc = enumerate_commute_cycle_weight(g, t, vi, vj, ke);
                detail::expect_within_bound(r, tag + "commute weight by enumeration " + pair, hit.commute(i, j), cc);
                const auto sw = commute_cycle_sandwich(g, t, vi, vj, ke);
                const double eps = 1e-12 * std::max(1.0, sw.upper);
                split_gap = std::max(split_gap, relative_deviation(sw.split, cc.value));
                sandwich = sandwich && sw.lower <= cc.value + eps && cc.value <= sw.upper + eps &&
                           sw.upper <= hit.commute(i, j) + eps;
            }
        }
        r.expect_at_most(tag + "walk weight = hitting weight x diagonal", decomposition, 1e-10);
        r.expect_true(tag + "commute weight < 1", commute_below_one < 1.0, commute_below_one);
        if (explicit_ok) {
            r.expect_at_most(tag + "commute enumeration = split hitting pairs", split_gap, 1e-12);
            r.expect_true(tag + "commute sandwich H_{K/2}^2 <= C_K <= H_K^2 <= closed", sandwich);
        }
    }

    // Avoiding cycles at t = 1/rho.
    const Matrix lw = long_walk_distance(a).values;
    const Matrix pattern = edge_multiplicity_matrix(g);
    const double th = theta_infinity(a, pattern);
    const Matrix lew = long_ewalk_distance(a, pattern, th).values;
    const double nrho = static_cast<double>(n) * sd.rho;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const std::string pair = "(" + g.label(static_cast<VertexId>(i)) + "," +
                                     g.label(static_cast<VertexId>(j)) + ")";
            const int cap = detail::avoiding_cycle_cap(a, sd.rho, i, j);
            const auto ij = avoiding_cycles_by_powers(a, i, j, cap, pattern);
            const auto ji = avoiding_cycles_by_powers(a, j, i, cap, pattern);
            detail::expect_within_bound(
                r, "long walk from avoiding cycles by powers " + pair, lw(i, j),
                {(ij.cycles + ji.cycles) / nrho, {cap, (ij.cycles_bound.tail + ji.cycles_bound.tail) / nrho}});
            const double jscale = th / (2.0 * sd.rho);
            detail::expect_within_bound(r, "long epsilon-walk from jump cycles by powers " + pair, lew(i, j),
                                        {(ij.jump_cycles + ji.jump_cycles) * jscale,
                                         {cap, (ij.jump_bound.tail + ji.jump_bound.tail) * jscale}});
            if (!explicit_ok) continue;
            const auto eij = enumerate_avoiding_cycles(g, static_cast<VertexId>(i), static_cast<VertexId>(j), ke, pattern);
            const auto eji = enumerate_avoiding_cycles(g, static_cast<VertexId>(j), static_cast<VertexId>(i), ke, pattern);
            const auto pij = avoiding_cycles_by_powers(a, i, j, ke, pattern);
            r.expect_at_most("avoiding cycles enumeration = powers " + pair,
                             std::max(relative_deviation(eij.cycles, pij.cycles),
                                      relative_deviation(eij.jump_cycles, pij.jump_cycles)),
                             1e-12);
            detail::expect_within_bound(
                r, "long walk from avoiding cycles by enumeration " + pair, lw(i, j),
                {(eij.cycles + eji.cycles) / nrho, {ke, (eij.cycles_bound.tail + eji.cycles_bound.tail) / nrho}});
            detail::expect_within_bound(r, "long epsilon-walk from jump cycles by enumeration " + pair, lew(i, j),
                                        {(eij.jump_cycles + eji.jump_cycles) * jscale,
                                         {ke, (eij.jump_bound.tail + eji.jump_bound.tail) * jscale}});
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Equivalences and identities

struct LongWalkRoute {
    std::string name;
    Matrix values;
};

/// Every implemented long walk route on one adjacency matrix.
inline std::vector<LongWalkRoute> long_walk_routes(const Matrix& a) {
    const Index n = a.rows();
    return {
        {"para-laplacian", long_walk_distance(a).values},
        {"stochastic similarity", long_walk_via_stochastic(a, StochasticForm::similarity).values},
        {"stochastic transition", long_walk_via_stochastic(a, StochasticForm::transition).values},
        {"row-scaled", long_walk_via_row_scaled(a).values},
        {"determinant", long_walk_via_determinant(a).values},
        {"g-inverse plus projector", long_walk_via_ginverse(a, GInverseKind::plus_projector).values},
        {"group inverse", long_walk_via_ginverse(a, GInverseKind::group_inverse).values},
        {"shifted g-inverse", long_walk_via_ginverse(a, GInverseKind::shifted, Vector::LinSpaced(n, 0.1, 0.9),
                                                     Vector::Constant(n, -0.4))
                                  .values},
        {"reduced form", long_walk_via_reduced(a, 0, n - 1).values},
    };
}

/// Worst pairwise relative deviation among the long walk routes.
inline double long_walk_route_spread(const Matrix& a) {
    const auto routes = long_walk_routes(a);
    double worst = 0.0;
    for (std::size_t x = 0; x < routes.size(); ++x) {
        for (std::size_t y = x + 1; y < routes.size(); ++y) {
            worst = std::max(worst, relative_deviation(routes[x].values, routes[y].values));
        }
    }
    return worst;
}

inline double resistance_formula_spread(const Graph& g) {
    const Index n = static_cast<Index>(g.order());
    const std::array<Matrix, 5> forms{
        resistance_distance(g, ResistanceFormula::principal_submatrix).values,
        resistance_distance(g, ResistanceFormula::cofactor).values,
        resistance_distance(g, ResistanceFormula::plus_jbar).values,
        resistance_distance(g, ResistanceFormula::group_inverse).values,
        resistance_distance(g, ResistanceFormula::reduced, 0, n - 1).values,
    };
    double worst = 0.0;
    for (std::size_t x = 0; x < forms.size(); ++x) {
        for (std::size_t y = x + 1; y < forms.size(); ++y) worst = std::max(worst, relative_deviation(forms[x], forms[y]));
    }
    return worst;
}

struct SpectralIdentities {
    double commute_at_rho = 0.0;       ///< max |c_ij(1/rho) - 1|
    double hitting_at_rho = 0.0;       ///< max relative |r_ij(1)(1/rho) - p_i/p_j|
    double para_laplacian_ratio = 0.0; ///< max relative |(Lambda_jj)^{-1}_i a_j - p_i/p_j|
};

inline SpectralIdentities spectral_identities(const Matrix& a) {
    const auto s = perron(a);
    const Index n = a.rows();
    const auto hit = hitting_weight_matrix_at_spectral_radius(a);
    const Matrix lam = para_laplacian(a, s.rho);
    SpectralIdentities out;
    for (Index j = 0; j < n; ++j) {
        const Vector x = linalg::LuSolver(linalg::remove_index(lam, j)).solve(linalg::remove_entry(a.col(j), j));
        for (Index i = 0; i < n; ++i) {
            if (i == j) continue;
            const double ratio = s.p(i) / s.p(j);
            out.commute_at_rho = std::max(out.commute_at_rho, std::abs(hit.commute(i, j) - 1.0));
            out.hitting_at_rho = std::max(out.hitting_at_rho, relative_deviation(hit.entries(i, j), ratio));
            out.para_laplacian_ratio =
                std::max(out.para_laplacian_ratio, relative_deviation(x(linalg::position_without(i, j)), ratio));
        }
    }
    return out;
}

struct EquivalenceOptions {
    std::vector<double> alphas{0.5, 1.0, 2.0, 5.0};
    std::vector<double> extra_levels{0.0, 3.0};  ///< m = m_min + extra
    double tolerance = 1e-9;
};

inline Report verify_equivalences(const Graph& g, const EquivalenceOptions& opt = {}) {
    g.require_connected();
    Report r{"equivalences", {}};
    const Matrix a = build_adjacency(g);
    const double m_min = max_weighted_degree(g);

    double eq_a = 0.0;
    for (double extra : opt.extra_levels) {
        const Graph balanced = balance_graph(g, m_min + extra).result;
        for (double alpha : opt.alphas) {
            eq_a = std::max(eq_a, relative_deviation(log_forest_distance(g, alpha).values,
                                                     walk_distance(balanced, alpha).values));
        }
    }
    r.expect_at_most("log forest = walk distance on balance graph", eq_a, opt.tolerance);

    double m_invariance = 0.0;
    double general = 0.0;
    const auto n = g.order();
    for (double alpha : opt.alphas) {
        m_invariance = std::max(m_invariance, relative_deviation(walk_distance(balance_graph(g, m_min).result, alpha).values,
                                                                 walk_distance(balance_graph(g, m_min + 3.0).result, alpha).values));
        // phi(w) = w e^alpha through the general balance A(alpha) = (m+1)^{-1}(m I - L_alpha)
        const double theta = walk_theta(alpha, n);
        const auto phi = [alpha](double w) { return w * std::exp(alpha); };
        const Matrix l_alpha = laplacian(g.with_weights([&](const EdgeRecord& e) { return phi(e.weight); }));
        const Matrix lf = log_forest_distance(g, phi, alpha, theta).values;
        for (double extra : opt.extra_levels) {
            const double m_alpha = l_alpha.diagonal().maxCoeff() + extra;
            general = std::max(general,
                               relative_deviation(lf, modified_walk_distance(general_balance(l_alpha, m_alpha), theta).values));
        }
    }
    r.expect_at_most("walk distance on balance graphs independent of m", m_invariance, opt.tolerance);
    r.expect_at_most("log forest (phi = w e^alpha) = modified walk on general balance", general, opt.tolerance);
    r.expect_at_most("resistance = long walk on balance graph",
                     relative_deviation(resistance_distance(g).values, long_walk_distance(balance_graph(g).result).values),
                     opt.tolerance);
    r.expect_at_most("long walk = resistance on similarity-transformed graph",
                     relative_deviation(long_walk_distance(g).values, resistance_distance(similarity_transform(g)).values),
                     opt.tolerance);
    r.expect_at_most("long walk routes agree", long_walk_route_spread(a), opt.tolerance);
    r.expect_at_most("resistance formulas agree", resistance_formula_spread(g), opt.tolerance);

    const auto ids = spectral_identities(a);
    r.expect_at_most("commute weight at 1/rho equals 1", ids.commute_at_rho, 1e-10);
    r.expect_at_most("hitting weight at 1/rho equals p_i/p_j", ids.hitting_at_rho, 1e-10);
    r.expect_at_most("para-laplacian solve equals p_i/p_j", ids.para_laplacian_ratio, 1e-10);

    r.expect_at_most("long epsilon-walk = long walk (multiplicity pattern)",
                     relative_deviation(long_ewalk_distance(g, theta_infinity(g)).values, long_walk_distance(g).values),
                     opt.tolerance);
    r.expect_at_most("long epsilon-walk = long walk (indicator pattern)",
                     relative_deviation(long_ewalk_distance(a, theta_infinity(a)).values, long_walk_distance(a).values),
                     opt.tolerance);
    return r;
}

// ---------------------------------------------------------------------------
// Limits

struct LimitOptions {
    std::vector<double> small_alphas{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> large_alphas{1e1, 1e2, 1e3, 1e4};
    double walk_cap = 1e-2;
    double ewalk_small_cap = 5e-2;
    double ewalk_large_cap = 1e-2;
};

namespace detail {

inline void expect_sweep(Report& r, const std::string& name, const std::vector<SweepPoint>& pts, double cap,
                         const Matrix& reference) {
    r.expect_true(name + ": deviation strictly decreasing", is_decreasing(pts));
    const double final_dev = pts.empty() ? HUGE_VAL : pts.back().deviation;
    r.expect_at_most(name + ": final deviation", final_dev, cap);
    const double scale = linalg::max_abs(reference);
    for (const auto& pt : pts) {
        r.note(name + ": relative deviation at alpha=" + format_double(pt.alpha),
               scale > 0.0 ? pt.deviation / scale : pt.deviation);
    }
}

}  // namespace detail

inline Report verify_limits(const Graph& g, const LimitOptions& opt = {}) {
    g.require_connected();
    Report r{"limits", {}};
    const auto sp = shortest_path_matrix(g);
    const auto lw = long_walk_distance(g);
    detail::expect_sweep(r, "walk -> shortest path", limit_sweep(MetricFamily::walk, g, opt.small_alphas, sp),
                         opt.walk_cap, sp.values);
    detail::expect_sweep(r, "walk -> long walk", limit_sweep(MetricFamily::walk, g, opt.large_alphas, lw),
                         opt.walk_cap, lw.values);

    const auto schedule = default_theta_schedule(g);
    detail::expect_sweep(r, "epsilon-walk -> weighted shortest path",
                         ewalk_limit_sweep(g, schedule, SweepDirection::to_zero, opt.small_alphas),
                         opt.ewalk_small_cap, weighted_shortest_path_matrix(g).values);
    const auto lew = long_ewalk_distance(g, schedule.theta_infinity);
    detail::expect_sweep(r, "epsilon-walk -> long epsilon-walk",
                         ewalk_limit_sweep(g, schedule, SweepDirection::to_infinity, opt.large_alphas),
                         opt.ewalk_large_cap, lew.values);
    r.expect_at_most("long epsilon-walk = long walk", relative_deviation(lew.values, lw.values), 1e-9);
    return r;
}

// ---------------------------------------------------------------------------
// Properties

/// One representative evaluation of each family, using the default parameters.
inline DistanceMatrix evaluate_family(MetricFamily family, const Graph& g) {
    switch (family) {
        case MetricFamily::shortest_path: return shortest_path_matrix(g);
        case MetricFamily::weighted_shortest_path: return weighted_shortest_path_matrix(g);
        case MetricFamily::walk: return walk_distance(g, 1.0);
        case MetricFamily::plain_walk: return plain_walk_distance(g, plain_walk_metric_alpha(build_adjacency(g)));
        case MetricFamily::forest: return forest_distance(g, 1.0);
        case MetricFamily::log_forest: return log_forest_distance(g, 2.0);
        case MetricFamily::ewalk: return ewalk_distance(g, 1.0, default_theta_schedule(g));
        case MetricFamily::long_walk: return long_walk_distance(g);
        case MetricFamily::long_ewalk: return long_ewalk_distance(g, theta_infinity(g));
        case MetricFamily::resistance: return resistance_distance(g);
    }
    throw std::invalid_argument("unknown metric family");
}

inline constexpr std::array<MetricFamily, 5> kGeodeticFamilies = {
    MetricFamily::walk, MetricFamily::ewalk, MetricFamily::log_forest, MetricFamily::long_walk,
    MetricFamily::resistance};

inline Report verify_properties(const Graph& g) {
    g.require_connected();
    Report r{"properties", {}};
    for (auto family : kAllMetricFamilies) {
        const auto m = check_metric(evaluate_family(family, g).values);
        r.expect_true(std::string(to_string(family)) + ": metric axioms", m.passed(), m.max_triangle_excess);
    }
    for (auto family : kGeodeticFamilies) {
        const auto geo = check_geodetic(evaluate_family(family, g).values, g);
        const std::string name(to_string(family));
        r.expect_true(name + ": geodetic iff separator", geo.mismatches.empty(),
                      static_cast<double>(geo.mismatches.size()));
        r.expect_true(name + ": no dead-zone triples", geo.dead_zone.empty(), static_cast<double>(geo.dead_zone.size()));
        r.note(name + ": largest separator defect", geo.max_separator_defect);
        if (geo.min_nonseparator_defect < HUGE_VAL) r.note(name + ": smallest non-separator defect", geo.min_nonseparator_defect);
    }

    const Matrix a = build_adjacency(g);
    const double rho = perron(a).rho;
    const std::array<std::pair<std::string, Matrix>, 2> proximities{{
        {"walk weights t=0.5/rho", walk_weight_matrix(a, 0.5 / rho, rho).values},
        {"forest matrix alpha=1", forest_matrix(laplacian(g), 1.0).values},
    }};
    for (const auto& [name, s] : proximities) {
        const auto tr = check_transition(s);
        r.expect_at_most(name + ": transition inequality", tr.max_violation, tr.tolerance);
        const auto bn = check_bottleneck(s, g);
        r.expect_true(name + ": bottleneck identity iff separator", bn.mismatches.empty() && bn.dead_zone.empty(),
                      static_cast<double>(bn.mismatches.size() + bn.dead_zone.size()));
    }

    for (auto family : {MetricFamily::long_walk, MetricFamily::resistance}) {
        const auto psd = check_psd_centered(evaluate_family(family, g).values);
        r.expect_at_most(std::string(to_string(family)) + ": double-centred matrix is PSD (negated min eigenvalue)",
                         -psd.min_eigenvalue, -psd.floor);
    }
    return r;
}

inline Report run_suite(std::string_view suite, const Graph& g) {
    if (suite == "oracles") return verify_oracles(g);
    if (suite == "equivalences") return verify_equivalences(g);
    if (suite == "limits") return verify_limits(g);
    if (suite == "properties") return verify_properties(g);
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace walkdist
