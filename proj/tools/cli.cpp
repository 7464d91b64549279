#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "walkdist/verify.hpp"
#include "walkdist/walkdist.hpp"

namespace walkdist::cli {
namespace {

using nlohmann::json;

/// Bad flag combinations and unusable values; maps to exit 2.
class UsageError : public Error {
public:
    using Error::Error;
};

json number_or_null(std::optional<double> x) {
    if (!x || !std::isfinite(*x)) return nullptr;
    return *x;
}

std::string opt_text(std::optional<double> x) { return x ? format_double(*x) : "NA"; }

/// Writes to `path` through a temporary sibling and a rename, or to `out` if path is empty.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp-" + std::to_string(std::random_device{}());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot write '" + tmp.string() + "'");
        f << content;
        f.close();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw UsageError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw UsageError("cannot move output into place at '" + path + "'");
    }
}

Graph load_graph(const std::string& path, std::ostream& err) {
    auto parsed = read_edge_list_file(path);
    for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
    parsed.graph.require_connected();
    return std::move(parsed.graph);
}

std::vector<std::pair<Index, Index>> parse_pairs(const std::string& text, const Graph& g) {
    std::vector<std::pair<Index, Index>> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("pair '" + item + "' must look like a:b");
        const auto a = g.find(item.substr(0, colon));
        const auto b = g.find(item.substr(colon + 1));
        if (!a || !b) throw UsageError("pair '" + item + "' names an unknown vertex");
        out.emplace_back(static_cast<Index>(*a), static_cast<Index>(*b));
    }
    if (out.empty()) throw UsageError("--pairs is empty");
    return out;
}

// ---------------------------------------------------------------------------
// dist

struct DistOptions {
    std::string metric;
    std::string input;
    std::string output;
    std::string format = "csv";
    std::string pairs;
    std::optional<double> alpha;
    std::optional<double> t;
    std::optional<double> m;
    std::optional<double> beta;
    std::optional<double> theta_infinity;
};

struct DistResult {
    DistanceMatrix d;
    double rho = 0.0;
    std::optional<double> alpha;
    std::optional<double> t;
    std::optional<double> theta;
};

DistResult compute(const Graph& input, const DistOptions& o) {
    const auto family = parse_metric_family(o.metric);
    if (!family) throw UsageError("unknown metric '" + o.metric + "'");
    const bool takes_t = *family == MetricFamily::walk || *family == MetricFamily::plain_walk;
    const bool ewalk_like = *family == MetricFamily::ewalk || *family == MetricFamily::long_ewalk;
    if (o.alpha && o.t) throw UsageError("--alpha and --t are mutually exclusive");
    if (o.t && !takes_t) throw UsageError("--t applies only to walk and plain-walk");
    if (o.alpha && !is_parametric(*family)) throw UsageError("--alpha does not apply to " + o.metric);
    if (is_parametric(*family) && !o.alpha && !o.t) throw UsageError(o.metric + " needs --alpha" + (takes_t ? " or --t" : ""));
    if (o.alpha && !(*o.alpha > 0.0 && std::isfinite(*o.alpha))) throw UsageError("--alpha must be positive and finite");
    if (o.t && !(*o.t > 0.0)) throw UsageError("--t must be positive");
    if (o.beta && *family != MetricFamily::ewalk) throw UsageError("--beta applies only to e-walk");
    if (o.beta && !(*o.beta > 0.0)) throw UsageError("--beta must be positive");
    if (o.theta_infinity && !ewalk_like) throw UsageError("--theta-infinity applies only to e-walk and long-ewalk");

    const Graph g = o.m ? balance_graph(input, *o.m).result : input;
    const Matrix a = build_adjacency(g);
    DistResult r;
    r.rho = perron(a).rho;

    double alpha = o.alpha.value_or(0.0);
    if (o.t) alpha = ParamPoint::from_t(*o.t, r.rho, g.order()).alpha;

    switch (*family) {
        case MetricFamily::shortest_path: r.d = shortest_path_matrix(g); break;
        case MetricFamily::weighted_shortest_path: r.d = weighted_shortest_path_matrix(g); break;
        case MetricFamily::walk: r.d = walk_distance(a, alpha); break;
        case MetricFamily::plain_walk: r.d = plain_walk_distance(a, alpha); break;
        case MetricFamily::forest: r.d = forest_distance(g, alpha); break;
        case MetricFamily::log_forest: r.d = log_forest_distance(g, alpha); break;
        case MetricFamily::ewalk: {
            const double th = o.theta_infinity.value_or(theta_infinity(g));
            const ThetaSchedule schedule{th, o.beta.value_or(default_theta_beta(th))};
            r.d = ewalk_distance(g, alpha, schedule);
            break;
        }
        case MetricFamily::long_walk: r.d = long_walk_distance(g); break;
        case MetricFamily::long_ewalk: {
            const double th = o.theta_infinity.value_or(theta_infinity(g));
            r.d = long_ewalk_distance(g, th);
            r.theta = th;
            break;
        }
        case MetricFamily::resistance: r.d = resistance_distance(g); break;
    }
    if (r.d.param) {
        r.alpha = r.d.param->alpha;
        if (r.d.param->t > 0.0) r.t = r.d.param->t;
        if (r.d.param->theta > 0.0) r.theta = r.d.param->theta;
    }
    if (!r.d.values.allFinite()) throw NumericalError("distance matrix has non-finite entries");
    return r;
}

std::string render_dist(const Graph& g, const DistOptions& o, const DistResult& r) {
    const auto& labels = g.labels();
    const auto n = g.order();
    if (o.format == "json") {
        json meta{{"rho", r.rho},
                  {"alpha", number_or_null(r.alpha)},
                  {"t", number_or_null(r.t)},
                  {"theta", number_or_null(r.theta)},
                  {"metric", o.metric},
                  {"n", n}};
        if (o.m) meta["m"] = *o.m;
        json doc{{"labels", labels}, {"meta", meta}};
        if (o.pairs.empty()) {
            json rows = json::array();
            for (Index i = 0; i < r.d.size(); ++i) {
                json row = json::array();
                for (Index j = 0; j < r.d.size(); ++j) row.push_back(r.d(i, j));
                rows.push_back(row);
            }
            doc["matrix"] = rows;
        } else {
            json pairs = json::array();
            for (auto [i, j] : parse_pairs(o.pairs, g)) {
                pairs.push_back({{"i", labels[static_cast<std::size_t>(i)]},
                                 {"j", labels[static_cast<std::size_t>(j)]},
                                 {"distance", r.d(i, j)}});
            }
            doc["pairs"] = pairs;
        }
        return doc.dump(2) + "\n";
    }
    std::string out = "# metric=" + o.metric + " n=" + std::to_string(n) + " rho=" + format_double(r.rho) +
                      " alpha=" + opt_text(r.alpha) + " t=" + opt_text(r.t) + " theta=" + opt_text(r.theta) + "\n";
    if (o.pairs.empty()) return out + matrix_to_csv(labels, r.d.values);
    out += "i,j,distance\n";
    for (auto [i, j] : parse_pairs(o.pairs, g)) {
        out += labels[static_cast<std::size_t>(i)] + "," + labels[static_cast<std::size_t>(j)] + "," +
               format_double(r.d(i, j)) + "\n";
    }
    return out;
}

int cmd_dist(const DistOptions& o, std::ostream& out, std::ostream& err) {
    if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
    const Graph g = load_graph(o.input, err);
    const auto r = compute(g, o);
    emit(o.output, render_dist(g, o, r), out);
    return kOk;
}

// ---------------------------------------------------------------------------
// table-p4

int cmd_table_p4(const std::string& sidecar, std::ostream& out) {
    const auto rows = p4_rows();
    std::ostringstream table;
    std::ostringstream csv;
    csv << "metric,column,computed,published,pass\n";
    table << std::left << std::setw(28) << "metric" << std::right << std::setw(18) << "d12/d23" << std::setw(18)
          << "(d12+d23)/d13" << std::setw(18) << "d14/d13" << '\n';
    bool all = true;
    for (const auto& row : rows) {
        const auto cells = p4_cells(row);
        table << std::left << std::setw(28) << row.name << std::right;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(2) << cells[c].computed << " (" << cells[c].published << ") "
                 << (cells[c].pass ? "ok" : "FAIL");
            table << std::setw(18) << cell.str();
            csv << '"' << row.name << "\"," << c + 1 << ',' << format_double(cells[c].computed) << ','
                << format_double(cells[c].published) << ',' << (cells[c].pass ? "true" : "false") << '\n';
            all = all && cells[c].pass;
        }
        table << '\n';
    }
    table << "long walk ratios are exactly (1+sqrt(5))/2 = " << format_double(std::numbers::phi) << '\n';
    table << "tolerance +/-" << kP4Tolerance << "; " << (all ? "all 21 cells pass" : "some cells FAIL") << '\n';
    if (!sidecar.empty()) emit(sidecar, csv.str(), out);
    out << table.str();
    return all ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// verify

json report_json(const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"measured", number_or_null(c.measured)},
                          {"tolerance", number_or_null(c.tolerance)},
                          {"pass", c.pass},
                          {"informational", c.informational}});
    }
    return {{"suite", r.suite}, {"passed", r.passed()}, {"failures", r.failures()}, {"checks", checks}};
}

int cmd_verify(const std::string& suite, const std::string& input, const std::string& output, std::ostream& out,
               std::ostream& err) {
    const Graph g = load_graph(input, err);
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = {"oracles", "equivalences", "limits", "properties"};
    } else if (suite == "oracles" || suite == "equivalences" || suite == "limits" || suite == "properties") {
        suites = {suite};
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }
    json doc{{"input", input}, {"suites", json::array()}};
    bool ok = true;
    for (const auto& s : suites) {
        const auto report = run_suite(s, g);
        ok = ok && report.passed();
        doc["suites"].push_back(report_json(report));
        err << s << ": " << report.checks.size() << " checks, " << report.failures() << " failed\n";
    }
    doc["passed"] = ok;
    emit(output, doc.dump(2) + "\n", out);
    return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
    std::string metric = "walk";
    std::string input;
    std::string output;
    double from = 1e-4;
    double to = 1e4;
    int per_decade = 1;
    std::optional<double> beta;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    if (!(o.from > 0.0) || !(o.to > o.from)) throw UsageError("need 0 < --from < --to");
    if (o.per_decade < 1) throw UsageError("--per-decade must be at least 1");
    const Graph g = load_graph(o.input, err);
    const auto family = parse_metric_family(o.metric);
    if (!family || (*family != MetricFamily::walk && *family != MetricFamily::log_forest &&
                    *family != MetricFamily::ewalk)) {
        throw UsageError("sweep supports walk, log-forest and e-walk");
    }
    if (o.beta && *family != MetricFamily::ewalk) throw UsageError("--beta applies only to e-walk");

    std::vector<double> alphas;
    const double lo = std::log10(o.from);
    const double hi = std::log10(o.to);
    const int steps = static_cast<int>(std::lround((hi - lo) * o.per_decade));
    for (int k = 0; k <= steps; ++k) alphas.push_back(std::pow(10.0, lo + (hi - lo) * k / std::max(steps, 1)));

    Matrix small_ref;
    Matrix large_ref;
    std::string small_name;
    std::string large_name;
    std::function<DistanceMatrix(double)> eval;
    const auto n = g.order();
    if (*family == MetricFamily::ewalk) {
        const double th = theta_infinity(g);
        const ThetaSchedule schedule{th, o.beta.value_or(default_theta_beta(th))};
        small_ref = weighted_shortest_path_matrix(g).values;
        large_ref = long_ewalk_distance(g, schedule.theta_infinity).values;
        small_name = "weighted_shortest_path";
        large_name = "long_ewalk";
        eval = [&g, schedule](double a) { return ewalk_distance(g, a, schedule); };
    } else {
        small_ref = shortest_path_matrix(g).values;
        if (*family == MetricFamily::walk) {
            large_ref = long_walk_distance(g).values;
            large_name = "long_walk";
            eval = [&g](double a) { return walk_distance(g, a); };
        } else {
            large_ref = resistance_distance(g).values;
            large_name = "resistance";
            eval = [&g](double a) { return log_forest_distance(g, a); };
        }
        small_name = "shortest_path";
    }

    std::string csv = "alpha,theta,deviation_" + small_name + ",deviation_" + large_name + ",error\n";
    for (double a : alphas) {
        std::string theta = "nan", d_small = "nan", d_large = "nan", error;
        try {
            const auto d = eval(a);
            theta = d.param ? format_double(d.param->theta) : format_double(walk_theta(a, n));
            d_small = format_double(linalg::max_abs(d.values - small_ref));
            d_large = format_double(linalg::max_abs(d.values - large_ref));
        } catch (const Error& e) {
            error = e.what();
        }
        csv += format_double(a) + "," + theta + "," + d_small + "," + d_large + ",\"" + error + "\"\n";
    }
    emit(o.output, csv, out);
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Walk, long walk, epsilon-walk, forest and resistance distances on weighted multigraphs", "walkdist"};
    app.require_subcommand(1);

    DistOptions dist;
    auto* d = app.add_subcommand("dist", "Compute a distance matrix");
    d->add_option("--metric", dist.metric, "shortest-path | weighted-shortest-path | walk | plain-walk | forest | "
                                           "log-forest | e-walk | long-walk | long-ewalk | resistance")
        ->required();
    d->add_option("--input", dist.input, "Edge-list file")->required();
    d->add_option("--output", dist.output, "Output path (default: stdout)");
    d->add_option("--format", dist.format, "csv | json")->capture_default_str();
    d->add_option("--pairs", dist.pairs, "Comma-separated vertex pairs a:b");
    d->add_option("--alpha", dist.alpha, "Metric parameter alpha > 0");
    d->add_option("--t", dist.t, "Walk parameter 0 < t < 1/rho (walk, plain-walk)");
    d->add_option("--m", dist.m, "Evaluate on the loop-balanced graph with degree level m");
    d->add_option("--beta", dist.beta, "e-walk theta schedule constant (default sqrt(theta_inf))");
    d->add_option("--theta-infinity", dist.theta_infinity, "Override theta at alpha = infinity (e-walk, long-ewalk)");

    std::string sidecar;
    auto* tp = app.add_subcommand("table-p4", "Reproduce the shape ratios of several metrics on the path P4");
    tp->add_option("--sidecar", sidecar, "Also write full-precision values as CSV");

    std::string suite;
    std::string vinput;
    std::string voutput;
    auto* v = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
    v->add_option("--suite", suite, "oracles | equivalences | limits | properties | all")->required();
    v->add_option("--input", vinput, "Edge-list file")->required();
    v->add_option("--output", voutput, "Report path (default: stdout)");

    SweepOptions sweep;
    auto* s = app.add_subcommand("sweep", "Deviation from both limit references along a log-spaced alpha grid");
    s->add_option("--metric", sweep.metric, "walk | log-forest | e-walk")->capture_default_str();
    s->add_option("--input", sweep.input, "Edge-list file")->required();
    s->add_option("--output", sweep.output, "Output path (default: stdout)");
    s->add_option("--from", sweep.from, "Smallest alpha")->capture_default_str();
    s->add_option("--to", sweep.to, "Largest alpha")->capture_default_str();
    s->add_option("--per-decade", sweep.per_decade, "Grid points per decade")->capture_default_str();
    s->add_option("--beta", sweep.beta, "e-walk theta schedule constant (default sqrt(theta_inf))");

    std::vector<std::string> storage{"walkdist"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*d) return cmd_dist(dist, out, err);
        if (*tp) return cmd_table_p4(sidecar, out);
        if (*v) return cmd_verify(suite, vinput, voutput, out, err);
        if (*s) return cmd_sweep(sweep, out, err);
    } catch (const InvalidGraph& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace walkdist::cli
