#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "walkdist/error.hpp"
#include "walkdist/linalg.hpp"

namespace walkdist {

using VertexId = std::size_t;

/// One edge of a multigraph. a == b is a loop. The weight is a conductance;
/// its reciprocal is the weighted length of the edge.
struct EdgeRecord {
    VertexId a = 0;
    VertexId b = 0;
    double weight = 1.0;

    bool is_loop() const { return a == b; }
    double length() const { return 1.0 / weight; }
    VertexId other(VertexId v) const { return v == a ? b : a; }
};

/// Undirected weighted multigraph with loops and parallel edges.
///
/// Vertices are identified by their position in `labels()` (declaration
/// order); every matrix produced from a graph is indexed the same way.
/// Connectivity is not required at construction; metric operations call
/// require_connected().
class Graph {
public:
    Graph(std::vector<std::string> labels, std::vector<EdgeRecord> edges)
        : labels_(std::move(labels)), edges_(std::move(edges)) {
        if (labels_.size() < 2) throw InvalidGraph("a graph needs at least 2 vertices");
        std::unordered_map<std::string, VertexId> seen;
        for (VertexId v = 0; v < labels_.size(); ++v) {
            if (!seen.emplace(labels_[v], v).second) {
                throw InvalidGraph("duplicate vertex label '" + labels_[v] + "'");
            }
        }
        for (const auto& e : edges_) {
            if (e.a >= labels_.size() || e.b >= labels_.size()) {
                throw InvalidGraph("edge endpoint out of range");
            }
            if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
                throw InvalidGraph("edge weights must be positive and finite");
            }
        }
    }

    /// Vertices labelled "1".."n".
    Graph(std::size_t n, std::vector<EdgeRecord> edges) : Graph(numbered_labels(n), std::move(edges)) {}

    std::size_t order() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(VertexId v) const { return labels_.at(v); }
    const std::vector<EdgeRecord>& edges() const { return edges_; }

    std::optional<VertexId> find(std::string_view label) const {
        for (VertexId v = 0; v < labels_.size(); ++v) {
            if (labels_[v] == label) return v;
        }
        return std::nullopt;
    }

    /// Connected components after deleting `removed` (if given); -1 marks the removed vertex.
    std::vector<long> components(std::optional<VertexId> removed = std::nullopt) const {
        const auto n = order();
        std::vector<std::vector<VertexId>> adj(n);
        for (const auto& e : edges_) {
            if (e.is_loop()) continue;
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        std::vector<long> comp(n, -2);
        if (removed) comp[*removed] = -1;
        long next = 0;
        for (VertexId s = 0; s < n; ++s) {
            if (comp[s] != -2) continue;
            comp[s] = next;
            std::queue<VertexId> todo;
            todo.push(s);
            while (!todo.empty()) {
                const auto u = todo.front();
                todo.pop();
                for (auto v : adj[u]) {
                    if (comp[v] == -2) {
                        comp[v] = next;
                        todo.push(v);
                    }
                }
            }
            ++next;
        }
        return comp;
    }

    bool is_connected() const {
        const auto comp = components();
        for (auto c : comp) {
            if (c != 0) return false;
        }
        return true;
    }

    void require_connected() const {
        if (!is_connected()) throw DisconnectedGraph();
    }

    /// Same vertices and edge structure; each weight replaced by f(edge).
    template <class F>
    Graph with_weights(F&& f) const {
        std::vector<EdgeRecord> edges = edges_;
        for (auto& e : edges) e.weight = f(std::as_const(e));
        return Graph(labels_, std::move(edges));
    }

    Graph with_added_edges(const std::vector<EdgeRecord>& extra) const {
        std::vector<EdgeRecord> edges = edges_;
        edges.insert(edges.end(), extra.begin(), extra.end());
        return Graph(labels_, std::move(edges));
    }

    static std::vector<std::string> numbered_labels(std::size_t n) {
        std::vector<std::string> out;
        out.reserve(n);
        for (std::size_t k = 1; k <= n; ++k) out.push_back(std::to_string(k));
        return out;
    }

private:
    std::vector<std::string> labels_;
    std::vector<EdgeRecord> edges_;
};

// ---------------------------------------------------------------------------
// Small named graphs

/// Path 1-2-...-n with the given edge weights (size n-1).
inline Graph make_path(const std::vector<double>& weights) {
    std::vector<EdgeRecord> edges;
    for (VertexId k = 0; k < weights.size(); ++k) edges.push_back({k, k + 1, weights[k]});
    return Graph(weights.size() + 1, std::move(edges));
}

inline Graph make_path(std::size_t n) { return make_path(std::vector<double>(n - 1, 1.0)); }

inline Graph make_cycle(std::size_t n, double weight = 1.0) {
    std::vector<EdgeRecord> edges;
    for (VertexId k = 0; k < n; ++k) edges.push_back({k, (k + 1) % n, weight});
    return Graph(n, std::move(edges));
}

inline Graph make_complete(std::size_t n, double weight = 1.0) {
    std::vector<EdgeRecord> edges;
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = i + 1; j < n; ++j) edges.push_back({i, j, weight});
    }
    return Graph(n, std::move(edges));
}

/// Path with both terminal edges of weight sqrt(2) and all inner edges of weight 1.
inline Graph make_compensated_path(std::size_t n) {
    std::vector<double> w(n - 1, 1.0);
    w.front() = std::sqrt(2.0);
    w.back() = std::sqrt(2.0);
    return make_path(w);
}

// ---------------------------------------------------------------------------
// Derived matrices

/// a_ij = total weight of the (i,j) edges; a_ii = total loop weight at i.
inline Matrix build_adjacency(const Graph& g) {
    const auto n = static_cast<Index>(g.order());
    Matrix a = Matrix::Zero(n, n);
    for (const auto& e : g.edges()) {
        const auto i = static_cast<Index>(e.a);
        const auto j = static_cast<Index>(e.b);
        a(i, j) += e.weight;
        if (i != j) a(j, i) += e.weight;
    }
    return a;
}

/// diag(A 1) - A for a weighted adjacency matrix.
inline Matrix laplacian_of(const Matrix& a) {
    Matrix l = -a;
    l.diagonal() += a.rowwise().sum();
    // Loops enter both terms and cancel exactly here.
    return l;
}

inline Matrix laplacian(const Graph& g) { return laplacian_of(build_adjacency(g)); }

/// rho I - A. Rejects rho that is not the largest eigenvalue of A.
inline Matrix para_laplacian(const Matrix& a, double rho) {
    const double top = linalg::largest_eigenvalue(a);
    if (std::abs(top - rho) > 1e-9 * std::max(1.0, std::abs(top))) {
        throw DomainError("rho is not the Perron root of A");
    }
    Matrix lam = -a;
    lam.diagonal().array() += rho;
    return lam;
}

/// True iff every i-k path passes through j (trivially true when j is i or k).
inline bool separates(const Graph& g, VertexId j, VertexId i, VertexId k) {
    if (i == k) throw std::invalid_argument("separates: i and k must differ");
    if (j == i || j == k) return true;
    const auto comp = g.components(j);
    return comp[i] != comp[k];
}

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   <label_a> <label_b> <weight>    one edge per line
//   # comment                       anywhere on a line
//
// Repeated lines are parallel edges, "a a w" is a loop, and the vertex set is
// the union of labels in order of first appearance.

struct EdgeListParse {
    Graph graph;
    std::vector<std::string> warnings;
};

inline EdgeListParse parse_edge_list(std::string_view text) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, VertexId> index;
    std::vector<EdgeRecord> edges;

    auto vertex = [&](const std::string& label) {
        auto [it, inserted] = index.emplace(label, labels.size());
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<std::string> tokens;
        std::istringstream in{std::string(line)};
        for (std::string tok; in >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (tokens.size() != 3) throw InvalidGraph(where + "expected '<a> <b> <weight>'");

        double w = 0.0;
        const auto& ws = tokens[2];
        const auto [ptr, ec] = std::from_chars(ws.data(), ws.data() + ws.size(), w);
        if (ec != std::errc() || ptr != ws.data() + ws.size() || !std::isfinite(w)) {
            throw InvalidGraph(where + "cannot parse weight '" + ws + "'");
        }
        if (!(w > 0.0)) throw InvalidGraph(where + "weight must be positive");
        const auto a = vertex(tokens[0]);
        const auto b = vertex(tokens[1]);
        edges.push_back({a, b, w});
    }

    if (labels.size() < 2) throw InvalidGraph("edge list names fewer than 2 vertices");
    EdgeListParse out{Graph(std::move(labels), std::move(edges)), {}};
    if (!out.graph.is_connected()) out.warnings.emplace_back("graph is not connected");
    return out;
}

/// Formats a double with 17 significant digits (round-trip exact).
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// One line per edge in record order. Isolated vertices cannot be expressed.
inline std::string serialize_edge_list(const Graph& g) {
    std::string out;
    for (const auto& e : g.edges()) {
        out += g.label(e.a);
        out += ' ';
        out += g.label(e.b);
        out += ' ';
        out += format_double(e.weight);
        out += '\n';
    }
    return out;
}

inline EdgeListParse read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidGraph("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

}  // namespace walkdist
