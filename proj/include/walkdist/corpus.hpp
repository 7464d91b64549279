#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "walkdist/graph.hpp"

namespace walkdist {

struct RandomGraphOptions {
    std::size_t min_order = 2;
    std::size_t max_order = 8;
    double min_weight = 0.25;
    double max_weight = 4.0;
    double extra_edge_probability = 0.3;  ///< per vertex pair, after the spanning tree
    double parallel_probability = 0.2;    ///< chance that an edge gets a parallel twin
    double loop_probability = 0.2;        ///< per vertex
};

/// Random spanning tree plus extra edges, parallel twins and loops; always connected.
inline Graph random_connected_multigraph(std::mt19937_64& rng, const RandomGraphOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> order(opt.min_order, opt.max_order);
    std::uniform_real_distribution<double> weight(opt.min_weight, opt.max_weight);
    std::bernoulli_distribution extra(opt.extra_edge_probability);
    std::bernoulli_distribution twin(opt.parallel_probability);
    std::bernoulli_distribution loop(opt.loop_probability);

    const std::size_t n = order(rng);
    std::vector<EdgeRecord> edges;
    auto add = [&](VertexId a, VertexId b) {
        edges.push_back({a, b, weight(rng)});
        if (twin(rng)) edges.push_back({a, b, weight(rng)});
    };
    for (VertexId v = 1; v < n; ++v) {
        std::uniform_int_distribution<VertexId> parent(0, v - 1);
        add(parent(rng), v);
    }
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) {
            if (extra(rng)) add(a, b);
        }
        if (loop(rng)) edges.push_back({a, a, weight(rng)});
    }
    return Graph(n, std::move(edges));
}

inline std::vector<Graph> random_corpus(std::uint64_t seed, std::size_t count, const RandomGraphOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(random_connected_multigraph(rng, opt));
    return out;
}

/// Every connected simple unit-weight graph on vertices 1..n (labelled, not up to isomorphism).
inline std::vector<Graph> all_connected_simple_graphs(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
    std::vector<Graph> out;
    const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        std::vector<EdgeRecord> edges;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (mask >> k & 1U) edges.push_back({pairs[k].first, pairs[k].second, 1.0});
        }
        Graph g(n, std::move(edges));
        if (g.is_connected()) out.push_back(std::move(g));
    }
    return out;
}

/// Connected simple graphs for n = 2..max_order.
inline std::vector<Graph> exhaustive_small_graphs(std::size_t max_order = 4) {
    std::vector<Graph> out;
    for (std::size_t n = 2; n <= max_order; ++n) {
        auto part = all_connected_simple_graphs(n);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

}  // namespace walkdist
