#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <trustgraph/graph.hpp>
#include <trustgraph/rank.hpp>

namespace tgtest {

using Rng = std::mt19937_64;

struct RandomGraphOptions {
    std::size_t min_nodes = 3;
    std::size_t max_nodes = 50;
    double edge_probability = 0.15;
    bool layered = false;       // typed nodes with a random orientation that every edge respects
    bool fancy_labels = false;  // labels with quotes, backslashes and non-ASCII text
};

trustgraph::GraphDraft random_draft(Rng &rng, const RandomGraphOptions &opts = {});
trustgraph::TrustGraph random_graph(Rng &rng, const RandomGraphOptions &opts = {});

/// Non-empty random subset of the graph's nodes.
trustgraph::SeedSet random_seeds(Rng &rng, const trustgraph::TrustGraph &g);

/// Same graph with every token renamed through a random bijection; fills @a mapping old -> new.
trustgraph::TrustGraph relabel(Rng &rng, const trustgraph::TrustGraph &g,
                               std::map<std::string, std::string> &mapping);

/// Draft with nodes and edges in a random declaration order.
trustgraph::GraphDraft shuffled_draft(Rng &rng, const trustgraph::TrustGraph &g);

/// Graph from "A->B" style edge strings over untyped nodes (orientation free).
trustgraph::TrustGraph free_graph(const std::vector<std::string> &nodes,
                                  const std::vector<std::pair<std::string, std::string>> &edges);

/**
 * Top-down layered graph with about @a nodes nodes and exactly @a edges edges:
 * 1% requirements, 10% aspects, the rest components. Used for timing runs.
 */
trustgraph::TrustGraph layered_benchmark_graph(std::size_t nodes, std::size_t edges, std::uint64_t seed);

} // namespace tgtest
