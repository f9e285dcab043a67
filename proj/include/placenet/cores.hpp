#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "placenet/graph.hpp"

namespace placenet {

// What "number of k-cores / k-braces" reports.
enum class CoreCount {
    components,  // connected components of the remaining subgraph
    nodes,       // nodes remaining in it
};

// Core number of every vertex (bucket peeling, O(n + m)).
std::vector<std::size_t> core_numbers(const Graph& g);

// Vertices of the maximal subgraph with all degrees >= k.
std::vector<Vertex> k_core_vertices(const Graph& g, std::size_t k);

std::size_t k_core_components(const Graph& g, std::size_t k, CoreCount mode = CoreCount::components);

// Number of common neighbours of each edge, indexed like Graph::edges().
std::vector<std::size_t> edge_embeddedness(const Graph& g);

// Edge indices (Graph::edges() order) surviving repeated deletion of edges
// whose embeddedness in the remaining graph is below k.
std::vector<std::size_t> k_brace_edges(const Graph& g, std::size_t k);

std::size_t k_brace_components(const Graph& g, std::size_t k, CoreCount mode = CoreCount::components);

// Counts for several k at once; peeling state is reused across ascending k.
std::vector<std::size_t> k_core_counts(const Graph& g, std::span<const int> ks, CoreCount mode);
std::vector<std::size_t> k_brace_counts(const Graph& g, std::span<const int> ks, CoreCount mode);

}  // namespace placenet
