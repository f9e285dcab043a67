#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "placenet/cores.hpp"
#include "placenet/graph.hpp"
#include "placenet/spectral.hpp"

namespace placenet {

inline const std::vector<int> kDefaultKSet{2, 4, 8, 16};

// Which graph the Laplacian spectrum is taken on.
enum class SpectrumScope { largest_component, whole_graph };

struct FeatureOptions {
    std::vector<int> k_set = kDefaultKSet;
    CoreCount core_count = CoreCount::components;
    SpectrumScope spectrum_scope = SpectrumScope::largest_component;
    SpectralOptions spectral{};
    // 0 = exact all-pairs BFS. Otherwise, when the largest component has
    // more than path_sampling_threshold nodes, average over this many
    // uniformly chosen BFS sources.
    std::size_t path_sample_sources = 0;
    std::size_t path_sampling_threshold = 20000;
    std::uint64_t path_sample_seed = 0;
};

// Topological measurements of one graph. With the default k_set this is 18
// values: 10 scalars, then k-core and k-brace counts per k.
struct FeatureVector {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double density = 0.0;
    double avg_degree = 0.0;
    double degree_variance = 0.0;
    double avg_clustering = 0.0;
    double degree_assortativity = 0.0;
    double avg_path_length_lcc = 0.0;
    double algebraic_connectivity = 0.0;
    double max_modularity = 0.0;
    std::vector<int> k_set = kDefaultKSet;
    std::vector<std::size_t> kcore_components = std::vector<std::size_t>(4, 0);
    std::vector<std::size_t> kbrace_components = std::vector<std::size_t>(4, 0);

    std::size_t size() const noexcept { return 10 + kcore_components.size() + kbrace_components.size(); }

    // Fixed column order: the ten scalars as declared, then kcore_<k>..., kbrace_<k>...
    std::vector<double> flatten() const;
};

std::vector<std::string> feature_names(const std::vector<int>& k_set = kDefaultKSet);

FeatureVector compute_features(const Graph& g, const FeatureOptions& opts = {});

// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
double avg_clustering(const Graph& g);

// Triangles through each vertex.
std::vector<std::size_t> triangle_counts(const Graph& g);

// Pearson correlation of endpoint degrees over both orientations of every
// edge. 0 when there are no edges or the degree marginal has no variance.
double degree_assortativity(const Graph& g);

// Mean hop distance over unordered pairs of the largest component; 0 when it
// has fewer than two nodes.
double avg_path_length_lcc(const Graph& g, std::size_t sample_sources = 0, std::uint64_t seed = 0);

// Population variance of the degree sequence.
double degree_variance(const Graph& g);

}  // namespace placenet
