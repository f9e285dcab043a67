#include "placenet/features.hpp"

#include <algorithm>
#include <numeric>

#include "placenet/modularity.hpp"
#include "placenet/rng.hpp"

namespace placenet {

std::vector<double> FeatureVector::flatten() const {
    std::vector<double> out{static_cast<double>(n_nodes),
                            static_cast<double>(n_edges),
                            density,
                            avg_degree,
                            degree_variance,
                            avg_clustering,
                            degree_assortativity,
                            avg_path_length_lcc,
                            algebraic_connectivity,
                            max_modularity};
    for (auto c : kcore_components) out.push_back(static_cast<double>(c));
    for (auto c : kbrace_components) out.push_back(static_cast<double>(c));
    return out;
}

std::vector<std::string> feature_names(const std::vector<int>& k_set) {
    std::vector<std::string> names{"n_nodes",
                                   "n_edges",
                                   "density",
                                   "avg_degree",
                                   "degree_variance",
                                   "avg_clustering",
                                   "degree_assortativity",
                                   "avg_path_length_lcc",
                                   "algebraic_connectivity",
                                   "max_modularity"};
    for (int k : k_set) names.push_back("kcore_" + std::to_string(k));
    for (int k : k_set) names.push_back("kbrace_" + std::to_string(k));
    return names;
}

std::vector<std::size_t> triangle_counts(const Graph& g) {
    std::vector<std::size_t> tri(g.num_nodes(), 0);
    for (Vertex u = 0; u < g.num_nodes(); ++u) {
        const auto nu = g.neighbors(u);
        for (Vertex v : nu) {
            if (v <= u) continue;
            const auto nv = g.neighbors(v);
            // Count each triangle once from its smallest edge (u, v), apex w > v.
            auto i = std::upper_bound(nu.begin(), nu.end(), v);
            auto j = std::upper_bound(nv.begin(), nv.end(), v);
            while (i != nu.end() && j != nv.end()) {
                if (*i < *j) {
                    ++i;
                } else if (*j < *i) {
                    ++j;
                } else {
                    ++tri[u];
                    ++tri[v];
                    ++tri[*i];
                    ++i;
                    ++j;
                }
            }
        }
    }
    return tri;
}

double avg_clustering(const Graph& g) {
    if (g.empty()) return 0.0;
    const auto tri = triangle_counts(g);
    double total = 0.0;
    for (Vertex v = 0; v < g.num_nodes(); ++v) {
        const double d = static_cast<double>(g.degree(v));
        if (d >= 2) total += static_cast<double>(tri[v]) / (d * (d - 1) / 2);
    }
    return total / static_cast<double>(g.num_nodes());
}

double degree_variance(const Graph& g) {
    const std::size_t n = g.num_nodes();
    if (n == 0) return 0.0;
    const double mean = 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n);
    double acc = 0.0;
    for (Vertex v = 0; v < n; ++v) {
        const double dev = static_cast<double>(g.degree(v)) - mean;
        acc += dev * dev;
    }
    return acc / static_cast<double>(n);
}

double degree_assortativity(const Graph& g) {
    if (g.num_edges() == 0) return 0.0;
    // Over directed endpoint pairs both marginals are identical: each vertex
    // contributes its degree deg(v) times.
    const double arcs = 2.0 * static_cast<double>(g.num_edges());
    double sx = 0.0, sxx = 0.0, sxy = 0.0;
    for (Vertex u = 0; u < g.num_nodes(); ++u) {
        const double du = static_cast<double>(g.degree(u));
        sx += du * du;
        sxx += du * du * du;
        for (Vertex v : g.neighbors(u)) sxy += du * static_cast<double>(g.degree(v));
    }
    const double mean = sx / arcs;
    const double var = sxx / arcs - mean * mean;
    if (var <= 1e-12 * std::max(1.0, mean * mean)) return 0.0;
    const double r = (sxy / arcs - mean * mean) / var;
    return std::clamp(r, -1.0, 1.0);
}

double avg_path_length_lcc(const Graph& g, std::size_t sample_sources, std::uint64_t seed) {
    const Graph lcc = largest_connected_component(g);
    const std::size_t n = lcc.num_nodes();
    if (n < 2) return 0.0;

    std::vector<Vertex> sources(n);
    std::iota(sources.begin(), sources.end(), 0u);
    if (sample_sources > 0 && sample_sources < n) {
        Rng rng(seed);
        rng.shuffle(sources.begin(), sources.end());
        sources.resize(sample_sources);
        std::sort(sources.begin(), sources.end());
    }

    std::vector<std::int32_t> dist;
    double total = 0.0;
    for (Vertex s : sources) {
        bfs_hops(lcc, s, dist);
        std::uint64_t row = 0;
        for (auto d : dist) row += static_cast<std::uint64_t>(d);
        total += static_cast<double>(row);
    }
    return total / (static_cast<double>(sources.size()) * static_cast<double>(n - 1));
}

FeatureVector compute_features(const Graph& g, const FeatureOptions& opts) {
    FeatureVector f;
    const std::size_t n = g.num_nodes();
    const std::size_t m = g.num_edges();
    f.n_nodes = n;
    f.n_edges = m;
    if (n >= 2) f.density = 2.0 * static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1));
    if (n > 0) f.avg_degree = 2.0 * static_cast<double>(m) / static_cast<double>(n);
    f.degree_variance = degree_variance(g);
    f.avg_clustering = avg_clustering(g);
    f.degree_assortativity = degree_assortativity(g);

    const Graph lcc = largest_connected_component(g);
    std::size_t samples = 0;
    if (opts.path_sample_sources > 0 && lcc.num_nodes() > opts.path_sampling_threshold)
        samples = opts.path_sample_sources;
    f.avg_path_length_lcc = avg_path_length_lcc(lcc, samples, opts.path_sample_seed);

    f.algebraic_connectivity = opts.spectrum_scope == SpectrumScope::largest_component
                                   ? laplacian_lambda2(lcc, opts.spectral)
                                   : laplacian_lambda2(g, opts.spectral);
    f.max_modularity = max_modularity_cnm(g).q;

    f.k_set = opts.k_set;
    f.kcore_components = k_core_counts(g, opts.k_set, opts.core_count);
    f.kbrace_components = k_brace_counts(g, opts.k_set, opts.core_count);
    return f;
}

}  // namespace placenet
