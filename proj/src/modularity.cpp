#include "placenet/modularity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace placenet {

std::size_t NodePartition::num_communities() const {
    if (community.empty()) return 0;
    return static_cast<std::size_t>(*std::max_element(community.begin(), community.end())) + 1;
}

double modularity(const Graph& g, const NodePartition& p) {
    const double m = static_cast<double>(g.num_edges());
    if (m == 0.0) return 0.0;
    const std::size_t k = p.num_communities();
    std::vector<double> internal(k, 0.0), degree(k, 0.0);
    for (Vertex u = 0; u < g.num_nodes(); ++u) {
        const auto cu = p.community[u];
        degree[cu] += static_cast<double>(g.degree(u));
        for (Vertex v : g.neighbors(u))
            if (u < v && p.community[v] == cu) internal[cu] += 1.0;
    }
    double q = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        const double a = degree[c] / (2.0 * m);
        q += internal[c] / m - a * a;
    }
    return q;
}

namespace {

using Gain = std::tuple<double, std::uint32_t, std::uint32_t>;  // (-dq, i, j), i < j

struct GainOrder {
    bool operator()(const Gain& a, const Gain& b) const noexcept { return a < b; }
};

}  // namespace

ModularityResult max_modularity_cnm(const Graph& g) {
    const std::size_t n = g.num_nodes();
    ModularityResult result;
    result.partition.community.resize(n);
    std::iota(result.partition.community.begin(), result.partition.community.end(), 0u);
    if (g.num_edges() == 0) return result;

    const double two_m = 2.0 * static_cast<double>(g.num_edges());
    std::vector<double> a(n);
    std::vector<std::map<std::uint32_t, double>> rows(n);
    std::set<Gain, GainOrder> heap;

    for (Vertex u = 0; u < n; ++u) a[u] = static_cast<double>(g.degree(u)) / two_m;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : g.neighbors(u)) {
            const double dq = 2.0 * (1.0 / two_m - a[u] * a[v]);
            rows[u][v] = dq;
            if (u < v) heap.emplace(-dq, u, v);
        }
    }

    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);

    auto key = [](std::uint32_t x, std::uint32_t y, double dq) {
        return Gain{-dq, std::min(x, y), std::max(x, y)};
    };

    while (!heap.empty()) {
        const auto [neg_dq, i, j] = *heap.begin();
        if (-neg_dq <= 0.0) break;
        // j merges into i (i < j).
        auto& ri = rows[i];
        auto& rj = rows[j];
        heap.erase(heap.begin());
        ri.erase(j);
        rj.erase(i);

        std::map<std::uint32_t, double> merged;
        for (const auto& [k, dq_ik] : ri) {
            heap.erase(key(i, k, dq_ik));
            const auto it = rj.find(k);
            merged[k] = it != rj.end() ? dq_ik + it->second : dq_ik - 2.0 * a[j] * a[k];
        }
        for (const auto& [k, dq_jk] : rj) {
            heap.erase(key(j, k, dq_jk));
            rows[k].erase(j);
            if (!ri.count(k)) merged[k] = dq_jk - 2.0 * a[i] * a[k];
        }
        for (const auto& [k, dq] : merged) {
            rows[k][i] = dq;
            heap.insert(key(i, k, dq));
        }
        ri = std::move(merged);
        rj.clear();
        a[i] += a[j];
        a[j] = 0.0;
        parent[j] = i;
    }

    auto root = [&](std::uint32_t v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    std::vector<std::uint32_t> relabel(n, ~std::uint32_t{0});
    std::uint32_t next = 0;
    for (Vertex v = 0; v < n; ++v) {
        const auto r = root(v);
        if (relabel[r] == ~std::uint32_t{0}) relabel[r] = next++;
        result.partition.community[v] = relabel[r];
    }
    result.q = modularity(g, result.partition);
    return result;
}

}  // namespace placenet
