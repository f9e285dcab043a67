#include "placenet/cores.hpp"

#include <algorithm>
#include <numeric>

namespace placenet {
namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

std::size_t count_core(const Graph& g, const std::vector<std::size_t>& core, std::size_t k, CoreCount mode) {
    std::size_t nodes = 0;
    std::size_t unions = 0;
    DisjointSets sets(g.num_nodes());
    for (Vertex u = 0; u < g.num_nodes(); ++u) {
        if (core[u] < k) continue;
        ++nodes;
        for (Vertex v : g.neighbors(u))
            if (u < v && core[v] >= k && sets.unite(u, v)) ++unions;
    }
    return mode == CoreCount::nodes ? nodes : nodes - unions;
}

// Peels edges until every live edge has at least k live triangles.
class BracePeeler {
public:
    explicit BracePeeler(const Graph& g)
        : g_(g), edges_(g.edges()), slot_edge_(g.edge_of_slot()), support_(edge_embeddedness(g)),
          alive_(edges_.size(), 1) {}

    void peel_to(std::size_t k) {
        std::vector<std::size_t> queue;
        std::vector<char> queued(edges_.size(), 0);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (alive_[e] && support_[e] < k) {
                queue.push_back(e);
                queued[e] = 1;
            }
        }
        while (!queue.empty()) {
            const std::size_t e = queue.back();
            queue.pop_back();
            alive_[e] = 0;
            const auto [u, v] = edges_[e];
            const auto nu = g_.neighbors(u);
            const auto nv = g_.neighbors(v);
            std::size_t i = 0, j = 0;
            while (i < nu.size() && j < nv.size()) {
                if (nu[i] < nv[j]) {
                    ++i;
                } else if (nv[j] < nu[i]) {
                    ++j;
                } else {
                    const std::size_t eu = slot_edge_[g_.first_slot(u) + i];
                    const std::size_t ev = slot_edge_[g_.first_slot(v) + j];
                    if (alive_[eu] && alive_[ev]) {
                        for (std::size_t f : {eu, ev}) {
                            --support_[f];
                            if (!queued[f] && support_[f] < k) {
                                queued[f] = 1;
                                queue.push_back(f);
                            }
                        }
                    }
                    ++i;
                    ++j;
                }
            }
        }
    }

    std::size_t count(CoreCount mode) const {
        std::vector<char> touched(g_.num_nodes(), 0);
        DisjointSets sets(g_.num_nodes());
        std::size_t unions = 0;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (!alive_[e]) continue;
            const auto [u, v] = edges_[e];
            touched[u] = touched[v] = 1;
            if (sets.unite(u, v)) ++unions;
        }
        const auto nodes = static_cast<std::size_t>(std::count(touched.begin(), touched.end(), 1));
        return mode == CoreCount::nodes ? nodes : nodes - unions;
    }

    std::vector<std::size_t> surviving() const {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < edges_.size(); ++e)
            if (alive_[e]) out.push_back(e);
        return out;
    }

private:
    const Graph& g_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<std::size_t> slot_edge_;
    std::vector<std::size_t> support_;
    std::vector<char> alive_;
};

}  // namespace

std::vector<std::size_t> core_numbers(const Graph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::size_t> deg(n);
    std::size_t max_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    // Batagelj–Zaversnik: vertices sorted by degree in vert, pos[v] its slot,
    // bin[d] the first slot of degree d.
    std::vector<std::size_t> bin(max_deg + 2, 0);
    for (Vertex v = 0; v < n; ++v) ++bin[deg[v] + 1];
    std::partial_sum(bin.begin(), bin.end(), bin.begin());
    std::vector<std::size_t> pos(n);
    std::vector<Vertex> vert(n);
    {
        std::vector<std::size_t> next(bin.begin(), bin.end() - 1);
        for (Vertex v = 0; v < n; ++v) {
            pos[v] = next[deg[v]]++;
            vert[pos[v]] = v;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = vert[i];
        for (Vertex u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                const std::size_t du = deg[u];
                const std::size_t pu = pos[u];
                const std::size_t pw = bin[du];
                const Vertex w = vert[pw];
                if (u != w) {
                    std::swap(vert[pu], vert[pw]);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return deg;
}

std::vector<Vertex> k_core_vertices(const Graph& g, std::size_t k) {
    const auto core = core_numbers(g);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.num_nodes(); ++v)
        if (core[v] >= k) out.push_back(v);
    return out;
}

std::size_t k_core_components(const Graph& g, std::size_t k, CoreCount mode) {
    return count_core(g, core_numbers(g), k, mode);
}

std::vector<std::size_t> k_core_counts(const Graph& g, std::span<const int> ks, CoreCount mode) {
    const auto core = core_numbers(g);
    std::vector<std::size_t> out;
    out.reserve(ks.size());
    for (int k : ks) out.push_back(count_core(g, core, static_cast<std::size_t>(std::max(k, 0)), mode));
    return out;
}

std::vector<std::size_t> edge_embeddedness(const Graph& g) {
    const auto edges = g.edges();
    std::vector<std::size_t> out(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto nu = g.neighbors(edges[e].first);
        const auto nv = g.neighbors(edges[e].second);
        std::size_t i = 0, j = 0, common = 0;
        while (i < nu.size() && j < nv.size()) {
            if (nu[i] < nv[j]) {
                ++i;
            } else if (nv[j] < nu[i]) {
                ++j;
            } else {
                ++common;
                ++i;
                ++j;
            }
        }
        out[e] = common;
    }
    return out;
}

std::vector<std::size_t> k_brace_edges(const Graph& g, std::size_t k) {
    BracePeeler peeler(g);
    peeler.peel_to(k);
    return peeler.surviving();
}

std::size_t k_brace_components(const Graph& g, std::size_t k, CoreCount mode) {
    BracePeeler peeler(g);
    peeler.peel_to(k);
    return peeler.count(mode);
}

std::vector<std::size_t> k_brace_counts(const Graph& g, std::span<const int> ks, CoreCount mode) {
    std::vector<std::size_t> order(ks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ks[a] < ks[b]; });
    std::vector<std::size_t> out(ks.size());
    BracePeeler peeler(g);
    for (std::size_t idx : order) {
        peeler.peel_to(static_cast<std::size_t>(std::max(ks[idx], 0)));
        out[idx] = peeler.count(mode);
    }
    return out;
}

}  // namespace placenet
