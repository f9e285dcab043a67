#include "placenet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "placenet/error.hpp"

namespace placenet {

std::optional<Vertex> Graph::find(std::string_view id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                                     [](const std::string& a, std::string_view b) { return a < b; });
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<Vertex>(it - ids_.begin());
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < num_nodes(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::vector<std::size_t> Graph::edge_of_slot() const {
    std::vector<std::size_t> slot_edge(targets_.size());
    std::size_t next = 0;
    // Forward slots (u < v) are numbered in edges() order; each backward slot
    // finds its twin in the smaller endpoint's sorted list.
    for (Vertex u = 0; u < num_nodes(); ++u)
        for (std::size_t s = offsets_[u]; s < offsets_[u + 1]; ++s)
            if (u < targets_[s]) slot_edge[s] = next++;
    for (Vertex u = 0; u < num_nodes(); ++u) {
        for (std::size_t s = offsets_[u]; s < offsets_[u + 1]; ++s) {
            const Vertex v = targets_[s];
            if (v < u) {
                const auto nb = neighbors(v);
                const auto pos = std::lower_bound(nb.begin(), nb.end(), u) - nb.begin();
                slot_edge[s] = slot_edge[offsets_[v] + static_cast<std::size_t>(pos)];
            }
        }
    }
    return slot_edge;
}

Graph Graph::induced_subgraph(std::span<const Vertex> vertices) const {
    std::vector<Vertex> keep(vertices.begin(), vertices.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

    constexpr Vertex absent = ~Vertex{0};
    std::vector<Vertex> remap(num_nodes(), absent);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<Vertex>(i);

    Graph sub;
    sub.ids_.reserve(keep.size());
    sub.offsets_.assign(1, 0);
    sub.offsets_.reserve(keep.size() + 1);
    for (Vertex v : keep) {
        sub.ids_.push_back(ids_[v]);
        // Increasing old index maps to increasing new index, so lists stay sorted.
        for (Vertex w : neighbors(v))
            if (remap[w] != absent) sub.targets_.push_back(remap[w]);
        sub.offsets_.push_back(sub.targets_.size());
    }
    return sub;
}

void GraphBuilder::add_node(std::string id) { nodes_.push_back(std::move(id)); }

void GraphBuilder::add_edge(std::string u, std::string v) {
    if (u == v) return;
    edges_.emplace_back(std::move(u), std::move(v));
}

Graph GraphBuilder::build() const {
    Graph g;
    g.ids_ = nodes_;
    g.ids_.reserve(nodes_.size() + 2 * edges_.size());
    for (const auto& [u, v] : edges_) {
        g.ids_.push_back(u);
        g.ids_.push_back(v);
    }
    std::sort(g.ids_.begin(), g.ids_.end());
    g.ids_.erase(std::unique(g.ids_.begin(), g.ids_.end()), g.ids_.end());

    std::vector<std::pair<Vertex, Vertex>> arcs;
    arcs.reserve(2 * edges_.size());
    for (const auto& [u, v] : edges_) {
        const Vertex a = *g.find(u);
        const Vertex b = *g.find(v);
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    g.offsets_.assign(g.ids_.size() + 1, 0);
    for (const auto& arc : arcs) ++g.offsets_[arc.first + 1];
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.targets_.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) g.targets_[i] = arcs[i].second;
    return g;
}

Graph parse_edge_list(std::istream& in, const std::string& source) {
    GraphBuilder builder;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream tokens(line);
        std::string u, v, extra;
        tokens >> u >> v;
        if (v.empty() || (tokens >> extra))
            throw ParseError(source, lineno, "expected exactly two tokens per edge line");
        builder.add_edge(std::move(u), std::move(v));
    }
    return builder.build();
}

Graph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list '" + path + "'");
    return parse_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (const auto& [u, v] : g.edges()) out << g.id(u) << ' ' << g.id(v) << '\n';
}

Components connected_components(const Graph& g) {
    Components c;
    constexpr std::uint32_t unset = ~std::uint32_t{0};
    c.label.assign(g.num_nodes(), unset);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.num_nodes(); ++s) {
        if (c.label[s] != unset) continue;
        const auto label = static_cast<std::uint32_t>(c.size.size());
        std::size_t size = 0;
        c.label[s] = label;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            ++size;
            for (Vertex w : g.neighbors(u)) {
                if (c.label[w] == unset) {
                    c.label[w] = label;
                    stack.push_back(w);
                }
            }
        }
        c.size.push_back(size);
    }
    return c;
}

Graph largest_connected_component(const Graph& g) {
    if (g.empty()) return {};
    const auto c = connected_components(g);
    // Labels follow smallest-vertex order, and vertex order is id order, so
    // the first maximum is the tie-break winner.
    const auto best = static_cast<std::uint32_t>(std::max_element(c.size.begin(), c.size.end()) - c.size.begin());
    if (c.size[best] == g.num_nodes()) return g;
    std::vector<Vertex> members;
    members.reserve(c.size[best]);
    for (Vertex v = 0; v < g.num_nodes(); ++v)
        if (c.label[v] == best) members.push_back(v);
    return g.induced_subgraph(members);
}

void bfs_hops(const Graph& g, Vertex source, std::vector<std::int32_t>& dist) {
    dist.assign(g.num_nodes(), -1);
    std::vector<Vertex> frontier{source};
    std::vector<Vertex> next;
    dist[source] = 0;
    std::int32_t depth = 0;
    while (!frontier.empty()) {
        ++depth;
        next.clear();
        for (Vertex u : frontier) {
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = depth;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
}

std::map<std::string, std::size_t> bfs_distances(const Graph& g, std::string_view source) {
    const auto s = g.find(source);
    if (!s) throw DataError("unknown source node '" + std::string(source) + "'");
    std::vector<std::int32_t> dist;
    bfs_hops(g, *s, dist);
    std::map<std::string, std::size_t> out;
    for (Vertex v = 0; v < g.num_nodes(); ++v)
        if (dist[v] >= 0) out.emplace(g.id(v), static_cast<std::size_t>(dist[v]));
    return out;
}

}  // namespace placenet
