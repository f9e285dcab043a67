#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace placenet {

using Vertex = std::uint32_t;

// Immutable simple undirected graph with string node ids.
//
// Vertices are densely indexed in lexicographic id order, so Vertex order and
// id order agree. Adjacency is CSR with sorted neighbor lists.
class Graph {
public:
    Graph() = default;

    std::size_t num_nodes() const noexcept { return ids_.size(); }
    std::size_t num_edges() const noexcept { return targets_.size() / 2; }
    bool empty() const noexcept { return ids_.empty(); }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    // Offset of v's first adjacency slot; slot ids index per-direction data
    // such as edge_of_slot().
    std::size_t first_slot(Vertex v) const noexcept { return offsets_[v]; }

    const std::string& id(Vertex v) const noexcept { return ids_[v]; }
    std::span<const std::string> ids() const noexcept { return ids_; }
    std::optional<Vertex> find(std::string_view id) const;

    bool has_edge(Vertex u, Vertex v) const noexcept;

    // Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    // Undirected edge index (position in edges()) for every adjacency slot.
    std::vector<std::size_t> edge_of_slot() const;

    // Subgraph induced by the given vertices (any order, duplicates ignored).
    Graph induced_subgraph(std::span<const Vertex> vertices) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    friend class GraphBuilder;

    std::vector<std::string> ids_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> targets_;
};

// Accumulates nodes and edges; self-loops are dropped and duplicate or
// reversed edges collapse.
class GraphBuilder {
public:
    void add_node(std::string id);
    void add_edge(std::string u, std::string v);
    Graph build() const;

private:
    std::vector<std::string> nodes_;
    std::vector<std::pair<std::string, std::string>> edges_;
};

// Edge-list text: one "U<ws>V" per line, '#' comments and blank lines skipped.
// Throws ParseError (with 1-based line number) on lines that do not hold
// exactly two tokens. source names the input in error messages.
Graph parse_edge_list(std::istream& in, const std::string& source = {});
Graph parse_edge_list(std::string_view text);
Graph read_edge_list_file(const std::string& path);

// One line per edge, endpoints and lines in id order.
void write_edge_list(std::ostream& out, const Graph& g);

struct Components {
    std::vector<std::uint32_t> label;  // per vertex, 0-based
    std::vector<std::size_t> size;     // per label
    std::size_t count() const noexcept { return size.size(); }
};

// Labels are assigned in order of each component's smallest vertex.
Components connected_components(const Graph& g);

// Induced subgraph on the largest component. Ties go to the component holding
// the lexicographically smallest node id.
Graph largest_connected_component(const Graph& g);

// Hop counts from source into dist (resized to num_nodes); unreachable
// vertices get -1.
void bfs_hops(const Graph& g, Vertex source, std::vector<std::int32_t>& dist);

// Throws DataError when source is not a node.
std::map<std::string, std::size_t> bfs_distances(const Graph& g, std::string_view source);

}  // namespace placenet
