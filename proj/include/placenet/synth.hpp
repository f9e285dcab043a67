#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "placenet/graph.hpp"

namespace placenet {

// Node ids are zero-padded so lexicographic order matches index order.
// Isolated nodes are part of the returned Graph; note that the edge-list
// format cannot carry them.

// "n<i>"
Graph gen_er(std::size_t n, double p, std::uint64_t seed);

// Core nodes "c<i>", periphery nodes "p<i>".
Graph gen_core_periphery(std::size_t n_core, std::size_t n_periphery, double p_cc, double p_cp, double p_pp,
                         std::uint64_t seed);

// Disjoint dyads and triangles, nodes "g<component>_<j>".
Graph gen_dyad_triad_scatter(std::size_t n_components, double dyad_fraction, std::uint64_t seed);

// Several core-periphery blocks ("m<b>c<i>", "m<b>p<i>") joined by sparse
// between-block edges with probability p_between.
struct MultiCoreParams {
    std::size_t n_communities = 3;
    std::size_t n_core = 10;
    std::size_t n_periphery = 30;
    double p_cc = 0.5;
    double p_cp = 0.05;
    double p_pp = 0.01;
    double p_between = 0.002;
};
Graph gen_multi_core_community(const MultiCoreParams& params, std::uint64_t seed);

enum class ArchetypeKind { erdos_renyi, core_periphery, dyad_triad_scatter, multi_core_community };

const char* archetype_name(ArchetypeKind kind);

struct ArchetypeSpec {
    ArchetypeKind kind = ArchetypeKind::erdos_renyi;
    std::map<std::string, double> params;
    std::size_t count = 1;  // graphs to emit for this category
};

// Throws DataError on unknown or missing keys, probabilities outside [0,1]
// or negative/non-integral counts.
void validate(const ArchetypeSpec& spec);

Graph generate(const ArchetypeSpec& spec, std::uint64_t seed);

// Seed of graph `index` within `category`.
std::uint64_t graph_seed(std::uint64_t master, const std::string& category, std::size_t index);

struct SynthConfig {
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, ArchetypeSpec>> categories;  // file order
};

// INI text: optional top-level "seed = N", then one section per category
// holding "kind", "count" and the kind's parameters. Every section is
// validated. Throws ParseError on syntax errors.
SynthConfig parse_synth_config(std::istream& in, const std::string& source = {});
SynthConfig read_synth_config(const std::string& path);

}  // namespace placenet
