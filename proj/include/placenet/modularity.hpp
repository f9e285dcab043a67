#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "placenet/graph.hpp"

namespace placenet {

// Community index per vertex, 0-based and contiguous.
struct NodePartition {
    std::vector<std::uint32_t> community;
    std::size_t num_communities() const;
};

// Newman–Girvan modularity of a partition. 0 for graphs without edges.
double modularity(const Graph& g, const NodePartition& p);

struct ModularityResult {
    double q = 0.0;
    NodePartition partition;
};

// Greedy agglomeration (Clauset–Newman–Moore): start from singletons and
// repeatedly merge the connected pair with the largest modularity gain until
// no gain is positive. Equal gains go to the smallest (index, index) pair;
// a merged community keeps the smaller index. Edgeless graphs give
// (0, singletons). Partition labels are renumbered in order of first vertex.
ModularityResult max_modularity_cnm(const Graph& g);

}  // namespace placenet
