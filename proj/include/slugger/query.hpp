#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "slugger/summary.hpp"

// Graph algorithms that read the summary only through neighbors_of.
namespace slugger {

/// Preorder DFS from start, neighbors taken in ascending id order.
[[nodiscard]] std::vector<NodeId> dfs(const HierarchicalSummary &s, NodeId start);

/// Hop distances from start; unreachable subnodes are absent.
[[nodiscard]] std::map<NodeId, std::size_t> bfs(const HierarchicalSummary &s, NodeId start);

struct PageRankVector {
    std::vector<double> scores;
    double damping{0.85};
    std::size_t iterations{0};
};

/// Push-style power iteration with uniform redistribution of the leaked mass.
/// Throws std::domain_error unless 0 < d < 1 and iters >= 1.
[[nodiscard]] PageRankVector pagerank(const HierarchicalSummary &s, double d = 0.85, std::size_t iters = 30);
/// Same iteration in gather form over the parallel kernel.
[[nodiscard]] PageRankVector pagerank_parallel(const HierarchicalSummary &s, double d = 0.85,
                                               std::size_t iters = 30);

struct NeighborBench {
    double mean_micros{0.0};
    double mean_leaf_depth{0.0};    ///< over the sampled subnodes
    std::size_t sample{0};
    std::size_t neighbors_returned{0};
};

/// Times neighbors_of over `sample` subnodes drawn with a seeded generator.
[[nodiscard]] NeighborBench neighbor_query_bench(const HierarchicalSummary &s, std::size_t sample,
                                                 std::uint64_t seed);

}    // namespace slugger
