#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slugger/graph.hpp"
#include "slugger/summary.hpp"

// Data-parallel hot loops. Each has a plain serial twin that the tests and the
// benchmark compare it against; results are bit-identical except where noted.
namespace slugger::kernels {

/// out[u] = min of node_hash(seed, w) over w in N(u) ∪ {u}.
void closed_minhash(const InputGraph &g, std::uint64_t seed, std::span<std::uint64_t> out);
void closed_minhash_serial(const InputGraph &g, std::uint64_t seed, std::span<std::uint64_t> out);

/// Adjacency of every subnode through neighbors_of.
[[nodiscard]] std::vector<std::vector<NodeId>> decode_adjacency(const HierarchicalSummary &s);
[[nodiscard]] std::vector<std::vector<NodeId>> decode_adjacency_serial(const HierarchicalSummary &s);

/// Degree of every subnode through neighbors_of.
[[nodiscard]] std::vector<std::size_t> summary_degrees(const HierarchicalSummary &s);

/// next[v] = sum over u in N(v) of cur[u] / deg[u], neighbors from neighbors_of.
/// The serial twin sums in the same order, so the two agree exactly.
void pagerank_gather(const HierarchicalSummary &s, std::span<const std::size_t> degree, std::span<const double> cur,
                     std::span<double> next);
void pagerank_gather_serial(const HierarchicalSummary &s, std::span<const std::size_t> degree,
                            std::span<const double> cur, std::span<double> next);

/// Threads the parallel kernels will use.
[[nodiscard]] int thread_count();

}    // namespace slugger::kernels
