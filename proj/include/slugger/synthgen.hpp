#pragma once

#include <cstdint>

#include "slugger/flat_encoding.hpp"
#include "slugger/graph.hpp"
#include "slugger/summary.hpp"

namespace slugger {

/// n groups of k subnodes on a ring. Every subnode is adjacent to everything
/// except itself and the members of the two ring-neighbor groups.
struct TheoremGraphSpec {
    std::size_t n{3};
    std::size_t k{1};
};

/// Subnode ids are group * k + index. Throws std::domain_error for n < 3 or k < 1.
[[nodiscard]] InputGraph theorem_graph(const TheoremGraphSpec &spec);

/// Root over the n group supernodes with a p-self-loop, plus one n-edge per
/// ring-adjacent group pair. Cost n*k + 2n + 1.
[[nodiscard]] HierarchicalSummary reference_hier_encoding(const TheoremGraphSpec &spec);

struct LowerBoundReport {
    bool holds{true};                ///< every large group has a superedge to every group
    std::size_t large_groups{0};     ///< groups with at least 8k subnodes
    std::size_t missing_superedges{0};
    std::size_t edge_cost{0};        ///< |P| + |C+| + |C-|
    std::size_t total_cost{0};       ///< edge_cost plus membership edges
};

/// Checks a flat encoding of theorem_graph(spec) for the large-group property.
/// Throws std::invalid_argument if the encoding does not decode to that graph.
[[nodiscard]] LowerBoundReport flat_lower_bound_witness(const TheoremGraphSpec &spec, const FlatEncoding &flat);

/// G(n, p) by geometric skipping. Throws std::domain_error unless 0 <= p <= 1.
[[nodiscard]] InputGraph er_graph(std::size_t n, double p, std::uint64_t seed);

/// `cliques` disjoint cliques of `size` nodes, consecutive cliques joined by one
/// random edge. Throws std::domain_error for cliques < 1 or size < 2.
[[nodiscard]] InputGraph caveman_graph(std::size_t cliques, std::size_t size, std::uint64_t seed);

}    // namespace slugger
