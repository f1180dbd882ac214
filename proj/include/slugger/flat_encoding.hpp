#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "slugger/common.hpp"
#include "slugger/graph.hpp"

namespace slugger {

/// Summary in the disjoint-supernode model (S, P, C+, C-): a partition of V,
/// superedges meaning "all pairs between the two groups", and subnode-level
/// corrections. Equivalent to a hierarchical summary of height at most 1.
struct FlatEncoding {
    std::vector<std::uint32_t> group_of;                          ///< subnode -> group, groups dense from 0
    std::vector<std::pair<std::uint32_t, std::uint32_t>> superedges;    ///< (a, b), a <= b
    std::vector<Edge> positive;                                   ///< C+, u < v
    std::vector<Edge> negative;                                   ///< C-, u < v

    [[nodiscard]] std::size_t group_count() const;
    [[nodiscard]] std::vector<std::size_t> group_sizes() const;
    /// |P| + |C+| + |C-|.
    [[nodiscard]] std::size_t edge_cost() const { return superedges.size() + positive.size() + negative.size(); }
    /// Membership edges: one per subnode of every non-singleton group.
    [[nodiscard]] std::size_t membership_cost() const;
};

/// Cheapest P, C+, C- for a fixed partition: per group pair, either one
/// superedge plus C- for the absent pairs, or C+ for the present ones.
[[nodiscard]] FlatEncoding optimal_flat_encoding(const InputGraph &g, std::vector<std::uint32_t> group_of);

[[nodiscard]] InputGraph decode_flat(const FlatEncoding &flat);

/// (|P| + |C+| + |C-| + |H*|) / |E|. Throws std::domain_error for an edgeless graph.
[[nodiscard]] Fraction flat_relative_size(const FlatEncoding &flat, const InputGraph &g);

}    // namespace slugger
