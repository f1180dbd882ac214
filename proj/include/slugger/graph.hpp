#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slugger/common.hpp"

namespace slugger {

using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected graph in CSR form. Adjacency lists are sorted, symmetric,
/// free of duplicates and self-loops. Immutable once built.
class InputGraph {
  public:
    InputGraph() = default;

    /// Builds a normalized graph: directions collapsed, duplicates and
    /// self-loops dropped. Endpoints must be < node_count.
    static InputGraph from_edges(std::size_t node_count, std::span<const Edge> edges);

    [[nodiscard]] std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    [[nodiscard]] std::size_t edge_count() const { return targets_.size() / 2; }

    /// Throws std::out_of_range for u >= node_count().
    [[nodiscard]] std::span<const NodeId> neighbors(NodeId u) const;
    [[nodiscard]] std::size_t degree(NodeId u) const { return neighbors(u).size(); }
    [[nodiscard]] bool has_edge(NodeId u, NodeId v) const;

    /// Every edge once as (u, v) with u < v, sorted.
    [[nodiscard]] std::vector<Edge> edges() const;

    /// External id of each dense node id (identity when built from dense ids).
    [[nodiscard]] const std::vector<std::int64_t> &external_ids() const { return external_ids_; }
    void set_external_ids(std::vector<std::int64_t> ids);

    /// Full scan of the structural invariants (symmetry, sortedness, no loops, no duplicates).
    [[nodiscard]] bool check_invariants() const;

    friend bool operator==(const InputGraph &a, const InputGraph &b) {
        return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
    }

  private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<std::int64_t> external_ids_;
};

/// Reads a whitespace-separated edge list. Blank lines and lines starting with
/// '#' are skipped; external ids are remapped to dense ids in first-appearance
/// order. Throws ParseError naming the offending line.
InputGraph load_edge_list(std::istream &in);
InputGraph load_edge_list_file(const std::string &path);

/// Writes "u v" lines, u < v, sorted. With use_external_ids the original ids are emitted.
void write_edge_list(const InputGraph &g, std::ostream &out, bool use_external_ids = false);

/// Induced subgraph on ceil(fraction * |V|) uniformly sampled nodes, re-densified
/// in ascending original id order. Deterministic for a fixed seed.
InputGraph induced_sample(const InputGraph &g, double fraction, std::uint64_t seed);

}    // namespace slugger
