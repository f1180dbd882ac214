#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slugger/common.hpp"
#include "slugger/graph.hpp"

namespace slugger {

/// One endpoint's view of a p-edge (sign +1) or n-edge (sign -1).
struct Incidence {
    SupernodeId other;
    std::int8_t sign;
};

using SupernodePair = std::pair<SupernodeId, SupernodeId>;

/// Hierarchical graph summary (S, P+, P-, H).
///
/// Ids 0..subnode_count-1 are the leaf supernodes {u}; merged supernodes take
/// fresh ascending ids. A pair of supernodes carries at most one signed edge,
/// so P+ and P- are disjoint by construction. Removed supernodes keep their id
/// slot (alive() == false) until compact() renumbers.
class HierarchicalSummary {
  public:
    HierarchicalSummary() = default;
    explicit HierarchicalSummary(std::size_t subnode_count);

    /// S = singletons, P+ = E, P- = H = {}.
    static HierarchicalSummary trivial(const InputGraph &g);

    /// Forest over ids 0..supernode_count-1 from (parent, child) pairs, no
    /// super-edges yet. Throws InvalidSummary unless the pairs form a forest in
    /// which leaves are exactly 0..subnode_count-1 and every internal node has a child.
    static HierarchicalSummary from_forest(std::size_t subnode_count, std::size_t supernode_count,
                                           std::span<const SupernodePair> h_edges);

    [[nodiscard]] std::size_t subnode_count() const { return subnode_count_; }
    /// Number of id slots handed out so far (alive or not).
    [[nodiscard]] std::size_t id_bound() const { return parent_.size(); }
    [[nodiscard]] std::size_t supernode_count() const { return alive_count_; }

    [[nodiscard]] bool alive(SupernodeId x) const { return x < alive_.size() && alive_[x]; }
    [[nodiscard]] bool is_leaf(SupernodeId x) const { return x < subnode_count_; }
    [[nodiscard]] SupernodeId parent(SupernodeId x) const { return parent_[x]; }
    [[nodiscard]] bool is_root(SupernodeId x) const { return alive(x) && parent_[x] == kNoSupernode; }
    [[nodiscard]] std::span<const SupernodeId> children(SupernodeId x) const { return children_[x]; }
    [[nodiscard]] std::size_t subtree_size(SupernodeId x) const { return subtree_size_[x]; }
    [[nodiscard]] SupernodeId root_of(SupernodeId x) const;
    /// True iff the leaf set of x contains that of y (y is x or one of its descendants).
    [[nodiscard]] bool contains(SupernodeId x, SupernodeId y) const;
    [[nodiscard]] std::size_t depth(SupernodeId x) const;
    [[nodiscard]] std::size_t height(SupernodeId x) const;

    /// Roots in ascending id order.
    [[nodiscard]] std::vector<SupernodeId> roots() const;

    /// New root whose children are the given (distinct, alive) roots.
    SupernodeId add_supernode(std::span<const SupernodeId> children);
    /// Removes an internal supernode without incident edges. Its children move
    /// to its parent, or become roots if it was a root.
    void splice(SupernodeId x);

    [[nodiscard]] int edge_sign(SupernodeId a, SupernodeId b) const;
    /// sign in {-1, 0, +1}; 0 removes the edge.
    void set_edge(SupernodeId a, SupernodeId b, int sign);
    [[nodiscard]] std::span<const Incidence> incident(SupernodeId x) const { return incident_[x]; }

    [[nodiscard]] std::size_t p_edge_count() const { return p_count_; }
    [[nodiscard]] std::size_t n_edge_count() const { return n_count_; }
    [[nodiscard]] std::size_t h_edge_count() const { return h_count_; }
    [[nodiscard]] std::size_t cost() const { return p_count_ + n_count_ + h_count_; }

    template <typename F>
    void for_each_leaf(SupernodeId x, F &&f) const {
        if (is_leaf(x)) {
            f(static_cast<NodeId>(x));
            return;
        }
        std::vector<SupernodeId> stack{x};
        while (!stack.empty()) {
            const auto y = stack.back();
            stack.pop_back();
            if (is_leaf(y)) {
                f(static_cast<NodeId>(y));
            } else {
                stack.insert(stack.end(), children_[y].begin(), children_[y].end());
            }
        }
    }

    /// Visits x and every supernode below it.
    template <typename F>
    void for_each_in_tree(SupernodeId x, F &&f) const {
        std::vector<SupernodeId> stack{x};
        while (!stack.empty()) {
            const auto y = stack.back();
            stack.pop_back();
            f(y);
            stack.insert(stack.end(), children_[y].begin(), children_[y].end());
        }
    }

    [[nodiscard]] std::vector<NodeId> leaves(SupernodeId x) const;

    /// Edges of one sign as (a, b), a <= b, sorted.
    [[nodiscard]] std::vector<SupernodePair> sorted_edges(int sign) const;
    /// (parent, child) pairs, sorted.
    [[nodiscard]] std::vector<SupernodePair> sorted_h_edges() const;

    /// Renumbers alive internal supernodes to subnode_count.. in ascending old-id order.
    void compact();

    /// Forest consistency: parent/children agree, no cycles, subtree sizes add
    /// up, leaves partition exactly. Throws InvalidSummary on failure.
    void check_structure() const;

    /// Structural equality: same alive supernodes, parents and signed edges.
    friend bool operator==(const HierarchicalSummary &a, const HierarchicalSummary &b);

  private:
    std::size_t subnode_count_{0};
    std::size_t alive_count_{0};
    std::vector<SupernodeId> parent_;
    std::vector<std::vector<SupernodeId>> children_;
    std::vector<std::size_t> subtree_size_;
    std::vector<bool> alive_;
    std::vector<std::vector<Incidence>> incident_;
    std::size_t p_count_{0};
    std::size_t n_count_{0};
    std::size_t h_count_{0};

    void adjust_count(int sign, int delta);
};

// ---------------------------------------------------------------------------
// Costs

/// |P+| + |P-| + |H|.
[[nodiscard]] std::size_t cost(const HierarchicalSummary &s);

struct CostComponents {
    std::size_t h_cost{0};    ///< h-edges inside A's tree
    std::size_t p_cost{0};    ///< p/n-edges with at least one endpoint in A's tree, each counted once
    [[nodiscard]] std::size_t total() const { return h_cost + p_cost; }
};

/// Per-root cost split. Throws std::domain_error if a is not a root.
[[nodiscard]] CostComponents cost_components(const HierarchicalSummary &s, SupernodeId a);

/// p/n-edges with one endpoint in S_a and the other in S_b (a == b counts the
/// edges inside one tree). Throws std::domain_error for non-roots.
[[nodiscard]] std::size_t pair_cost(const HierarchicalSummary &s, SupernodeId a, SupernodeId b);

// ---------------------------------------------------------------------------
// Decoding

/// Nonzero net counts per subnode pair (u < v), sorted, obtained by expanding
/// every super-edge into the block of subnode pairs it covers.
[[nodiscard]] std::vector<std::pair<Edge, int>> expand_net_counts(const HierarchicalSummary &s);

/// Full decompression. Throws InvalidSummary naming the smallest pair whose net is not 0 or 1.
[[nodiscard]] InputGraph decode(const HierarchicalSummary &s);

/// Partial decompression: neighbors of subnode v, ascending, computed from
/// v's ancestor chain only.
[[nodiscard]] std::vector<NodeId> neighbors_of(const HierarchicalSummary &s, NodeId v);

/// Shortest input-graph distance between any subnode of a and any of b;
/// nullopt when disconnected.
[[nodiscard]] std::optional<std::size_t> super_distance(const HierarchicalSummary &s, const InputGraph &g,
                                                        SupernodeId a, SupernodeId b);

struct LosslessReport {
    bool ok{true};
    std::size_t violation_count{0};
    std::vector<std::string> violations;    ///< first few, human readable
};

/// Checks the forest, the 0/1 net restriction and decode(s) == g.
[[nodiscard]] LosslessReport verify_lossless(const HierarchicalSummary &s, const InputGraph &g,
                                             std::size_t max_reported = 10);

// ---------------------------------------------------------------------------
// Metrics

/// cost / |E|. Throws std::domain_error for an edgeless graph.
[[nodiscard]] Fraction relative_size(const HierarchicalSummary &s, const InputGraph &g);

struct EdgeComposition {
    double p_fraction{0};
    double n_fraction{0};
    double h_fraction{0};
};

/// Shares of p-, n- and h-edges in the cost. Throws std::domain_error on zero cost.
[[nodiscard]] EdgeComposition edge_composition(const HierarchicalSummary &s);

[[nodiscard]] std::size_t max_tree_height(const HierarchicalSummary &s);
[[nodiscard]] double mean_leaf_depth(const HierarchicalSummary &s);

// ---------------------------------------------------------------------------
// Summary file format

inline constexpr const char *kSummaryMagic = "SLUGGER-HSUM v1";

void serialize(const HierarchicalSummary &s, std::ostream &out);
[[nodiscard]] std::string serialize(const HierarchicalSummary &s);
/// Throws FormatError on a bad header, truncation, bad counts or dangling ids.
[[nodiscard]] HierarchicalSummary deserialize(std::istream &in);
[[nodiscard]] HierarchicalSummary deserialize(const std::string &text);

}    // namespace slugger
