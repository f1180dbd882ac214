#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "slugger/common.hpp"
#include "slugger/encoder.hpp"
#include "slugger/graph.hpp"
#include "slugger/summary.hpp"

namespace slugger {

struct SluggerConfig {
    std::size_t iterations{20};
    std::size_t max_candidate_size{500};
    std::size_t max_shingle_rounds{10};
    std::optional<std::size_t> height_bound;
    std::uint64_t seed{0};
    bool pruning_enabled{true};

    /// Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

/// Merge threshold: 1/(1+t) for t < T, 0 at t = T. Throws std::domain_error unless 1 <= t <= T.
[[nodiscard]] Fraction theta(std::size_t t, std::size_t T);

/// Min of the seeded subnode hash over the closed neighborhoods of root's leaves.
[[nodiscard]] std::uint64_t shingle(const HierarchicalSummary &s, const InputGraph &g, SupernodeId root,
                                    std::uint64_t hash_seed);

using CandidateSet = std::vector<SupernodeId>;

/// Partition of the current roots into groups of at most cfg.max_candidate_size;
/// singleton groups are dropped.
[[nodiscard]] std::vector<CandidateSet> generate_candidates(const HierarchicalSummary &s, const InputGraph &g,
                                                            std::size_t t, const SluggerConfig &cfg);

/// Saving of merging roots a and b; nullopt stands for minus infinity (both roots cost nothing).
using Saving = std::optional<Fraction>;

/// Merge driver holding a summary plus the per-root bookkeeping the greedy
/// search needs: union-find root lookup, edge cost per tree, tree sizes and heights.
class SluggerEngine {
  public:
    SluggerEngine(const InputGraph &g, HierarchicalSummary s, MemoTable &memo, SluggerConfig cfg = {});

    [[nodiscard]] const HierarchicalSummary &summary() const { return s_; }
    [[nodiscard]] HierarchicalSummary release() { return std::move(s_); }
    [[nodiscard]] const InputGraph &graph() const { return *g_; }
    [[nodiscard]] const SluggerConfig &config() const { return cfg_; }
    [[nodiscard]] MemoTable &memo() const { return *memo_; }

    [[nodiscard]] SupernodeId find_root(SupernodeId x) const;
    /// p/n-edges incident to the tree of root r.
    [[nodiscard]] std::size_t tree_edge_cost(SupernodeId r) const { return pcost_[r]; }
    [[nodiscard]] std::size_t tree_node_count(SupernodeId r) const { return tree_nodes_[r]; }
    [[nodiscard]] std::size_t tree_height(SupernodeId r) const { return height_[r]; }

    /// Cost of the root a by itself: h-edges in its tree plus incident p/n-edges.
    [[nodiscard]] std::size_t root_cost(SupernodeId a) const { return tree_nodes_[a] - 1 + pcost_[a]; }
    /// p/n-edges between the trees of roots a and b.
    [[nodiscard]] std::size_t pair_edge_cost(SupernodeId a, SupernodeId b) const;
    /// Cost of the root a∪b after merge_and_update(a, b), computed without mutating anything.
    [[nodiscard]] std::size_t merged_cost(SupernodeId a, SupernodeId b) const;
    [[nodiscard]] bool height_allows(SupernodeId a, SupernodeId b) const;
    [[nodiscard]] Saving saving(SupernodeId a, SupernodeId b) const;

    /// Merges roots a and b and re-encodes around the new root. Returns nullopt
    /// (and changes nothing) if the height bound forbids the merge.
    std::optional<SupernodeId> merge_and_update(SupernodeId a, SupernodeId b);

    /// One greedy pass over a candidate set; returns the number of merges.
    std::size_t merge_step(const CandidateSet &d, std::size_t t, std::size_t set_index);

    [[nodiscard]] std::vector<CandidateSet> candidates(std::size_t t) const;

  private:
    struct PartEdge {
        SupernodeId from;
        SupernodeId to;
        SupernodeId to_root;
        std::int8_t sign;
    };
    struct RootSide;

    const InputGraph *g_;
    HierarchicalSummary s_;
    MemoTable *memo_;
    SluggerConfig cfg_;
    mutable std::vector<SupernodeId> uf_;
    std::vector<std::size_t> pcost_;
    std::vector<std::size_t> tree_nodes_;
    std::vector<std::size_t> height_;

    void put_edge(SupernodeId a, SupernodeId b, int sign);
    void reencode(const Panel &panel);
    [[nodiscard]] RootSide side_of(SupernodeId a) const;
    [[nodiscard]] std::size_t merged_cost(const RootSide &a, const RootSide &b, std::size_t pair_ab) const;
    [[nodiscard]] Saving saving(const RootSide &a, const RootSide &b, std::size_t pair_ab) const;
};

// Free-function forms over a plain summary (each builds a throwaway engine).
[[nodiscard]] Saving saving(const HierarchicalSummary &s, SupernodeId a, SupernodeId b, MemoTable &memo);
std::optional<SupernodeId> merge_and_update(HierarchicalSummary &s, SupernodeId a, SupernodeId b, MemoTable &memo,
                                            std::optional<std::size_t> height_bound = std::nullopt);
std::size_t merge_step(HierarchicalSummary &s, const InputGraph &g, const CandidateSet &d, std::size_t t,
                       std::size_t set_index, const SluggerConfig &cfg, MemoTable &memo);

// ---------------------------------------------------------------------------
// Pruning. Every step keeps decode(s) and never increases cost.

/// Splices out internal supernodes without incident p/n-edges.
void prune_step1(HierarchicalSummary &s);
/// Pushes a root's single non-self edge down to its children and drops the root.
void prune_step2(HierarchicalSummary &s);
/// Re-encodes each root pair flat when that is cheaper than its current edges.
void prune_step3(HierarchicalSummary &s, const InputGraph &g);
/// Steps 1-3, then compact().
void prune(HierarchicalSummary &s, const InputGraph &g);

// ---------------------------------------------------------------------------

struct IterationTrace {
    std::size_t t{0};
    Fraction theta;
    std::size_t candidate_sets{0};
    std::size_t merges{0};
    std::size_t cost{0};
    double seconds{0.0};
};

struct SummarizeReport {
    std::vector<IterationTrace> iterations;
    std::size_t merges{0};
    std::size_t cost_before_prune{0};
    std::size_t prune_step_cost[3]{0, 0, 0};    ///< cost after each prune step
    double candidate_seconds{0.0};
    double merge_seconds{0.0};
    double prune_seconds{0.0};
    MemoStats memo;
};

struct SummarizeHooks {
    /// Called after every merge_step with (engine, t, set index).
    std::function<void(const SluggerEngine &, std::size_t, std::size_t)> after_merge_step;
    /// Called at the end of each iteration.
    std::function<void(const SluggerEngine &, std::size_t)> after_iteration;
    /// One progress line per iteration when set.
    std::ostream *progress{nullptr};
};

/// Full pipeline: trivial summary, cfg.iterations greedy iterations, pruning.
[[nodiscard]] HierarchicalSummary summarize(const InputGraph &g, const SluggerConfig &cfg,
                                            SummarizeReport *report = nullptr, const SummarizeHooks *hooks = nullptr,
                                            MemoTable *memo = nullptr);

}    // namespace slugger
