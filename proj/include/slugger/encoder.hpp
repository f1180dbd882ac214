#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slugger/summary.hpp"

namespace slugger {

// Re-encoding of p/n-edges around a merge.
//
// A panel is a handful of supernodes: the merged root, its children and
// grandchildren (the "yellow" part), optionally followed by another root and
// its children (the "orange" part). The frontier nodes (panel nodes with no
// child inside the panel) partition the panel's subnodes into blocks, and every
// adjustable pair of panel nodes covers each block either fully or not at all.
// Re-encoding replaces the edges on adjustable pairs by any assignment whose
// signed coverage of every block is unchanged; that keeps every subnode pair's
// net count, and hence the decoded graph, intact.

/// Panel structure without supernode ids. Indices are panel positions.
struct PanelShape {
    std::vector<int> parent;        ///< panel index of the parent, -1 for a panel root
    std::vector<bool> singleton;    ///< node is a leaf supernode (one subnode)
    std::size_t yellow_count{0};    ///< positions [0, yellow_count) are yellow, the rest orange

    [[nodiscard]] std::size_t size() const { return parent.size(); }
    /// Orange nodes present: only yellow x orange pairs are adjustable.
    [[nodiscard]] bool is_cross() const { return yellow_count < parent.size(); }

    friend bool operator==(const PanelShape &, const PanelShape &) = default;
};

/// Derived coverage tables for one shape.
class PanelLayout {
  public:
    explicit PanelLayout(PanelShape shape);

    [[nodiscard]] const PanelShape &shape() const { return shape_; }
    [[nodiscard]] std::size_t size() const { return shape_.size(); }
    [[nodiscard]] const std::vector<int> &frontier() const { return frontier_; }
    [[nodiscard]] bool is_frontier(int i) const { return is_frontier_[static_cast<std::size_t>(i)]; }
    /// Bitmask over panel indices of the frontier nodes inside node i.
    [[nodiscard]] std::uint32_t cover(int i) const { return cover_[static_cast<std::size_t>(i)]; }
    /// Adjustable pairs (i <= j), in ascending lexicographic order.
    [[nodiscard]] const std::vector<std::pair<int, int>> &pairs() const { return pairs_; }
    /// Index into pairs(), or -1 if {i, j} is not adjustable.
    [[nodiscard]] int pair_index(int i, int j) const;
    /// Frontier pairs (x <= y) covered by at least one adjustable pair.
    [[nodiscard]] const std::vector<std::pair<int, int>> &blocks() const { return blocks_; }
    /// Bitmask over blocks() covered by pair p.
    [[nodiscard]] std::uint32_t pair_blocks(std::size_t p) const { return pair_blocks_[p]; }
    /// A singleton frontier node's self-block holds no subnode pair and constrains nothing.
    [[nodiscard]] bool constrained(std::size_t block) const { return constrained_[block]; }

  private:
    PanelShape shape_;
    std::vector<int> frontier_;
    std::vector<bool> is_frontier_;
    std::vector<std::uint32_t> cover_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> pair_lookup_;
    std::vector<std::pair<int, int>> blocks_;
    std::vector<std::uint32_t> pair_blocks_;
    std::vector<bool> constrained_;
};

/// Shared per-thread layout for a shape; the reference stays valid for the thread's lifetime.
[[nodiscard]] const PanelLayout &panel_layout(const PanelShape &shape);

/// Panel bound to supernode ids of a summary.
struct Panel {
    std::vector<SupernodeId> nodes;
    PanelShape shape;
};

/// Required signed coverage of every frontier block by the adjustable pairs.
struct DeltaSignature {
    PanelShape shape;
    std::vector<int> delta;    ///< size() x size(), symmetric; frontier entries only

    static DeltaSignature zero(PanelShape shape);
    [[nodiscard]] int at(int x, int y) const { return delta[static_cast<std::size_t>(x) * shape.size() + y]; }
    void set(int x, int y, int value);
    /// Adds sign to every block covered by the adjustable pair {i, j}.
    void add_edge(const PanelLayout &layout, int i, int j, int sign);
};

/// Signs (+1 p-edge, -1 n-edge, 0 none) per adjustable pair in PanelLayout::pairs() order.
struct EncodingAssignment {
    std::vector<std::int8_t> signs;

    [[nodiscard]] std::size_t cardinality() const;
    [[nodiscard]] std::size_t negatives() const;
    friend bool operator==(const EncodingAssignment &, const EncodingAssignment &) = default;
};

[[nodiscard]] bool realizes(const PanelLayout &layout, const DeltaSignature &sig, const EncodingAssignment &a);

// ---------------------------------------------------------------------------

struct MemoEntry {
    std::vector<std::int8_t> signs;
    std::uint32_t cardinality{0};
};

struct MemoStats {
    std::size_t entries{0};
    std::size_t bytes_estimate{0};
    double hit_rate{0.0};
    std::size_t hits{0};
    std::size_t misses{0};
    std::size_t bypassed{0};         ///< signatures outside the delta band, solved without the table
    double solve_seconds{0.0};       ///< time spent in cold solves
};

/// Optimal encodings keyed by canonical (shape, deltas). Lookups take a shared
/// lock, insertion an exclusive one.
class MemoTable {
  public:
    /// Signatures with a constrained |delta| above the band bypass the table.
    static constexpr int kDeltaBand = 4;

    MemoTable() = default;
    MemoTable(const MemoTable &) = delete;
    MemoTable &operator=(const MemoTable &) = delete;

    [[nodiscard]] std::optional<MemoEntry> find(const std::string &key) const;
    void insert(const std::string &key, MemoEntry entry);
    void record_bypass() { bypassed_.fetch_add(1, std::memory_order_relaxed); }
    void record_solve_time(double seconds);

    [[nodiscard]] MemoStats stats() const;
    /// One line per entry: hex key, cardinality. Sorted by key.
    void dump(std::ostream &out) const;
    void clear();

  private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, MemoEntry> table_;
    mutable std::atomic<std::size_t> hits_{0};
    mutable std::atomic<std::size_t> misses_{0};
    std::atomic<std::size_t> bypassed_{0};
    std::atomic<std::int64_t> solve_nanos_{0};
};

[[nodiscard]] MemoStats memo_stats(const MemoTable &memo);

// ---------------------------------------------------------------------------

/// Panel around `merged` (a root with children): the root, its children and
/// grandchildren; with case2_root, that root and its children are appended as
/// the orange part. Throws std::domain_error if the panel would exceed 7 + 3
/// nodes or case2_root has no edge into the yellow part.
[[nodiscard]] Panel build_panel(const HierarchicalSummary &s, SupernodeId merged,
                                std::optional<SupernodeId> case2_root = std::nullopt);

/// Coverage of the frontier blocks by the current edges on adjustable pairs.
[[nodiscard]] DeltaSignature signature_of(const HierarchicalSummary &s, const Panel &panel);

/// Minimum-cardinality assignment realizing sig; ties go to fewer n-edges, then
/// to the lexicographically smallest set of pairs in canonical panel order.
/// Consults and fills memo. Throws std::logic_error for an unrealizable signature.
[[nodiscard]] EncodingAssignment min_encoding(const DeltaSignature &sig, MemoTable &memo);
/// Same result without touching any table.
[[nodiscard]] EncodingAssignment min_encoding_cold(const DeltaSignature &sig);

/// Replaces the edges on the panel's adjustable pairs by the assignment.
void apply_encoding(HierarchicalSummary &s, const Panel &panel, const EncodingAssignment &assignment);

/// Exhaustive search in order of increasing cardinality, for panels of at most
/// 5 nodes. Throws std::invalid_argument for larger panels.
[[nodiscard]] EncodingAssignment brute_force_min_encoding(const DeltaSignature &sig);

}    // namespace slugger
