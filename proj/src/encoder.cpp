#include "slugger/encoder.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace slugger {

namespace {

constexpr std::size_t kMaxPanel = 12;
constexpr std::size_t kMaxBlocks = 32;

void check_shape(const PanelShape &shape) {
    const auto n = shape.size();
    if (n == 0 || n > kMaxPanel || shape.singleton.size() != n || shape.yellow_count == 0 || shape.yellow_count > n) {
        throw std::invalid_argument("malformed panel shape");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = shape.parent[i];
        if (p < -1 || p >= static_cast<int>(i)) {
            throw std::invalid_argument("panel parents must precede their children");
        }
        if (p >= 0 && (static_cast<std::size_t>(p) < shape.yellow_count) != (i < shape.yellow_count)) {
            throw std::invalid_argument("panel parent crosses the yellow/orange boundary");
        }
    }
}

std::vector<std::vector<int>> child_lists(const PanelShape &shape) {
    std::vector<std::vector<int>> out(shape.size());
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (shape.parent[i] >= 0) {
            out[static_cast<std::size_t>(shape.parent[i])].push_back(static_cast<int>(i));
        }
    }
    return out;
}

std::string shape_bytes(const PanelShape &shape) {
    std::string key;
    key.reserve(2 + 2 * shape.size());
    key.push_back(static_cast<char>(shape.size()));
    key.push_back(static_cast<char>(shape.yellow_count));
    for (std::size_t i = 0; i < shape.size(); ++i) {
        key.push_back(static_cast<char>(shape.parent[i] + 1));
        key.push_back(static_cast<char>(shape.singleton[i] ? 1 : 0));
    }
    return key;
}

// ---------------------------------------------------------------------------
// Exact search

class Solver {
  public:
    Solver(const PanelLayout &layout, const DeltaSignature &sig) : layout_(layout) {
        const auto &blocks = layout.blocks();
        target_.resize(blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            target_[b] = sig.at(blocks[b].first, blocks[b].second);
        }
        residual_ = target_;
        remaining_.assign(blocks.size(), 0);
        const auto &pairs = layout.pairs();
        blocks_of_.resize(pairs.size());
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                if (layout.pair_blocks(p) >> b & 1U) {
                    blocks_of_[p].push_back(static_cast<int>(b));
                    ++remaining_[b];
                }
            }
        }
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const bool flat = layout.is_frontier(pairs[p].first) && layout.is_frontier(pairs[p].second);
            if (!flat) {
                order_.push_back(static_cast<int>(p));
            }
        }
        flat_start_ = order_.size();
        has_flat_.assign(blocks.size(), false);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const bool flat = layout.is_frontier(pairs[p].first) && layout.is_frontier(pairs[p].second);
            if (flat) {
                order_.push_back(static_cast<int>(p));
                for (const auto b : blocks_of_[p]) {
                    has_flat_[static_cast<std::size_t>(b)] = true;
                }
            }
        }
        suffix_cover_.assign(order_.size() + 1, 0);
        for (std::size_t k = order_.size(); k-- > 0;) {
            int c = 0;
            for (const auto b : blocks_of_[static_cast<std::size_t>(order_[k])]) {
                c += layout.constrained(static_cast<std::size_t>(b)) ? 1 : 0;
            }
            suffix_cover_[k] = std::max(suffix_cover_[k + 1], c);
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (layout.constrained(b) && residual_[b] != 0) {
                ++open_nonzero_;
                if (remaining_[b] == 0) {
                    infeasible_ = true;
                }
            }
        }
        current_.assign(pairs.size(), 0);
    }

    std::optional<std::vector<std::int8_t>> run() {
        if (!infeasible_) {
            search(0, 0, 0);
        }
        if (!found_) {
            return std::nullopt;
        }
        return best_;
    }

  private:
    const PanelLayout &layout_;
    std::vector<int> target_;
    std::vector<int> residual_;
    std::vector<int> remaining_;
    std::vector<std::vector<int>> blocks_of_;
    std::vector<int> order_;
    std::vector<int> suffix_cover_;
    std::vector<std::int8_t> current_;
    std::vector<std::int8_t> best_;
    std::size_t best_card_{std::numeric_limits<std::size_t>::max()};
    std::size_t best_neg_{0};
    std::size_t best_mismatch_{0};
    std::vector<bool> has_flat_;
    std::size_t flat_start_{0};
    int open_nonzero_{0};
    bool infeasible_{false};
    static constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max() / 2;
    bool found_{false};

    void assign(std::size_t p, int v) {
        for (const auto b : blocks_of_[p]) {
            const auto bi = static_cast<std::size_t>(b);
            if (layout_.constrained(bi)) {
                open_nonzero_ -= residual_[bi] != 0 ? 1 : 0;
                residual_[bi] -= v;
                open_nonzero_ += residual_[bi] != 0 ? 1 : 0;
            } else {
                residual_[bi] -= v;
            }
            --remaining_[bi];
        }
        current_[p] = static_cast<std::int8_t>(v);
    }

    void unassign(std::size_t p) {
        const int v = current_[p];
        for (const auto b : blocks_of_[p]) {
            const auto bi = static_cast<std::size_t>(b);
            if (layout_.constrained(bi)) {
                open_nonzero_ -= residual_[bi] != 0 ? 1 : 0;
                residual_[bi] += v;
                open_nonzero_ += residual_[bi] != 0 ? 1 : 0;
            } else {
                residual_[bi] += v;
            }
            ++remaining_[bi];
        }
        current_[p] = 0;
    }

    // Every pair's flat twin comes last in order_, so while k < flat_start_ a
    // block with remaining_ == 1 can only still be fixed by its own flat pair.
    [[nodiscard]] std::size_t lower_bound(std::size_t k) const {
        if (open_nonzero_ == 0) {
            return 0;
        }
        if (k >= flat_start_) {
            return static_cast<std::size_t>(open_nonzero_);
        }
        std::size_t closed = 0;
        int open = 0;
        for (std::size_t b = 0; b < residual_.size(); ++b) {
            if (!layout_.constrained(b) || residual_[b] == 0) {
                continue;
            }
            const auto r = residual_[b] < 0 ? -residual_[b] : residual_[b];
            if (r > remaining_[b]) {
                return kInfeasible;
            }
            if (remaining_[b] == 1 && has_flat_[b]) {
                ++closed;
            } else {
                ++open;
            }
        }
        if (open == 0) {
            return closed;
        }
        const int c = suffix_cover_[k];
        if (c == 0) {
            return kInfeasible;
        }
        return closed + static_cast<std::size_t>((open + c - 1) / c);
    }

    // True if current_ beats best_ among assignments of equal cardinality.
    [[nodiscard]] bool better_tail(std::size_t neg, std::size_t mismatch) const {
        if (neg != best_neg_) {
            return neg < best_neg_;
        }
        if (mismatch != best_mismatch_) {
            return mismatch < best_mismatch_;
        }
        // Earliest pair index where exactly one of the two is nonzero decides.
        for (std::size_t p = 0; p < current_.size(); ++p) {
            const bool a = current_[p] != 0;
            const bool b = best_[p] != 0;
            if (a != b) {
                return a;
            }
        }
        for (std::size_t p = 0; p < current_.size(); ++p) {
            if (current_[p] != best_[p]) {
                return current_[p] > best_[p];
            }
        }
        return false;
    }

    void leaf(std::size_t nnz, std::size_t neg) {
        std::size_t mismatch = 0;
        for (std::size_t b = 0; b < residual_.size(); ++b) {
            if (!layout_.constrained(b) && residual_[b] != 0) {
                ++mismatch;
            }
        }
        if (!found_ || nnz < best_card_ || (nnz == best_card_ && better_tail(neg, mismatch))) {
            found_ = true;
            best_ = current_;
            best_card_ = nnz;
            best_neg_ = neg;
            best_mismatch_ = mismatch;
        }
    }

    void search(std::size_t k, std::size_t nnz, std::size_t neg) {
        const auto lb = lower_bound(k);
        if (lb >= kInfeasible) {
            return;
        }
        if (found_ && (nnz + lb > best_card_ || (nnz + lb == best_card_ && neg > best_neg_))) {
            return;
        }
        if (k == order_.size()) {
            leaf(nnz, neg);
            return;
        }
        const auto p = static_cast<std::size_t>(order_[k]);
        bool forced = false;
        int need = 0;
        for (const auto b : blocks_of_[p]) {
            const auto bi = static_cast<std::size_t>(b);
            if (remaining_[bi] == 1 && layout_.constrained(bi)) {
                if (forced && need != residual_[bi]) {
                    return;
                }
                forced = true;
                need = residual_[bi];
            }
        }
        if (forced) {
            if (need < -1 || need > 1) {
                return;
            }
            assign(p, need);
            search(k + 1, nnz + (need != 0 ? 1 : 0), neg + (need < 0 ? 1 : 0));
            unassign(p);
            return;
        }
        for (const int v : {0, 1, -1}) {
            if (v != 0 && found_ && nnz + 1 > best_card_) {
                break;
            }
            assign(p, v);
            search(k + 1, nnz + (v != 0 ? 1 : 0), neg + (v < 0 ? 1 : 0));
            unassign(p);
        }
    }
};

// ---------------------------------------------------------------------------
// Canonical relabeling

struct Canonical {
    std::string key;
    std::vector<int> order;    // canonical position -> original index
    DeltaSignature sig;
};

Canonical canonicalize(const DeltaSignature &sig) {
    const auto &shape = sig.shape;
    const auto n = shape.size();
    const auto kids = child_lists(shape);
    std::vector<int> permuted;
    for (std::size_t i = 0; i < n; ++i) {
        if (kids[i].size() >= 2 && kids[i].size() <= 4) {
            permuted.push_back(static_cast<int>(i));
        }
    }
    std::vector<std::vector<std::vector<int>>> choices(permuted.size());
    for (std::size_t c = 0; c < permuted.size(); ++c) {
        auto v = kids[static_cast<std::size_t>(permuted[c])];
        std::sort(v.begin(), v.end());
        do {
            choices[c].push_back(v);
        } while (std::next_permutation(v.begin(), v.end()));
    }
    std::vector<bool> frontier(n);
    for (std::size_t i = 0; i < n; ++i) {
        frontier[i] = kids[i].empty();
    }

    std::vector<std::size_t> pick(permuted.size(), 0);
    std::vector<std::vector<int>> child_order = kids;
    std::vector<int> order;
    std::vector<int> pos(n);
    std::string key;
    Canonical best;
    bool have = false;
    while (true) {
        for (std::size_t c = 0; c < permuted.size(); ++c) {
            child_order[static_cast<std::size_t>(permuted[c])] = choices[c][pick[c]];
        }
        order.clear();
        for (std::size_t r = 0; r < n; ++r) {
            if (shape.parent[r] != -1) {
                continue;
            }
            const auto start = order.size();
            order.push_back(static_cast<int>(r));
            for (std::size_t q = start; q < order.size(); ++q) {
                const auto &co = child_order[static_cast<std::size_t>(order[q])];
                order.insert(order.end(), co.begin(), co.end());
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        }
        key.clear();
        key.push_back(static_cast<char>(n));
        key.push_back(static_cast<char>(shape.yellow_count));
        for (std::size_t i = 0; i < n; ++i) {
            const auto o = static_cast<std::size_t>(order[i]);
            const int p = shape.parent[o];
            key.push_back(static_cast<char>(p < 0 ? 0 : pos[static_cast<std::size_t>(p)] + 1));
            key.push_back(static_cast<char>(shape.singleton[o] ? 1 : 0));
        }
        for (std::size_t x = 0; x < n; ++x) {
            const auto ox = order[x];
            if (!frontier[static_cast<std::size_t>(ox)]) {
                continue;
            }
            for (std::size_t y = x; y < n; ++y) {
                const auto oy = order[y];
                if (frontier[static_cast<std::size_t>(oy)]) {
                    key.push_back(static_cast<char>(sig.at(ox, oy)));
                }
            }
        }
        if (!have || key < best.key) {
            have = true;
            best.key = key;
            best.order = order;
        }
        std::size_t c = 0;
        for (; c < permuted.size(); ++c) {
            if (++pick[c] < choices[c].size()) {
                break;
            }
            pick[c] = 0;
        }
        if (c == permuted.size()) {
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        pos[static_cast<std::size_t>(best.order[i])] = static_cast<int>(i);
    }
    PanelShape cs;
    cs.parent.resize(n);
    cs.singleton.resize(n);
    cs.yellow_count = shape.yellow_count;
    for (std::size_t i = 0; i < n; ++i) {
        const auto o = static_cast<std::size_t>(best.order[i]);
        cs.parent[i] = shape.parent[o] < 0 ? -1 : pos[static_cast<std::size_t>(shape.parent[o])];
        cs.singleton[i] = shape.singleton[o];
    }
    best.sig = DeltaSignature::zero(std::move(cs));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            best.sig.delta[x * n + y] = sig.at(best.order[x], best.order[y]);
        }
    }
    return best;
}

void check_signature(const DeltaSignature &sig) {
    check_shape(sig.shape);
    if (sig.delta.size() != sig.shape.size() * sig.shape.size()) {
        throw std::invalid_argument("signature delta matrix has the wrong size");
    }
}

bool in_band(const PanelLayout &layout, const DeltaSignature &sig) {
    for (const auto &[x, y] : layout.blocks()) {
        if (std::abs(sig.at(x, y)) > MemoTable::kDeltaBand) {
            return false;
        }
    }
    return true;
}

std::vector<std::int8_t> solve_or_throw(const PanelLayout &layout, const DeltaSignature &sig) {
    auto result = Solver(layout, sig).run();
    if (!result) {
        throw std::logic_error("encoder: delta signature has no realizing assignment");
    }
    return *result;
}

EncodingAssignment encode(const DeltaSignature &sig, MemoTable *memo) {
    check_signature(sig);
    const auto canon = canonicalize(sig);
    const auto &cl = panel_layout(canon.sig.shape);

    std::vector<std::int8_t> signs;
    const bool cacheable = memo != nullptr && in_band(cl, canon.sig);
    if (cacheable) {
        if (auto hit = memo->find(canon.key)) {
            signs = std::move(hit->signs);
        }
    }
    if (signs.empty()) {
        const auto start = std::chrono::steady_clock::now();
        signs = solve_or_throw(cl, canon.sig);
        if (memo != nullptr) {
            memo->record_solve_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            if (cacheable) {
                MemoEntry entry;
                entry.signs = signs;
                entry.cardinality = static_cast<std::uint32_t>(
                    std::count_if(signs.begin(), signs.end(), [](std::int8_t v) { return v != 0; }));
                memo->insert(canon.key, std::move(entry));
            } else {
                memo->record_bypass();
            }
        }
    }

    const auto &ol = panel_layout(sig.shape);
    EncodingAssignment out;
    out.signs.assign(ol.pairs().size(), 0);
    const auto &cpairs = cl.pairs();
    for (std::size_t p = 0; p < cpairs.size(); ++p) {
        if (signs[p] == 0) {
            continue;
        }
        const auto a = canon.order[static_cast<std::size_t>(cpairs[p].first)];
        const auto b = canon.order[static_cast<std::size_t>(cpairs[p].second)];
        out.signs[static_cast<std::size_t>(ol.pair_index(a, b))] = signs[p];
    }
    return out;
}

}    // namespace

const PanelLayout &panel_layout(const PanelShape &shape) {
    thread_local std::unordered_map<std::string, std::unique_ptr<PanelLayout>> cache;
    auto key = shape_bytes(shape);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(std::move(key), std::make_unique<PanelLayout>(shape)).first;
    }
    return *it->second;
}

// ---------------------------------------------------------------------------

PanelLayout::PanelLayout(PanelShape shape) : shape_(std::move(shape)) {
    check_shape(shape_);
    const auto n = shape_.size();
    const auto kids = child_lists(shape_);
    is_frontier_.resize(n);
    cover_.assign(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        is_frontier_[i] = kids[i].empty();
        if (is_frontier_[i]) {
            cover_[i] = 1U << i;
        }
        for (const auto c : kids[i]) {
            cover_[i] |= cover_[static_cast<std::size_t>(c)];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (is_frontier_[i]) {
            frontier_.push_back(static_cast<int>(i));
        }
    }

    pair_lookup_.assign(n * n, -1);
    const auto yc = shape_.yellow_count;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const bool ok = shape_.is_cross() ? (i < yc && j >= yc) : true;
            if (ok) {
                pair_lookup_[i * n + j] = pair_lookup_[j * n + i] = static_cast<int>(pairs_.size());
                pairs_.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }

    const auto in = [this](int node, int f) { return (cover_[static_cast<std::size_t>(node)] >> f & 1U) != 0; };
    std::vector<std::uint64_t> candidate_mask(pairs_.size(), 0);
    std::vector<std::pair<int, int>> candidates;
    for (std::size_t a = 0; a < frontier_.size(); ++a) {
        for (std::size_t b = a; b < frontier_.size(); ++b) {
            candidates.emplace_back(frontier_[a], frontier_[b]);
        }
    }
    std::vector<bool> used(candidates.size(), false);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
        const auto [i, j] = pairs_[p];
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const auto [x, y] = candidates[c];
            if ((in(i, x) && in(j, y)) || (in(i, y) && in(j, x))) {
                candidate_mask[p] |= 1ULL << c;
                used[c] = true;
            }
        }
    }
    std::vector<int> renumber(candidates.size(), -1);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (used[c]) {
            renumber[c] = static_cast<int>(blocks_.size());
            blocks_.push_back(candidates[c]);
        }
    }
    if (blocks_.size() > kMaxBlocks) {
        throw std::invalid_argument("panel has too many frontier blocks");
    }
    pair_blocks_.assign(pairs_.size(), 0);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (candidate_mask[p] >> c & 1ULL) {
                pair_blocks_[p] |= 1U << renumber[c];
            }
        }
    }
    constrained_.resize(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto [x, y] = blocks_[b];
        constrained_[b] = !(x == y && shape_.singleton[static_cast<std::size_t>(x)]);
    }
}

int PanelLayout::pair_index(int i, int j) const {
    const auto n = shape_.size();
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n) {
        return -1;
    }
    return pair_lookup_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
}

DeltaSignature DeltaSignature::zero(PanelShape shape) {
    DeltaSignature sig;
    const auto n = shape.size();
    sig.shape = std::move(shape);
    sig.delta.assign(n * n, 0);
    return sig;
}

void DeltaSignature::set(int x, int y, int value) {
    const auto n = shape.size();
    delta[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = value;
    delta[static_cast<std::size_t>(y) * n + static_cast<std::size_t>(x)] = value;
}

void DeltaSignature::add_edge(const PanelLayout &layout, int i, int j, int sign) {
    const auto p = layout.pair_index(i, j);
    if (p < 0) {
        throw std::invalid_argument("edge is not on an adjustable pair");
    }
    const auto mask = layout.pair_blocks(static_cast<std::size_t>(p));
    const auto &blocks = layout.blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (mask >> b & 1U) {
            const auto [x, y] = blocks[b];
            set(x, y, at(x, y) + sign);
        }
    }
}

std::size_t EncodingAssignment::cardinality() const {
    return static_cast<std::size_t>(std::count_if(signs.begin(), signs.end(), [](std::int8_t v) { return v != 0; }));
}

std::size_t EncodingAssignment::negatives() const {
    return static_cast<std::size_t>(std::count_if(signs.begin(), signs.end(), [](std::int8_t v) { return v < 0; }));
}

bool realizes(const PanelLayout &layout, const DeltaSignature &sig, const EncodingAssignment &a) {
    if (a.signs.size() != layout.pairs().size()) {
        return false;
    }
    auto got = DeltaSignature::zero(layout.shape());
    for (std::size_t p = 0; p < a.signs.size(); ++p) {
        if (a.signs[p] < -1 || a.signs[p] > 1) {
            return false;
        }
        if (a.signs[p] != 0) {
            got.add_edge(layout, layout.pairs()[p].first, layout.pairs()[p].second, a.signs[p]);
        }
    }
    const auto &blocks = layout.blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto [x, y] = blocks[b];
        if (layout.constrained(b) && got.at(x, y) != sig.at(x, y)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

std::optional<MemoEntry> MemoTable::find(const std::string &key) const {
    std::shared_lock lock(mutex_);
    const auto it = table_.find(key);
    if (it == table_.end()) {
        misses_.fetch_add(1, std::memory_order_relaxed);
        return std::nullopt;
    }
    hits_.fetch_add(1, std::memory_order_relaxed);
    return it->second;
}

void MemoTable::insert(const std::string &key, MemoEntry entry) {
    std::unique_lock lock(mutex_);
    table_.try_emplace(key, std::move(entry));
}

void MemoTable::record_solve_time(double seconds) {
    solve_nanos_.fetch_add(static_cast<std::int64_t>(seconds * 1e9), std::memory_order_relaxed);
}

MemoStats MemoTable::stats() const {
    std::shared_lock lock(mutex_);
    MemoStats st;
    st.entries = table_.size();
    for (const auto &[key, entry] : table_) {
        st.bytes_estimate += key.size() + entry.signs.size() + sizeof(MemoEntry);
    }
    st.hits = hits_.load(std::memory_order_relaxed);
    st.misses = misses_.load(std::memory_order_relaxed);
    st.bypassed = bypassed_.load(std::memory_order_relaxed);
    const auto lookups = st.hits + st.misses;
    st.hit_rate = lookups == 0 ? 0.0 : static_cast<double>(st.hits) / static_cast<double>(lookups);
    st.solve_seconds = static_cast<double>(solve_nanos_.load(std::memory_order_relaxed)) * 1e-9;
    return st;
}

void MemoTable::dump(std::ostream &out) const {
    std::shared_lock lock(mutex_);
    std::map<std::string, std::uint32_t> sorted;
    for (const auto &[key, entry] : table_) {
        sorted.emplace(key, entry.cardinality);
    }
    const auto flags = out.flags();
    for (const auto &[key, card] : sorted) {
        for (const auto ch : key) {
            out << std::hex << std::setw(2) << std::setfill('0') << (static_cast<unsigned>(ch) & 0xffU);
        }
        out << std::dec << ' ' << card << '\n';
    }
    out.flags(flags);
}

void MemoTable::clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
    hits_ = 0;
    misses_ = 0;
    bypassed_ = 0;
    solve_nanos_ = 0;
}

MemoStats memo_stats(const MemoTable &memo) { return memo.stats(); }

// ---------------------------------------------------------------------------

Panel build_panel(const HierarchicalSummary &s, SupernodeId merged, std::optional<SupernodeId> case2_root) {
    if (!s.is_root(merged) || s.children(merged).empty()) {
        throw std::domain_error("build_panel: merged node must be a root with children");
    }
    Panel panel;
    auto &shape = panel.shape;
    const auto push = [&](SupernodeId x, int parent) {
        panel.nodes.push_back(x);
        shape.parent.push_back(parent);
        shape.singleton.push_back(s.is_leaf(x));
    };
    push(merged, -1);
    for (const auto c : s.children(merged)) {
        push(c, 0);
    }
    const auto first_level = panel.nodes.size();
    for (std::size_t i = 1; i < first_level; ++i) {
        for (const auto g : s.children(panel.nodes[i])) {
            push(g, static_cast<int>(i));
        }
    }
    if (panel.nodes.size() > 7) {
        throw std::domain_error("build_panel: yellow panel exceeds 7 supernodes");
    }
    shape.yellow_count = panel.nodes.size();
    if (!case2_root) {
        return panel;
    }

    const auto c = *case2_root;
    if (!s.is_root(c) || c == merged) {
        throw std::domain_error("build_panel: case-2 node must be another root");
    }
    const auto orange = static_cast<int>(panel.nodes.size());
    push(c, -1);
    for (const auto ch : s.children(c)) {
        push(ch, orange);
    }
    if (panel.nodes.size() - shape.yellow_count > 3) {
        throw std::domain_error("build_panel: orange panel exceeds 3 supernodes");
    }
    bool linked = false;
    for (std::size_t i = 0; i < shape.yellow_count && !linked; ++i) {
        for (const auto &inc : s.incident(panel.nodes[i])) {
            if (std::find(panel.nodes.begin() + static_cast<std::ptrdiff_t>(shape.yellow_count), panel.nodes.end(),
                          inc.other) != panel.nodes.end()) {
                linked = true;
                break;
            }
        }
    }
    if (!linked) {
        throw std::domain_error("build_panel: case-2 root has no edge into the yellow panel");
    }
    return panel;
}

DeltaSignature signature_of(const HierarchicalSummary &s, const Panel &panel) {
    const auto &layout = panel_layout(panel.shape);
    auto sig = DeltaSignature::zero(panel.shape);
    for (const auto &[i, j] : layout.pairs()) {
        const auto sign = s.edge_sign(panel.nodes[static_cast<std::size_t>(i)], panel.nodes[static_cast<std::size_t>(j)]);
        if (sign != 0) {
            sig.add_edge(layout, i, j, sign);
        }
    }
    return sig;
}

EncodingAssignment min_encoding(const DeltaSignature &sig, MemoTable &memo) { return encode(sig, &memo); }

EncodingAssignment min_encoding_cold(const DeltaSignature &sig) { return encode(sig, nullptr); }

void apply_encoding(HierarchicalSummary &s, const Panel &panel, const EncodingAssignment &assignment) {
    const auto &layout = panel_layout(panel.shape);
    if (assignment.signs.size() != layout.pairs().size()) {
        throw std::invalid_argument("apply_encoding: assignment does not match the panel");
    }
    for (std::size_t p = 0; p < layout.pairs().size(); ++p) {
        const auto [i, j] = layout.pairs()[p];
        s.set_edge(panel.nodes[static_cast<std::size_t>(i)], panel.nodes[static_cast<std::size_t>(j)],
                   assignment.signs[p]);
    }
}

// ---------------------------------------------------------------------------
// Oracle: plain enumeration, sharing nothing with the search above but the
// pair order convention.

EncodingAssignment brute_force_min_encoding(const DeltaSignature &sig) {
    check_signature(sig);
    const auto &shape = sig.shape;
    const auto n = static_cast<int>(shape.size());
    if (n > 5) {
        throw std::invalid_argument("brute_force_min_encoding: panel larger than 5 nodes");
    }
    const auto ancestor_or_self = [&](int anc, int x) {
        for (int y = x; y != -1; y = shape.parent[static_cast<std::size_t>(y)]) {
            if (y == anc) {
                return true;
            }
        }
        return false;
    };
    std::vector<int> frontier;
    for (int i = 0; i < n; ++i) {
        if (std::none_of(shape.parent.begin(), shape.parent.end(), [i](int p) { return p == i; })) {
            frontier.push_back(i);
        }
    }
    const auto yc = static_cast<int>(shape.yellow_count);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (yc == n || (i < yc && j >= yc)) {
                pairs.emplace_back(i, j);
            }
        }
    }
    const auto np = pairs.size();

    std::vector<std::int8_t> signs(np, 0);
    std::vector<std::int8_t> best;
    bool found = false;
    std::size_t best_neg = 0;
    std::size_t best_mismatch = 0;
    std::vector<std::size_t> best_idx;

    const auto evaluate = [&](const std::vector<std::size_t> &idx) {
        std::size_t mismatch = 0;
        for (std::size_t a = 0; a < frontier.size(); ++a) {
            for (std::size_t b = a; b < frontier.size(); ++b) {
                const int x = frontier[a];
                const int y = frontier[b];
                int sum = 0;
                for (const auto p : idx) {
                    const auto [i, j] = pairs[p];
                    if ((ancestor_or_self(i, x) && ancestor_or_self(j, y)) ||
                        (ancestor_or_self(i, y) && ancestor_or_self(j, x))) {
                        sum += signs[p];
                    }
                }
                const bool free_block = x == y && shape.singleton[static_cast<std::size_t>(x)];
                if (sum != sig.at(x, y)) {
                    if (!free_block) {
                        return;
                    }
                    ++mismatch;
                }
            }
        }
        const auto neg = static_cast<std::size_t>(std::count(signs.begin(), signs.end(), std::int8_t{-1}));
        bool take = !found;
        if (!take) {
            if (neg != best_neg) {
                take = neg < best_neg;
            } else if (mismatch != best_mismatch) {
                take = mismatch < best_mismatch;
            } else if (idx != best_idx) {
                take = idx < best_idx;
            } else {
                take = signs > best;
            }
        }
        if (take) {
            found = true;
            best = signs;
            best_neg = neg;
            best_mismatch = mismatch;
            best_idx = idx;
        }
    };

    for (std::size_t k = 0; k <= np && !found; ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) {
            idx[i] = i;
        }
        while (true) {
            for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
                for (std::size_t i = 0; i < k; ++i) {
                    signs[idx[i]] = (mask >> i & 1U) ? std::int8_t{-1} : std::int8_t{1};
                }
                evaluate(idx);
                for (std::size_t i = 0; i < k; ++i) {
                    signs[idx[i]] = 0;
                }
            }
            // Next k-combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == np - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if (!found) {
        throw std::logic_error("brute_force_min_encoding: signature is not realizable");
    }
    return EncodingAssignment{best};
}

}    // namespace slugger
