#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "slugger/encoder.hpp"
#include "slugger/slugger.hpp"
#include "slugger/synthgen.hpp"

using namespace slugger;

namespace {

PanelShape leaf_merge_shape() {
    PanelShape shape;
    shape.parent = {-1, 0, 0};
    shape.singleton = {false, true, true};
    shape.yellow_count = 3;
    return shape;
}

// Random panel shape of the given size: a yellow tree of depth <= 2 rooted at
// 0 and, for cross shapes, an orange tree of depth <= 1.
PanelShape random_shape(std::mt19937_64 &rng, std::size_t n) {
    PanelShape shape;
    const bool cross = n >= 2 && rng() % 3 == 0;
    const std::size_t orange = cross ? 1 + rng() % std::min<std::size_t>(3, n - 1) : 0;
    const std::size_t yellow = n - orange;
    shape.yellow_count = yellow;
    std::vector<int> depth;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || i == yellow) {
            shape.parent.push_back(-1);
            depth.push_back(0);
            continue;
        }
        const int base = i < yellow ? 0 : static_cast<int>(yellow);
        const int max_depth = i < yellow ? 1 : 0;
        std::vector<int> options;
        for (int p = base; p < static_cast<int>(i); ++p) {
            if (depth[static_cast<std::size_t>(p)] <= max_depth) {
                options.push_back(p);
            }
        }
        const auto p = options[rng() % options.size()];
        shape.parent.push_back(p);
        depth.push_back(depth[static_cast<std::size_t>(p)] + 1);
    }
    std::vector<bool> has_child(n, false);
    for (const auto p : shape.parent) {
        if (p >= 0) {
            has_child[static_cast<std::size_t>(p)] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        shape.singleton.push_back(!has_child[i] && rng() % 2 == 0);
    }
    return shape;
}

// Signature of a random sparse assignment, so it is always realizable.
DeltaSignature random_signature(std::mt19937_64 &rng, const PanelShape &shape) {
    const auto &layout = panel_layout(shape);
    auto sig = DeltaSignature::zero(shape);
    for (const auto &[i, j] : layout.pairs()) {
        const auto r = rng() % 100;
        if (r < 15) {
            sig.add_edge(layout, i, j, +1);
        } else if (r < 25) {
            sig.add_edge(layout, i, j, -1);
        }
    }
    return sig;
}

EncodingAssignment current_assignment(const HierarchicalSummary &s, const Panel &panel) {
    const auto &layout = panel_layout(panel.shape);
    EncodingAssignment a;
    for (const auto &[i, j] : layout.pairs()) {
        a.signs.push_back(static_cast<std::int8_t>(
            s.edge_sign(panel.nodes[static_cast<std::size_t>(i)], panel.nodes[static_cast<std::size_t>(j)])));
    }
    return a;
}

std::vector<SupernodeId> case2_roots(const HierarchicalSummary &s, const Panel &panel) {
    std::set<SupernodeId> out;
    for (std::size_t i = 0; i < panel.shape.yellow_count; ++i) {
        for (const auto &inc : s.incident(panel.nodes[i])) {
            // Only edges that land on a root or one of its children reach the orange panel.
            const auto other = inc.other;
            const auto r = oracle::top(s, other);
            if (r != panel.nodes[0] && (other == r || s.parent(other) == r)) {
                out.insert(r);
            }
        }
    }
    return {out.begin(), out.end()};
}

// Minimum cardinality by enumerating signed subsets of the non-frontier pairs in
// order of size; every block is then settled by its own frontier pair.
struct SubsetOracle {
    const PanelLayout &layout;
    const DeltaSignature &sig;
    std::vector<std::size_t> inner;
    std::vector<int> residual;
    std::size_t best{0};

    SubsetOracle(const PanelLayout &l, const DeltaSignature &d) : layout(l), sig(d) {
        for (std::size_t p = 0; p < l.pairs().size(); ++p) {
            const auto [i, j] = l.pairs()[p];
            if (!(l.is_frontier(i) && l.is_frontier(j))) {
                inner.push_back(p);
            }
        }
        for (const auto &[x, y] : l.blocks()) {
            residual.push_back(d.at(x, y));
        }
        best = settle_cost();
    }

    [[nodiscard]] std::size_t settle_cost() const {
        std::size_t c = 0;
        for (std::size_t b = 0; b < residual.size(); ++b) {
            if (!layout.constrained(b)) {
                continue;
            }
            if (residual[b] > 1 || residual[b] < -1) {
                return 1000;
            }
            c += residual[b] != 0 ? 1 : 0;
        }
        return c;
    }

    void add(std::size_t p, int sign) {
        for (std::size_t b = 0; b < residual.size(); ++b) {
            if (layout.pair_blocks(p) >> b & 1U) {
                residual[b] -= sign;
            }
        }
    }

    void walk(std::size_t from, std::size_t used) {
        if (used >= best) {
            return;
        }
        best = std::min(best, used + settle_cost());
        for (std::size_t q = from; q < inner.size(); ++q) {
            for (const int sign : {1, -1}) {
                add(inner[q], sign);
                walk(q + 1, used + 1);
                add(inner[q], -sign);
            }
        }
    }
};

}    // namespace

TEST_CASE("build_panel on a leaf merge") {
    HierarchicalSummary s(2);
    const std::vector<SupernodeId> kids{0, 1};
    const auto m = s.add_supernode(kids);
    const auto panel = build_panel(s, m);
    CHECK(panel.nodes == std::vector<SupernodeId>{m, 0, 1});
    const auto &layout = panel_layout(panel.shape);
    CHECK(layout.frontier() == std::vector<int>{1, 2});
    CHECK(layout.pairs().size() == 6);
}

TEST_CASE("build_panel on a merge of two internal nodes") {
    HierarchicalSummary s(4);
    const std::vector<SupernodeId> ab{0, 1};
    const std::vector<SupernodeId> cd{2, 3};
    const auto a = s.add_supernode(ab);
    const auto b = s.add_supernode(cd);
    const std::vector<SupernodeId> top{a, b};
    const auto m = s.add_supernode(top);
    const auto panel = build_panel(s, m);
    CHECK(panel.nodes.size() == 7);
    const auto &layout = panel_layout(panel.shape);
    CHECK(layout.frontier().size() == 4);
    for (const auto f : layout.frontier()) {
        CHECK(s.is_leaf(panel.nodes[static_cast<std::size_t>(f)]));
    }
    CHECK(layout.pairs().size() == 28);
}

TEST_CASE("build_panel case 2 with a leaf root") {
    auto s = HierarchicalSummary::trivial(oracle::twin_graph(2));
    const std::vector<SupernodeId> kids{0, 1};
    const auto m = s.add_supernode(kids);
    const auto panel = build_panel(s, m, SupernodeId{2});
    CHECK(panel.nodes == std::vector<SupernodeId>{m, 0, 1, 2});
    CHECK(panel.shape.yellow_count == 3);
    const auto &layout = panel_layout(panel.shape);
    CHECK(layout.is_frontier(3));
    CHECK(layout.pairs() == std::vector<std::pair<int, int>>{{0, 3}, {1, 3}, {2, 3}});

    HierarchicalSummary lone(3);
    const auto m2 = lone.add_supernode(kids);
    CHECK_THROWS_AS((void)build_panel(lone, m2, SupernodeId{2}), std::domain_error);
    CHECK_THROWS_AS((void)build_panel(lone, 2), std::domain_error);
}

TEST_CASE("signature_of") {
    HierarchicalSummary empty(2);
    const std::vector<SupernodeId> kids{0, 1};
    const auto m0 = empty.add_supernode(kids);
    const auto zero = signature_of(empty, build_panel(empty, m0));
    CHECK(std::all_of(zero.delta.begin(), zero.delta.end(), [](int d) { return d == 0; }));

    auto s = HierarchicalSummary::trivial(oracle::clique_graph(2));
    const auto m = s.add_supernode(kids);
    const auto sig = signature_of(s, build_panel(s, m));
    CHECK(sig.at(1, 2) == 1);
    CHECK(sig.at(2, 1) == 1);
    CHECK(sig.at(1, 1) == 0);
    CHECK(sig.at(2, 2) == 0);
}

TEST_CASE("min_encoding examples") {
    MemoTable memo;
    const auto shape = leaf_merge_shape();
    const auto &layout = panel_layout(shape);
    CHECK(min_encoding(DeltaSignature::zero(shape), memo).cardinality() == 0);

    auto cross = DeltaSignature::zero(shape);
    cross.set(1, 2, 1);
    const auto a = min_encoding(cross, memo);
    CHECK(a.cardinality() == 1);
    CHECK(a.signs[static_cast<std::size_t>(layout.pair_index(1, 2))] == 1);
    CHECK(a == brute_force_min_encoding(cross));

    auto all = DeltaSignature::zero(shape);
    all.set(1, 2, 1);
    all.set(1, 1, 1);
    all.set(2, 2, 1);
    const auto b = min_encoding(all, memo);
    CHECK(b.cardinality() == 1);
    CHECK(b.signs[static_cast<std::size_t>(layout.pair_index(0, 0))] == 1);
    CHECK(b == brute_force_min_encoding(all));
}

TEST_CASE("brute force examples") {
    const auto shape = leaf_merge_shape();
    CHECK(brute_force_min_encoding(DeltaSignature::zero(shape)).cardinality() == 0);
    auto one = DeltaSignature::zero(shape);
    one.set(1, 2, 1);
    CHECK(brute_force_min_encoding(one).cardinality() == 1);

    std::mt19937_64 rng(1);
    PanelShape big;
    big.parent = {-1, 0, 0, 1, 1, 2};
    big.singleton = {false, false, false, true, true, true};
    big.yellow_count = 6;
    CHECK_THROWS_AS((void)brute_force_min_encoding(DeltaSignature::zero(big)), std::invalid_argument);
}

TEST_CASE("min_encoding agrees with brute force on random small panels") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = 2 + rng() % 4;
        const auto shape = random_shape(rng, n);
        const auto sig = random_signature(rng, shape);
        const auto &layout = panel_layout(shape);
        const auto fast = min_encoding_cold(sig);
        const auto slow = brute_force_min_encoding(sig);
        CHECK(realizes(layout, sig, fast));
        CHECK(realizes(layout, sig, slow));
        CHECK(fast.cardinality() == slow.cardinality());
        CHECK(fast.negatives() == slow.negatives());
    }
}

TEST_CASE("min_encoding agrees with subset enumeration on larger panels") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 80; ++trial) {
        const auto shape = random_shape(rng, 6 + rng() % 2);
        const auto sig = random_signature(rng, shape);
        const auto &layout = panel_layout(shape);
        SubsetOracle oracle(layout, sig);
        oracle.walk(0, 0);
        const auto fast = min_encoding_cold(sig);
        CHECK(realizes(layout, sig, fast));
        CHECK(fast.cardinality() == oracle.best);
    }
}

TEST_CASE("memo hits agree with cold solves") {
    std::mt19937_64 rng(77);
    MemoTable memo;
    for (int trial = 0; trial < 3000; ++trial) {
        const auto shape = random_shape(rng, 2 + rng() % 6);
        const auto sig = random_signature(rng, shape);
        const auto cold = min_encoding_cold(sig);
        const auto first = min_encoding(sig, memo);
        const auto second = min_encoding(sig, memo);
        CHECK(first == cold);
        CHECK(second == cold);
        CHECK(realizes(panel_layout(shape), sig, second));
    }
    const auto stats = memo_stats(memo);
    CHECK(stats.hits >= 3000);
    CHECK(stats.entries > 0);
}

TEST_CASE("fresh memo stats") {
    MemoTable memo;
    const auto stats = memo_stats(memo);
    CHECK(stats.entries == 0);
    CHECK(stats.bytes_estimate == 0);
    CHECK(stats.hit_rate == 0.0);
}

TEST_CASE("memo stays small and warm on a summarize run") {
    MemoTable memo;
    SluggerConfig cfg;
    cfg.seed = 3;
    const auto g = er_graph(500, 0.02, 1);
    const auto s = summarize(g, cfg, nullptr, nullptr, &memo);
    CHECK(decode(s) == g);
    const auto stats = memo_stats(memo);
    CHECK(stats.hit_rate > 0.5);
    CHECK(stats.entries < 1000000);
}

TEST_CASE("applying the current encoding changes nothing") {
    SluggerConfig cfg;
    cfg.iterations = 6;
    cfg.pruning_enabled = false;
    const auto g = caveman_graph(6, 5, 4);
    const auto s = summarize(g, cfg);
    for (const auto r : s.roots()) {
        if (s.children(r).empty()) {
            continue;
        }
        auto copy = s;
        const auto panel = build_panel(copy, r);
        apply_encoding(copy, panel, current_assignment(copy, panel));
        CHECK(copy == s);
    }
}

TEST_CASE("twin merge re-encoding") {
    const std::size_t d = 4;
    const auto g = oracle::twin_graph(d);
    auto s = HierarchicalSummary::trivial(g);
    CHECK(s.p_edge_count() == 2 * d);
    const std::vector<SupernodeId> kids{0, 1};
    const auto m = s.add_supernode(kids);
    MemoTable memo;
    const auto yellow = build_panel(s, m);
    apply_encoding(s, yellow, min_encoding(signature_of(s, yellow), memo));
    for (NodeId w = 2; w < d + 2; ++w) {
        const auto panel = build_panel(s, m, SupernodeId{w});
        apply_encoding(s, panel, min_encoding(signature_of(s, panel), memo));
    }
    std::vector<std::pair<SupernodeId, SupernodeId>> expected;
    for (NodeId w = 2; w < d + 2; ++w) {
        expected.push_back({w, m});
    }
    CHECK(s.sorted_edges(+1) == expected);
    CHECK(s.n_edge_count() == 0);
    CHECK(decode(s) == g);
}

TEST_CASE("re-encoding preserves every subnode pair and never adds edges") {
    std::mt19937_64 rng(9);
    MemoTable memo;
    for (const auto &g : {er_graph(40, 0.2, 1), caveman_graph(5, 6, 2), theorem_graph({5, 3})}) {
        SluggerConfig cfg;
        cfg.iterations = 4;
        cfg.pruning_enabled = false;
        const auto s = summarize(g, cfg);
        const auto net = oracle::net_counts(s);
        for (const auto r : s.roots()) {
            if (s.children(r).empty()) {
                continue;
            }
            std::vector<Panel> panels{build_panel(s, r)};
            for (const auto c : case2_roots(s, panels.front())) {
                panels.push_back(build_panel(s, r, c));
            }
            for (const auto &panel : panels) {
                auto copy = s;
                const auto before = copy.p_edge_count() + copy.n_edge_count();
                const auto sig = signature_of(copy, panel);
                const auto a = min_encoding(sig, memo);
                CHECK(a.cardinality() <= current_assignment(copy, panel).cardinality());
                apply_encoding(copy, panel, a);
                CHECK(copy.p_edge_count() + copy.n_edge_count() <= before);
                CHECK(oracle::net_counts(copy) == net);
            }
        }
    }
}

TEST_CASE("decode invariance over random merges") {
    const auto g = er_graph(60, 0.15, 5);
    std::mt19937_64 rng(5);
    MemoTable memo;
    std::size_t merges = 0;
    while (merges < 200) {
        auto s = HierarchicalSummary::trivial(g);
        while (merges < 200) {
            const auto roots = s.roots();
            if (roots.size() < 2) {
                break;
            }
            const auto a = roots[rng() % roots.size()];
            auto b = a;
            while (b == a) {
                b = roots[rng() % roots.size()];
            }
            const auto h_before = s.h_edge_count();
            const auto m = merge_and_update(s, a, b, memo);
            REQUIRE(m.has_value());
            CHECK(s.h_edge_count() == h_before + 2);
            CHECK(decode(s) == g);
            ++merges;
        }
        CHECK(oracle::represents(s, g));
    }
}
