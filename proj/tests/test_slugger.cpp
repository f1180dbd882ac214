#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "slugger/rng.hpp"
#include "slugger/slugger.hpp"
#include "slugger/synthgen.hpp"

using namespace slugger;

namespace {

std::uint64_t naive_shingle(const HierarchicalSummary &s, const InputGraph &g, SupernodeId root, std::uint64_t seed) {
    std::set<NodeId> closed;
    for (const auto u : oracle::leaf_set(s, root)) {
        closed.insert(u);
        for (const auto w : g.neighbors(u)) {
            closed.insert(w);
        }
    }
    auto best = ~std::uint64_t{0};
    for (const auto w : closed) {
        best = std::min(best, node_hash(seed, w));
    }
    return best;
}

HierarchicalSummary partial(const InputGraph &g, std::size_t iters, std::uint64_t seed) {
    SluggerConfig cfg;
    cfg.iterations = iters;
    cfg.seed = seed;
    cfg.pruning_enabled = false;
    return summarize(g, cfg);
}

bool is_partition_of_roots(const HierarchicalSummary &s, const std::vector<CandidateSet> &sets) {
    std::set<SupernodeId> seen;
    for (const auto &d : sets) {
        for (const auto r : d) {
            if (!s.is_root(r) || !seen.insert(r).second) {
                return false;
            }
        }
    }
    return true;
}

}    // namespace

TEST_CASE("theta schedule") {
    CHECK(theta(1, 20) == Fraction{1, 2});
    CHECK(theta(19, 20) == Fraction{1, 20});
    CHECK(theta(20, 20) == Fraction{0, 1});
    for (std::size_t t = 1; t < 20; ++t) {
        CHECK(theta(t, 20) == Fraction{1, static_cast<std::int64_t>(1 + t)});
    }
    CHECK(theta(1, 1) == Fraction{0, 1});
    CHECK_THROWS_AS((void)theta(0, 20), std::domain_error);
    CHECK_THROWS_AS((void)theta(21, 20), std::domain_error);
}

TEST_CASE("config validation") {
    SluggerConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.iterations == 20);
    CHECK(cfg.max_candidate_size == 500);
    CHECK(cfg.max_shingle_rounds == 10);
    CHECK(cfg.pruning_enabled);
    CHECK_FALSE(cfg.height_bound.has_value());
    auto bad = cfg;
    bad.iterations = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.max_candidate_size = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.max_shingle_rounds = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("shingle") {
    const auto iso = InputGraph::from_edges(4, std::vector<Edge>{});
    const auto s = HierarchicalSummary::trivial(iso);
    CHECK(shingle(s, iso, 2, 99) == node_hash(99, 2));

    // 0 and 1 have the same closed neighborhood union {0, 1, 2}.
    const auto tri = oracle::clique_graph(3);
    const auto t = HierarchicalSummary::trivial(tri);
    CHECK(shingle(t, tri, 0, 5) == shingle(t, tri, 1, 5));

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = er_graph(120, 0.04, seed);
        const auto p = partial(g, 3, seed);
        for (const auto r : p.roots()) {
            CHECK(shingle(p, g, r, seed * 31 + 1) == naive_shingle(p, g, r, seed * 31 + 1));
        }
    }
}

TEST_CASE("candidates on isolated nodes") {
    const auto g = InputGraph::from_edges(2000, std::vector<Edge>{});
    const auto s = HierarchicalSummary::trivial(g);
    SluggerConfig cfg;
    const auto sets = generate_candidates(s, g, 1, cfg);
    for (const auto &d : sets) {
        CHECK(d.size() <= 500);
        CHECK(d.size() >= 2);
    }
    CHECK(is_partition_of_roots(s, sets));
}

TEST_CASE("candidates group two disjoint cliques") {
    std::vector<Edge> edges;
    for (NodeId base : {0u, 5u}) {
        for (NodeId u = 0; u < 5; ++u) {
            for (NodeId v = u + 1; v < 5; ++v) {
                edges.push_back({base + u, base + v});
            }
        }
    }
    const auto g = InputGraph::from_edges(10, edges);
    const auto s = HierarchicalSummary::trivial(g);
    SluggerConfig cfg;
    cfg.max_shingle_rounds = 1;
    auto sets = generate_candidates(s, g, 1, cfg);
    std::sort(sets.begin(), sets.end());
    CHECK(sets == std::vector<CandidateSet>{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
}

TEST_CASE("one shingle round groups roots by naive shingle") {
    const auto g = er_graph(300, 0.01, 4);
    const auto s = partial(g, 2, 4);
    SluggerConfig cfg;
    cfg.seed = 8;
    cfg.max_shingle_rounds = 1;
    const std::size_t t = 3;
    auto sets = generate_candidates(s, g, t, cfg);
    std::map<std::uint64_t, CandidateSet> by_key;
    for (const auto r : s.roots()) {
        by_key[naive_shingle(s, g, r, derive_seed(cfg.seed, Stream::Shingle, {t, 1}))].push_back(r);
    }
    std::vector<CandidateSet> expected;
    for (auto &[k, d] : by_key) {
        if (d.size() >= 2) {
            expected.push_back(d);
        }
    }
    std::sort(sets.begin(), sets.end());
    std::sort(expected.begin(), expected.end());
    CHECK(sets == expected);
}

TEST_CASE("candidate sets respect the size cap and are deterministic") {
    const auto g = er_graph(400, 0.005, 2);
    const auto s = HierarchicalSummary::trivial(g);
    SluggerConfig cfg;
    cfg.max_candidate_size = 3;
    cfg.max_shingle_rounds = 2;
    const auto sets = generate_candidates(s, g, 1, cfg);
    CHECK_FALSE(sets.empty());
    for (const auto &d : sets) {
        CHECK(d.size() >= 2);
        CHECK(d.size() <= 3);
        CHECK(std::is_sorted(d.begin(), d.end()));
    }
    CHECK(is_partition_of_roots(s, sets));
    CHECK(generate_candidates(s, g, 1, cfg) == sets);
    CHECK(generate_candidates(s, g, 2, cfg) != sets);
}

TEST_CASE("saving examples") {
    MemoTable memo;
    const auto twins = oracle::twin_graph(4);
    const auto t = HierarchicalSummary::trivial(twins);
    CHECK(saving(t, 0, 1, memo) == Saving{Fraction{1, 4}});

    const auto k2 = oracle::clique_graph(2);
    const auto s = HierarchicalSummary::trivial(k2);
    CHECK(saving(s, 0, 1, memo) == Saving{Fraction{-2, 1}});

    const auto empty = InputGraph::from_edges(3, std::vector<Edge>{});
    CHECK_FALSE(saving(HierarchicalSummary::trivial(empty), 0, 2, memo).has_value());

    // Path 0-1-2-3-4: {0} and {4} are 4 hops apart.
    const auto path = oracle::path_graph(5);
    const auto p = HierarchicalSummary::trivial(path);
    CHECK(saving(p, 0, 4, memo) == Saving{Fraction{2 - 4, 2}});
}

TEST_CASE("analytic merged cost matches the real merge") {
    MemoTable memo;
    std::mt19937_64 rng(12);
    for (const auto &g : {er_graph(80, 0.08, 1), caveman_graph(6, 6, 2), theorem_graph({6, 2})}) {
        const auto base = partial(g, 3, 7);
        SluggerEngine engine(g, base, memo);
        const auto roots = base.roots();
        for (int trial = 0; trial < 150; ++trial) {
            const auto a = roots[rng() % roots.size()];
            const auto b = roots[rng() % roots.size()];
            if (a == b) {
                continue;
            }
            const auto predicted = engine.merged_cost(a, b);
            const auto before = engine.summary().cost();
            const auto ca = engine.root_cost(a);
            const auto cb = engine.root_cost(b);
            const auto cab = engine.pair_edge_cost(a, b);
            CHECK(ca == cost_components(base, a).total());
            CHECK(cab == pair_cost(base, a, b));

            auto copy = engine;
            const auto m = copy.merge_and_update(a, b);
            REQUIRE(m.has_value());
            CHECK(cost_components(copy.summary(), *m).total() == predicted);
            CHECK(copy.summary().cost() == before - (ca + cb - cab) + predicted);
            CHECK(decode(copy.summary()) == g);

            const auto sv = engine.saving(a, b);
            if (ca + cb - cab > 0) {
                REQUIRE(sv.has_value());
                CHECK(*sv == Fraction{static_cast<std::int64_t>(ca + cb - cab) - static_cast<std::int64_t>(predicted),
                                      static_cast<std::int64_t>(ca + cb - cab)});
            }
        }
    }
}

TEST_CASE("roots three or more hops apart never pay off") {
    MemoTable memo;
    const auto g = er_graph(300, 0.02, 6);
    const auto base = partial(g, 4, 2);
    SluggerEngine engine(g, base, memo);
    const auto roots = base.roots();
    std::mt19937_64 rng(3);
    std::size_t checked = 0;
    for (int trial = 0; trial < 2000 && checked < 60; ++trial) {
        const auto a = roots[rng() % roots.size()];
        const auto b = roots[rng() % roots.size()];
        if (a == b) {
            continue;
        }
        const auto dist = super_distance(base, g, a, b);
        if (dist.has_value() && *dist < 3) {
            continue;
        }
        ++checked;
        const auto ca = engine.root_cost(a);
        const auto cb = engine.root_cost(b);
        CHECK(engine.pair_edge_cost(a, b) == 0);
        CHECK(engine.merged_cost(a, b) == ca + cb + 2);
        auto copy = engine;
        const auto m = copy.merge_and_update(a, b);
        REQUIRE(m.has_value());
        CHECK(cost_components(copy.summary(), *m).total() == ca + cb + 2);
        const auto sv = engine.saving(a, b);
        if (sv.has_value()) {
            CHECK(*sv < Fraction{0, 1});
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("merge_and_update on twins") {
    MemoTable memo;
    const auto g = oracle::twin_graph(4);
    auto s = HierarchicalSummary::trivial(g);
    const auto m = merge_and_update(s, 0, 1, memo);
    REQUIRE(m.has_value());
    CHECK(s.children(*m).size() == 2);
    CHECK(s.h_edge_count() == 2);
    CHECK(s.p_edge_count() == 4);
    CHECK(s.n_edge_count() == 0);
    CHECK(s.cost() == 6);
    for (NodeId w = 2; w < 6; ++w) {
        CHECK(s.edge_sign(*m, w) == 1);
    }
    CHECK(decode(s) == g);
}

TEST_CASE("height bound refuses merges") {
    MemoTable memo;
    const auto g = oracle::clique_graph(4);
    auto s = HierarchicalSummary::trivial(g);
    const auto a = merge_and_update(s, 0, 1, memo, 1);
    REQUIRE(a.has_value());
    const auto before = s;
    CHECK_FALSE(merge_and_update(s, *a, 2, memo, 1).has_value());
    CHECK(s == before);
    CHECK(merge_and_update(s, *a, 2, memo, 2).has_value());
}

TEST_CASE("merge_step examples") {
    MemoTable memo;
    SluggerConfig cfg;

    const auto path = oracle::path_graph(6);
    auto p = HierarchicalSummary::trivial(path);
    const auto before = p;
    CHECK(merge_step(p, path, p.roots(), 1, 0, cfg, memo) == 0);
    CHECK(p == before);

    const auto twins = oracle::twin_graph(3);
    auto t = HierarchicalSummary::trivial(twins);
    CHECK(merge_step(t, twins, CandidateSet{0, 1}, cfg.iterations, 0, cfg, memo) == 1);
    CHECK(t.roots().size() == 4);
    CHECK(decode(t) == twins);

    const auto g = caveman_graph(4, 6, 1);
    for (std::size_t t_index = 1; t_index <= cfg.iterations; t_index += 5) {
        auto s = HierarchicalSummary::trivial(g);
        const auto d = s.roots();
        const auto merges = merge_step(s, g, d, t_index, 0, cfg, memo);
        CHECK(merges <= d.size() - 1);
        CHECK(s.roots().size() == d.size() - merges);
        CHECK(s.cost() <= HierarchicalSummary::trivial(g).cost());
        CHECK(decode(s) == g);
    }

    // Stale members are skipped.
    auto s = HierarchicalSummary::trivial(twins);
    (void)merge_and_update(s, 0, 1, memo);
    CHECK_NOTHROW((void)merge_step(s, twins, CandidateSet{0, 1, 2}, cfg.iterations, 0, cfg, memo));
    CHECK(decode(s) == twins);
}

TEST_CASE("prune step 1 removes edgeless internal nodes") {
    HierarchicalSummary s(2);
    const std::vector<SupernodeId> kids{0, 1};
    (void)s.add_supernode(kids);
    CHECK(s.cost() == 2);
    prune_step1(s);
    CHECK(s.cost() == 0);
    CHECK(s.roots() == std::vector<SupernodeId>{0, 1});

    // A nested edgeless node below a root with an edge.
    auto f = oracle::fig2_summary();
    f.set_edge(7, 5, 0);
    f.set_edge(2, 5, -1);
    f.set_edge(3, 5, -1);
    const auto cost_before = f.cost();
    prune_step1(f);
    CHECK(f.cost() == cost_before + 1 - 2);
    CHECK_FALSE(f.alive(7));
    CHECK(decode(f) == oracle::fig2_graph());
}

TEST_CASE("prune step 2 pushes a lone edge down") {
    const auto g = InputGraph::from_edges(3, std::vector<Edge>{{0, 2}, {1, 2}});
    HierarchicalSummary s(3);
    const std::vector<SupernodeId> kids{0, 1};
    const auto a = s.add_supernode(kids);
    s.set_edge(a, 2, +1);
    CHECK(s.cost() == 3);
    CHECK(decode(s) == g);
    prune_step2(s);
    CHECK_FALSE(s.alive(a));
    CHECK(s.h_edge_count() == 0);
    CHECK(s.sorted_edges(+1) == std::vector<SupernodePair>{{0, 2}, {1, 2}});
    CHECK(s.cost() == 2);
    CHECK(decode(s) == g);
}

TEST_CASE("prune step 2 cancels against opposite edges") {
    // Root over {0, 1} with p(A, 2) and n({1}, 2): only 0-2 is present.
    const auto g = InputGraph::from_edges(3, std::vector<Edge>{{0, 2}});
    HierarchicalSummary s(3);
    const std::vector<SupernodeId> kids{0, 1};
    const auto a = s.add_supernode(kids);
    s.set_edge(a, 2, +1);
    s.set_edge(1, 2, -1);
    REQUIRE(decode(s) == g);
    const auto before = s.cost();
    prune_step2(s);
    CHECK(s.cost() <= before);
    CHECK(decode(s) == g);
}

TEST_CASE("prune step 3 encodes a full block with one edge") {
    std::vector<Edge> edges;
    for (NodeId u : {0u, 1u}) {
        for (NodeId v : {2u, 3u}) {
            edges.push_back({u, v});
        }
    }
    const auto g = InputGraph::from_edges(4, edges);
    auto s = HierarchicalSummary::trivial(g);
    const std::vector<SupernodeId> left{0, 1};
    const std::vector<SupernodeId> right{2, 3};
    const auto a = s.add_supernode(left);
    const auto b = s.add_supernode(right);
    CHECK(s.cost() == 8);
    prune_step3(s, g);
    CHECK(pair_cost(s, a, b) == 1);
    CHECK(s.edge_sign(a, b) == 1);
    CHECK(s.cost() == 5);
    CHECK(decode(s) == g);
}

TEST_CASE("prune steps never raise cost and keep decoding") {
    for (const auto &g : {er_graph(150, 0.05, 1), caveman_graph(8, 6, 2), theorem_graph({8, 2}),
                          oracle::star_graph(10), oracle::clique_graph(8)}) {
        auto s = partial(g, 8, 3);
        auto c0 = s.cost();
        prune_step1(s);
        CHECK(s.cost() <= c0);
        CHECK(decode(s) == g);
        c0 = s.cost();
        prune_step2(s);
        CHECK(s.cost() <= c0);
        CHECK(decode(s) == g);
        c0 = s.cost();
        prune_step3(s, g);
        CHECK(s.cost() <= c0);
        CHECK(decode(s) == g);
        s.check_structure();
    }
}

TEST_CASE("summarize examples") {
    const auto empty = InputGraph::from_edges(6, std::vector<Edge>{});
    const auto e = summarize(empty, SluggerConfig{});
    CHECK(e.cost() == 0);
    CHECK(e == HierarchicalSummary::trivial(empty));

    const auto g = theorem_graph({32, 3});
    SummarizeReport report;
    SluggerConfig cfg;
    const auto s = summarize(g, cfg, &report);
    CHECK(verify_lossless(s, g).ok);
    CHECK(relative_size(s, g) < Fraction{1, 4});

    std::size_t prev = g.edge_count();
    for (const auto &it : report.iterations) {
        CHECK(it.cost <= prev);
        prev = it.cost;
    }
    CHECK(report.iterations.size() == cfg.iterations);
    CHECK(report.cost_before_prune == prev);
    CHECK(report.prune_step_cost[0] <= report.cost_before_prune);
    CHECK(report.prune_step_cost[1] <= report.prune_step_cost[0]);
    CHECK(report.prune_step_cost[2] <= report.prune_step_cost[1]);
    CHECK(s.cost() == report.prune_step_cost[2]);
}

TEST_CASE("summarize is deterministic") {
    const auto g = er_graph(300, 0.03, 5);
    SluggerConfig cfg;
    cfg.seed = 17;
    CHECK(serialize(summarize(g, cfg)) == serialize(summarize(g, cfg)));
    cfg.seed = 18;
    const auto other = summarize(g, cfg);
    CHECK(decode(other) == g);
}

TEST_CASE("h-edge accounting") {
    const auto g = caveman_graph(10, 6, 3);
    SluggerConfig cfg;
    cfg.pruning_enabled = false;
    SummarizeReport report;
    const auto s = summarize(g, cfg, &report);
    CHECK(report.merges > 0);
    CHECK(s.h_edge_count() == 2 * report.merges);
    CHECK(s.cost() == report.cost_before_prune);

    cfg.pruning_enabled = true;
    SummarizeReport pruned;
    const auto p = summarize(g, cfg, &pruned);
    CHECK(pruned.merges == report.merges);
    CHECK(p.h_edge_count() <= 2 * pruned.merges);
    CHECK(p.cost() <= s.cost());
    for (SupernodeId x = 0; x < p.id_bound(); ++x) {
        if (p.alive(x) && !p.is_leaf(x)) {
            CHECK(p.children(x).size() >= 2);
        }
    }
}

TEST_CASE("height bound holds through summarize") {
    const auto g = caveman_graph(10, 8, 1);
    for (const std::size_t hb : {1u, 2u, 3u}) {
        SluggerConfig cfg;
        cfg.height_bound = hb;
        const auto s = summarize(g, cfg);
        CHECK(max_tree_height(s) <= hb);
        CHECK(decode(s) == g);
    }
}

TEST_CASE("every observed snapshot decodes") {
    const auto g = er_graph(120, 0.06, 9);
    SluggerConfig cfg;
    cfg.iterations = 6;
    cfg.max_candidate_size = 20;
    SummarizeHooks hooks;
    std::size_t snapshots = 0;
    hooks.after_merge_step = [&](const SluggerEngine &engine, std::size_t, std::size_t) {
        ++snapshots;
        CHECK(decode(engine.summary()) == g);
    };
    const auto s = summarize(g, cfg, nullptr, &hooks);
    CHECK(snapshots > 0);
    CHECK(decode(s) == g);
}
