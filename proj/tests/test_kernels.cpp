#include "doctest.h"
#include "oracles.hpp"
#include "slugger/kernels.hpp"
#include "slugger/query.hpp"
#include "slugger/rng.hpp"
#include "slugger/slugger.hpp"
#include "slugger/synthgen.hpp"

using namespace slugger;

namespace {

HierarchicalSummary squeeze(const InputGraph &g) {
    SluggerConfig cfg;
    cfg.iterations = 8;
    return summarize(g, cfg);
}

}    // namespace

TEST_CASE("thread count is positive") { CHECK(kernels::thread_count() >= 1); }

TEST_CASE("closed minhash matches serial and the definition") {
    const auto g = er_graph(2000, 0.003, 1);
    std::vector<std::uint64_t> a(g.node_count());
    std::vector<std::uint64_t> b(g.node_count());
    kernels::closed_minhash(g, 77, a);
    kernels::closed_minhash_serial(g, 77, b);
    CHECK(a == b);
    for (NodeId u = 0; u < g.node_count(); u += 97) {
        auto best = node_hash(77, u);
        for (const auto w : g.neighbors(u)) {
            best = std::min(best, node_hash(77, w));
        }
        CHECK(a[u] == best);
    }
}

TEST_CASE("decode adjacency matches serial and decode") {
    for (const auto &g : {er_graph(400, 0.02, 2), caveman_graph(10, 6, 3), theorem_graph({10, 2})}) {
        const auto s = squeeze(g);
        const auto par = kernels::decode_adjacency(s);
        CHECK(par == kernels::decode_adjacency_serial(s));
        CHECK(par == oracle::adjacency(g));
        const auto deg = kernels::summary_degrees(s);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            CHECK(deg[v] == g.degree(v));
        }
    }
}

TEST_CASE("pagerank gather matches serial exactly") {
    const auto g = er_graph(500, 0.01, 4);
    const auto s = squeeze(g);
    const auto deg = kernels::summary_degrees(s);
    std::vector<double> cur(g.node_count());
    for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] = static_cast<double>(i % 7 + 1) / 1000.0;
    }
    std::vector<double> a(cur.size());
    std::vector<double> b(cur.size());
    kernels::pagerank_gather(s, deg, cur, a);
    kernels::pagerank_gather_serial(s, deg, cur, b);
    CHECK(a == b);
}

TEST_CASE("parallel pagerank agrees with push pagerank") {
    const auto g = caveman_graph(12, 7, 5);
    const auto s = squeeze(g);
    const auto push = pagerank(s, 0.85, 25);
    const auto gather = pagerank_parallel(s, 0.85, 25);
    for (std::size_t v = 0; v < push.scores.size(); ++v) {
        CHECK(std::abs(push.scores[v] - gather.scores[v]) <= 1e-12);
    }
}
