#include "slugger/query.hpp"

#include <chrono>
#include <deque>
#include <random>
#include <stdexcept>

#include "slugger/kernels.hpp"
#include "slugger/rng.hpp"

namespace slugger {

namespace {

void check_start(const HierarchicalSummary &s, NodeId start) {
    if (start >= s.subnode_count()) {
        throw std::out_of_range("start node " + std::to_string(start) + " out of range");
    }
}

void check_pagerank_args(double d, std::size_t iters) {
    if (!(d > 0.0 && d < 1.0)) {
        throw std::domain_error("pagerank: damping must lie in (0, 1)");
    }
    if (iters < 1) {
        throw std::domain_error("pagerank: at least one iteration required");
    }
}

void damp(std::vector<double> &r, double d) {
    double sum = 0.0;
    for (auto &x : r) {
        x *= d;
        sum += x;
    }
    const auto leak = (1.0 - sum) / static_cast<double>(r.size());
    for (auto &x : r) {
        x += leak;
    }
}

}    // namespace

std::vector<NodeId> dfs(const HierarchicalSummary &s, NodeId start) {
    check_start(s, start);
    std::vector<bool> seen(s.subnode_count(), false);
    std::vector<NodeId> order;
    std::vector<NodeId> stack{start};
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        if (seen[v]) {
            continue;
        }
        seen[v] = true;
        order.push_back(v);
        const auto nbrs = neighbors_of(s, v);
        for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
            if (!seen[*it]) {
                stack.push_back(*it);
            }
        }
    }
    return order;
}

std::map<NodeId, std::size_t> bfs(const HierarchicalSummary &s, NodeId start) {
    check_start(s, start);
    std::map<NodeId, std::size_t> dist{{start, 0}};
    std::deque<NodeId> queue{start};
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        const auto dv = dist[v];
        for (const auto w : neighbors_of(s, v)) {
            if (dist.emplace(w, dv + 1).second) {
                queue.push_back(w);
            }
        }
    }
    return dist;
}

PageRankVector pagerank(const HierarchicalSummary &s, double d, std::size_t iters) {
    check_pagerank_args(d, iters);
    const auto n = s.subnode_count();
    PageRankVector out{std::vector<double>(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n)), d, iters};
    if (n == 0) {
        return out;
    }
    std::vector<double> next(n);
    for (std::size_t it = 0; it < iters; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeId u = 0; u < n; ++u) {
            const auto nbrs = neighbors_of(s, u);
            if (nbrs.empty()) {
                continue;
            }
            const auto share = out.scores[u] / static_cast<double>(nbrs.size());
            for (const auto v : nbrs) {
                next[v] += share;
            }
        }
        damp(next, d);
        out.scores.swap(next);
    }
    return out;
}

PageRankVector pagerank_parallel(const HierarchicalSummary &s, double d, std::size_t iters) {
    check_pagerank_args(d, iters);
    const auto n = s.subnode_count();
    PageRankVector out{std::vector<double>(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n)), d, iters};
    if (n == 0) {
        return out;
    }
    const auto degree = kernels::summary_degrees(s);
    std::vector<double> next(n);
    for (std::size_t it = 0; it < iters; ++it) {
        kernels::pagerank_gather(s, degree, out.scores, next);
        damp(next, d);
        out.scores.swap(next);
    }
    return out;
}

NeighborBench neighbor_query_bench(const HierarchicalSummary &s, std::size_t sample, std::uint64_t seed) {
    if (sample < 1) {
        throw std::invalid_argument("neighbor_query_bench: sample must be positive");
    }
    NeighborBench out;
    out.sample = sample;
    if (s.subnode_count() == 0) {
        return out;
    }
    std::mt19937_64 rng(derive_seed(seed, Stream::Sample, {0x4e4251ULL}));
    std::vector<NodeId> picks(sample);
    for (auto &v : picks) {
        v = static_cast<NodeId>(rng() % s.subnode_count());
    }
    double depth = 0.0;
    for (const auto v : picks) {
        depth += static_cast<double>(s.depth(v));
    }
    const auto start = std::chrono::steady_clock::now();
    for (const auto v : picks) {
        out.neighbors_returned += neighbors_of(s, v).size();
    }
    const auto elapsed = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
    out.mean_micros = elapsed / static_cast<double>(sample);
    out.mean_leaf_depth = depth / static_cast<double>(sample);
    return out;
}

}    // namespace slugger
