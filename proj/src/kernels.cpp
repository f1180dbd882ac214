#include "slugger/kernels.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "slugger/rng.hpp"

namespace slugger::kernels {

namespace {

std::uint64_t closed_min(const InputGraph &g, std::uint64_t seed, NodeId u) {
    auto m = node_hash(seed, u);
    for (const auto w : g.neighbors(u)) {
        m = std::min(m, node_hash(seed, w));
    }
    return m;
}

void check_size(std::size_t have, std::size_t want) {
    if (have != want) {
        throw std::invalid_argument("kernel output span has the wrong size");
    }
}

double gather_one(const HierarchicalSummary &s, std::span<const std::size_t> degree, std::span<const double> cur,
                  NodeId v) {
    double sum = 0.0;
    for (const auto u : neighbors_of(s, v)) {
        sum += cur[u] / static_cast<double>(degree[u]);
    }
    return sum;
}

}    // namespace

void closed_minhash(const InputGraph &g, std::uint64_t seed, std::span<std::uint64_t> out) {
    check_size(out.size(), g.node_count());
    const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < n; ++u) {
        out[static_cast<std::size_t>(u)] = closed_min(g, seed, static_cast<NodeId>(u));
    }
}

void closed_minhash_serial(const InputGraph &g, std::uint64_t seed, std::span<std::uint64_t> out) {
    check_size(out.size(), g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        out[u] = closed_min(g, seed, u);
    }
}

std::vector<std::vector<NodeId>> decode_adjacency(const HierarchicalSummary &s) {
    std::vector<std::vector<NodeId>> adj(s.subnode_count());
    const auto n = static_cast<std::int64_t>(s.subnode_count());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < n; ++v) {
        adj[static_cast<std::size_t>(v)] = neighbors_of(s, static_cast<NodeId>(v));
    }
    return adj;
}

std::vector<std::vector<NodeId>> decode_adjacency_serial(const HierarchicalSummary &s) {
    std::vector<std::vector<NodeId>> adj(s.subnode_count());
    for (NodeId v = 0; v < s.subnode_count(); ++v) {
        adj[v] = neighbors_of(s, v);
    }
    return adj;
}

std::vector<std::size_t> summary_degrees(const HierarchicalSummary &s) {
    std::vector<std::size_t> deg(s.subnode_count());
    const auto n = static_cast<std::int64_t>(s.subnode_count());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < n; ++v) {
        deg[static_cast<std::size_t>(v)] = neighbors_of(s, static_cast<NodeId>(v)).size();
    }
    return deg;
}

void pagerank_gather(const HierarchicalSummary &s, std::span<const std::size_t> degree, std::span<const double> cur,
                     std::span<double> next) {
    check_size(next.size(), s.subnode_count());
    const auto n = static_cast<std::int64_t>(s.subnode_count());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < n; ++v) {
        next[static_cast<std::size_t>(v)] = gather_one(s, degree, cur, static_cast<NodeId>(v));
    }
}

void pagerank_gather_serial(const HierarchicalSummary &s, std::span<const std::size_t> degree,
                            std::span<const double> cur, std::span<double> next) {
    check_size(next.size(), s.subnode_count());
    for (NodeId v = 0; v < s.subnode_count(); ++v) {
        next[v] = gather_one(s, degree, cur, v);
    }
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}    // namespace slugger::kernels
