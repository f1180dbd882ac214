#include "slugger/synthgen.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "slugger/rng.hpp"

namespace slugger {

namespace {

void check_spec(const TheoremGraphSpec &spec) {
    if (spec.n < 3) {
        throw std::domain_error("theorem graph needs at least 3 groups");
    }
    if (spec.k < 1) {
        throw std::domain_error("theorem graph needs groups of at least 1 subnode");
    }
}

}    // namespace

InputGraph theorem_graph(const TheoremGraphSpec &spec) {
    check_spec(spec);
    const auto n = spec.n;
    const auto k = spec.k;
    std::vector<Edge> edges;
    edges.reserve(n * k * ((n - 2) * k) / 2);
    for (std::size_t u = 0; u < n * k; ++u) {
        const auto gu = u / k;
        for (std::size_t v = u + 1; v < n * k; ++v) {
            const auto gv = v / k;
            if (gv == (gu + 1) % n || gu == (gv + 1) % n) {
                continue;
            }
            edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        }
    }
    return InputGraph::from_edges(n * k, edges);
}

HierarchicalSummary reference_hier_encoding(const TheoremGraphSpec &spec) {
    check_spec(spec);
    const auto n = spec.n;
    const auto k = spec.k;
    const auto leaves = n * k;
    const auto group = [&](std::size_t i) { return static_cast<SupernodeId>(leaves + i); };
    const auto root = static_cast<SupernodeId>(leaves + n);
    std::vector<SupernodePair> h;
    for (std::size_t i = 0; i < n; ++i) {
        h.emplace_back(root, group(i));
        for (std::size_t j = 0; j < k; ++j) {
            h.emplace_back(group(i), static_cast<SupernodeId>(i * k + j));
        }
    }
    auto s = HierarchicalSummary::from_forest(leaves, leaves + n + 1, h);
    s.set_edge(root, root, +1);
    for (std::size_t i = 0; i < n; ++i) {
        s.set_edge(group(i), group((i + 1) % n), -1);
    }
    return s;
}

LowerBoundReport flat_lower_bound_witness(const TheoremGraphSpec &spec, const FlatEncoding &flat) {
    const auto g = theorem_graph(spec);
    if (flat.group_of.size() != g.node_count() || !(decode_flat(flat) == g)) {
        throw std::invalid_argument("flat encoding does not represent the theorem graph");
    }
    LowerBoundReport report;
    report.edge_cost = flat.edge_cost();
    report.total_cost = flat.edge_cost() + flat.membership_cost();
    const auto sizes = flat.group_sizes();
    std::set<std::pair<std::uint32_t, std::uint32_t>> present(flat.superedges.begin(), flat.superedges.end());
    for (std::uint32_t a = 0; a < sizes.size(); ++a) {
        if (sizes[a] < 8 * spec.k) {
            continue;
        }
        ++report.large_groups;
        for (std::uint32_t b = 0; b < sizes.size(); ++b) {
            if (present.count({std::min(a, b), std::max(a, b)}) == 0) {
                ++report.missing_superedges;
            }
        }
    }
    report.holds = report.missing_superedges == 0;
    return report;
}

InputGraph er_graph(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("er_graph: p must lie in [0, 1]");
    }
    std::vector<Edge> edges;
    if (n < 2 || p == 0.0) {
        return InputGraph::from_edges(n, edges);
    }
    if (p == 1.0) {
        for (NodeId v = 1; v < n; ++v) {
            for (NodeId u = 0; u < v; ++u) {
                edges.emplace_back(u, v);
            }
        }
        return InputGraph::from_edges(n, edges);
    }
    std::mt19937_64 rng(derive_seed(seed, Stream::Generator, {1}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto log_q = std::log1p(-p);
    // Walk the pairs (u < v) in row-major order over v, jumping geometric gaps.
    std::int64_t v = 1;
    std::int64_t u = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        const auto r = unit(rng);
        u += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
        while (u >= v && v < nn) {
            u -= v;
            ++v;
        }
        if (v < nn) {
            edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        }
    }
    return InputGraph::from_edges(n, edges);
}

InputGraph caveman_graph(std::size_t cliques, std::size_t size, std::uint64_t seed) {
    if (cliques < 1 || size < 2) {
        throw std::domain_error("caveman_graph: need at least one clique of at least 2 nodes");
    }
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < cliques; ++c) {
        const auto base = c * size;
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = i + 1; j < size; ++j) {
                edges.emplace_back(static_cast<NodeId>(base + i), static_cast<NodeId>(base + j));
            }
        }
    }
    std::mt19937_64 rng(derive_seed(seed, Stream::Generator, {2}));
    for (std::size_t c = 0; c + 1 < cliques; ++c) {
        const auto u = c * size + rng() % size;
        const auto v = (c + 1) * size + rng() % size;
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return InputGraph::from_edges(cliques * size, edges);
}

}    // namespace slugger
