#pragma once

// Slow, obviously-correct reference computations used to cross-check the
// library. Nothing here calls the library's own decode/query code paths.

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "slugger/graph.hpp"
#include "slugger/summary.hpp"

namespace oracle {

using slugger::Edge;
using slugger::HierarchicalSummary;
using slugger::InputGraph;
using slugger::NodeId;
using slugger::SupernodeId;

inline void collect_leaves(const HierarchicalSummary &s, SupernodeId x, std::vector<NodeId> &out) {
    if (s.is_leaf(x)) {
        out.push_back(static_cast<NodeId>(x));
        return;
    }
    for (const auto c : s.children(x)) {
        collect_leaves(s, c, out);
    }
}

inline std::vector<NodeId> leaf_set(const HierarchicalSummary &s, SupernodeId x) {
    std::vector<NodeId> out;
    collect_leaves(s, x, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Every alive supernode id.
inline std::vector<SupernodeId> alive_ids(const HierarchicalSummary &s) {
    std::vector<SupernodeId> out;
    for (SupernodeId x = 0; x < s.id_bound(); ++x) {
        if (s.alive(x)) {
            out.push_back(x);
        }
    }
    return out;
}

/// Signed super-edges as a list, read through incident() with a <= b.
inline std::vector<std::pair<std::pair<SupernodeId, SupernodeId>, int>> signed_edges(const HierarchicalSummary &s) {
    std::vector<std::pair<std::pair<SupernodeId, SupernodeId>, int>> out;
    for (const auto a : alive_ids(s)) {
        for (const auto &inc : s.incident(a)) {
            if (a <= inc.other) {
                out.push_back({{a, inc.other}, inc.sign});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Net count per subnode pair (u < v) by enumerating every covered pair of every super-edge.
inline std::map<Edge, int> net_counts(const HierarchicalSummary &s) {
    std::map<Edge, int> net;
    for (const auto &[pair, sign] : signed_edges(s)) {
        const auto la = leaf_set(s, pair.first);
        const auto lb = leaf_set(s, pair.second);
        std::set<Edge> block;
        for (const auto u : la) {
            for (const auto v : lb) {
                if (u != v) {
                    block.insert({std::min(u, v), std::max(u, v)});
                }
            }
        }
        for (const auto &e : block) {
            net[e] += sign;
        }
    }
    return net;
}

inline std::set<Edge> edge_set(const InputGraph &g) {
    std::set<Edge> out;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (const auto v : g.neighbors(u)) {
            if (u < v) {
                out.insert({u, v});
            }
        }
    }
    return out;
}

/// True iff every net count is 0 or 1 and the pairs at 1 are exactly g's edges.
inline bool represents(const HierarchicalSummary &s, const InputGraph &g) {
    std::set<Edge> ones;
    for (const auto &[e, n] : net_counts(s)) {
        if (n != 0 && n != 1) {
            return false;
        }
        if (n == 1) {
            ones.insert(e);
        }
    }
    return s.subnode_count() == g.node_count() && ones == edge_set(g);
}

inline std::vector<std::vector<NodeId>> adjacency(const InputGraph &g) {
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        adj[u].assign(g.neighbors(u).begin(), g.neighbors(u).end());
    }
    return adj;
}

inline void dfs_visit(const std::vector<std::vector<NodeId>> &adj, NodeId u, std::vector<bool> &seen,
                      std::vector<NodeId> &order) {
    seen[u] = true;
    order.push_back(u);
    for (const auto v : adj[u]) {
        if (!seen[v]) {
            dfs_visit(adj, v, seen, order);
        }
    }
}

inline std::vector<NodeId> dfs(const InputGraph &g, NodeId start) {
    const auto adj = adjacency(g);
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> order;
    dfs_visit(adj, start, seen, order);
    return order;
}

inline std::map<NodeId, std::size_t> bfs(const InputGraph &g, NodeId start) {
    std::map<NodeId, std::size_t> dist{{start, 0}};
    std::queue<NodeId> q;
    q.push(start);
    while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        for (const auto v : g.neighbors(u)) {
            if (dist.emplace(v, dist[u] + 1).second) {
                q.push(v);
            }
        }
    }
    return dist;
}

/// Push-style iteration on the raw graph: r <- d * push(r) + (1 - d * sum) / n.
inline std::vector<double> pagerank(const InputGraph &g, double d, std::size_t iters) {
    const auto n = g.node_count();
    std::vector<double> r(n, 1.0 / static_cast<double>(n));
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<double> next(n, 0.0);
        for (NodeId u = 0; u < n; ++u) {
            const auto nb = g.neighbors(u);
            if (nb.empty()) {
                continue;
            }
            const auto share = r[u] / static_cast<double>(nb.size());
            for (const auto v : nb) {
                next[v] += share;
            }
        }
        double sum = 0.0;
        for (auto &x : next) {
            x *= d;
            sum += x;
        }
        const auto leak = (1.0 - sum) / static_cast<double>(n);
        for (auto &x : next) {
            x += leak;
        }
        r = std::move(next);
    }
    return r;
}

/// Roots, h-edge and edge tallies straight from the forest.
struct Tally {
    std::size_t h{0};
    std::size_t p{0};
    std::size_t n{0};
};

inline Tally tally(const HierarchicalSummary &s) {
    Tally t;
    for (const auto x : alive_ids(s)) {
        t.h += s.children(x).size();
    }
    for (const auto &[pair, sign] : signed_edges(s)) {
        (sign > 0 ? t.p : t.n) += 1;
    }
    return t;
}

inline SupernodeId top(const HierarchicalSummary &s, SupernodeId x) {
    while (s.parent(x) != slugger::kNoSupernode) {
        x = s.parent(x);
    }
    return x;
}

/// Two non-adjacent twins 0 and 1 sharing the neighbors 2..d+1.
inline InputGraph twin_graph(std::size_t d) {
    std::vector<Edge> edges;
    for (NodeId w = 2; w < d + 2; ++w) {
        edges.push_back({0, w});
        edges.push_back({1, w});
    }
    return InputGraph::from_edges(d + 2, edges);
}

/// Seven subnodes. X = {0,1,2,3,4} has children {0}, {1}, {4} and Y = {2,3}.
/// Edges: p(X,X), p(X,{5}), n(Y,{5}), p({5},{6}). Y has id 7, X id 8.
inline HierarchicalSummary fig2_summary() {
    const std::vector<std::pair<SupernodeId, SupernodeId>> h{{8, 0}, {8, 1}, {8, 4}, {8, 7}, {7, 2}, {7, 3}};
    auto s = HierarchicalSummary::from_forest(7, 9, h);
    s.set_edge(8, 8, +1);
    s.set_edge(8, 5, +1);
    s.set_edge(7, 5, -1);
    s.set_edge(5, 6, +1);
    return s;
}

inline InputGraph fig2_graph() {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < 5; ++u) {
        for (NodeId v = u + 1; v < 5; ++v) {
            edges.push_back({u, v});
        }
    }
    edges.push_back({0, 5});
    edges.push_back({1, 5});
    edges.push_back({4, 5});
    edges.push_back({5, 6});
    return InputGraph::from_edges(7, edges);
}

inline InputGraph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u + 1 < n; ++u) {
        edges.push_back({u, u + 1});
    }
    return InputGraph::from_edges(n, edges);
}

inline InputGraph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (NodeId u = 1; u <= leaves; ++u) {
        edges.push_back({0, u});
    }
    return InputGraph::from_edges(leaves + 1, edges);
}

inline InputGraph clique_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            edges.push_back({u, v});
        }
    }
    return InputGraph::from_edges(n, edges);
}

}    // namespace oracle
