#include <algorithm>
#include <deque>
#include <tuple>
#include <type_traits>

#include "slugger/slugger.hpp"

namespace slugger {

namespace {

std::uint64_t pair_key(SupernodeId a, SupernodeId b) {
    if (a > b) {
        std::swap(a, b);
    }
    return static_cast<std::uint64_t>(a) << 32 | b;
}

}    // namespace

void prune_step1(HierarchicalSummary &s) {
    const auto roots = s.roots();
    std::deque<SupernodeId> queue(roots.begin(), roots.end());
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        const std::vector<SupernodeId> kids(s.children(x).begin(), s.children(x).end());
        if (!s.is_leaf(x) && s.incident(x).empty()) {
            s.splice(x);
        }
        queue.insert(queue.end(), kids.begin(), kids.end());
    }
}

void prune_step2(HierarchicalSummary &s) {
    const auto roots = s.roots();
    std::deque<SupernodeId> queue(roots.begin(), roots.end());
    while (!queue.empty()) {
        const auto a = queue.front();
        queue.pop_front();
        if (!s.is_root(a) || s.is_leaf(a) || s.incident(a).size() != 1) {
            continue;
        }
        const auto [b, sign] = s.incident(a)[0];
        if (b == a) {
            continue;
        }
        const std::vector<SupernodeId> kids(s.children(a).begin(), s.children(a).end());
        if (std::any_of(kids.begin(), kids.end(), [&](SupernodeId c) { return s.edge_sign(c, b) == sign; })) {
            continue;
        }
        s.set_edge(a, b, 0);
        for (const auto c : kids) {
            s.set_edge(c, b, s.edge_sign(c, b) + sign);
        }
        s.splice(a);
        queue.insert(queue.end(), kids.begin(), kids.end());
    }
}

void prune_step3(HierarchicalSummary &s, const InputGraph &g) {
    std::vector<SupernodeId> leaf_root(s.subnode_count());
    for (NodeId u = 0; u < s.subnode_count(); ++u) {
        leaf_root[u] = s.root_of(u);
    }

    std::vector<std::tuple<std::uint64_t, NodeId, NodeId>> subedges;
    for (const auto &[u, v] : g.edges()) {
        subedges.emplace_back(pair_key(leaf_root[u], leaf_root[v]), u, v);
    }
    std::sort(subedges.begin(), subedges.end());

    std::vector<std::tuple<std::uint64_t, SupernodeId, SupernodeId>> current;
    for (const auto sign : {+1, -1}) {
        for (const auto &[a, b] : s.sorted_edges(sign)) {
            current.emplace_back(pair_key(s.root_of(a), s.root_of(b)), a, b);
        }
    }
    std::sort(current.begin(), current.end());

    std::vector<std::uint64_t> keys;
    for (const auto &e : subedges) {
        keys.push_back(std::get<0>(e));
    }
    for (const auto &e : current) {
        keys.push_back(std::get<0>(e));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    const auto range = [](const auto &v, std::uint64_t key) {
        return std::equal_range(v.begin(), v.end(), key, [](const auto &x, const auto &y) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::uint64_t>) {
                return x < std::get<0>(y);
            } else {
                return std::get<0>(x) < y;
            }
        });
    };

    for (const auto key : keys) {
        const auto a = static_cast<SupernodeId>(key >> 32);
        const auto b = static_cast<SupernodeId>(key & 0xffffffffULL);
        const auto [e_lo, e_hi] = range(subedges, key);
        const auto [p_lo, p_hi] = range(current, key);
        const auto e = static_cast<std::size_t>(e_hi - e_lo);
        const auto p = static_cast<std::size_t>(p_hi - p_lo);
        const auto sa = s.subtree_size(a);
        const auto sb = s.subtree_size(b);
        const auto total = a == b ? sa * (sa - 1) / 2 : sa * sb;
        const auto m = e == 0 ? std::size_t{0} : std::min(total - e + 1, e);
        if (m >= p) {
            continue;
        }
        for (auto it = p_lo; it != p_hi; ++it) {
            s.set_edge(std::get<1>(*it), std::get<2>(*it), 0);
        }
        if (e <= total - e + 1) {
            for (auto it = e_lo; it != e_hi; ++it) {
                s.set_edge(std::get<1>(*it), std::get<2>(*it), +1);
            }
            continue;
        }
        s.set_edge(a, b, +1);
        const auto la = s.leaves(a);
        const auto lb = s.leaves(b);
        for (const auto u : la) {
            for (const auto v : lb) {
                if ((a == b && u >= v) || g.has_edge(u, v)) {
                    continue;
                }
                s.set_edge(u, v, -1);
            }
        }
    }
}

void prune(HierarchicalSummary &s, const InputGraph &g) {
    prune_step1(s);
    prune_step2(s);
    prune_step3(s, g);
    s.compact();
}

}    // namespace slugger
