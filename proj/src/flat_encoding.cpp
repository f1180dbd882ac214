#include "slugger/flat_encoding.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace slugger {

std::size_t FlatEncoding::group_count() const {
    return group_of.empty() ? 0 : *std::max_element(group_of.begin(), group_of.end()) + 1;
}

std::vector<std::size_t> FlatEncoding::group_sizes() const {
    std::vector<std::size_t> sizes(group_count(), 0);
    for (const auto gid : group_of) {
        ++sizes[gid];
    }
    return sizes;
}

std::size_t FlatEncoding::membership_cost() const {
    std::size_t total = 0;
    for (const auto size : group_sizes()) {
        total += size > 1 ? size : 0;
    }
    return total;
}

FlatEncoding optimal_flat_encoding(const InputGraph &g, std::vector<std::uint32_t> group_of) {
    if (group_of.size() != g.node_count()) {
        throw std::invalid_argument("partition size does not match the graph");
    }
    FlatEncoding flat;
    flat.group_of = std::move(group_of);
    const auto sizes = flat.group_sizes();
    std::vector<std::vector<NodeId>> members(sizes.size());
    for (NodeId u = 0; u < flat.group_of.size(); ++u) {
        members[flat.group_of[u]].push_back(u);
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Edge>> blocks;
    for (const auto &[u, v] : g.edges()) {
        auto a = flat.group_of[u];
        auto b = flat.group_of[v];
        blocks[{std::min(a, b), std::max(a, b)}].emplace_back(u, v);
    }
    for (const auto &[key, present] : blocks) {
        const auto [a, b] = key;
        const std::size_t all = a == b ? sizes[a] * (sizes[a] - 1) / 2 : sizes[a] * sizes[b];
        if (all - present.size() + 1 < present.size()) {
            flat.superedges.push_back(key);
            std::set<Edge> have(present.begin(), present.end());
            for (const auto u : members[a]) {
                for (const auto v : members[b]) {
                    if (u == v || (a == b && u > v)) {
                        continue;
                    }
                    const Edge e{std::min(u, v), std::max(u, v)};
                    if (!have.contains(e)) {
                        flat.negative.push_back(e);
                    }
                }
            }
        } else {
            flat.positive.insert(flat.positive.end(), present.begin(), present.end());
        }
    }
    std::sort(flat.positive.begin(), flat.positive.end());
    std::sort(flat.negative.begin(), flat.negative.end());
    return flat;
}

InputGraph decode_flat(const FlatEncoding &flat) {
    const auto n = flat.group_of.size();
    std::vector<std::vector<NodeId>> members(flat.group_count());
    for (NodeId u = 0; u < n; ++u) {
        members[flat.group_of[u]].push_back(u);
    }
    std::set<Edge> edges;
    for (const auto &[a, b] : flat.superedges) {
        for (const auto u : members[a]) {
            for (const auto v : members[b]) {
                if (u != v) {
                    edges.insert({std::min(u, v), std::max(u, v)});
                }
            }
        }
    }
    for (const auto &e : flat.negative) {
        edges.erase(e);
    }
    edges.insert(flat.positive.begin(), flat.positive.end());
    const std::vector<Edge> list(edges.begin(), edges.end());
    return InputGraph::from_edges(n, list);
}

Fraction flat_relative_size(const FlatEncoding &flat, const InputGraph &g) {
    if (g.edge_count() == 0) {
        throw std::domain_error("relative size is undefined for an edgeless graph");
    }
    return {static_cast<std::int64_t>(flat.edge_cost() + flat.membership_cost()),
            static_cast<std::int64_t>(g.edge_count())};
}

}    // namespace slugger
