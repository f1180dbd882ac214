#include "slugger/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "slugger/rng.hpp"

namespace slugger {

InputGraph InputGraph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
    std::vector<Edge> directed;
    directed.reserve(edges.size() * 2);
    for (const auto &[u, v] : edges) {
        if (u >= node_count || v >= node_count) {
            throw std::out_of_range("edge endpoint out of range");
        }
        if (u == v) {
            continue;
        }
        directed.emplace_back(u, v);
        directed.emplace_back(v, u);
    }
    std::sort(directed.begin(), directed.end());
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

    InputGraph g;
    g.offsets_.assign(node_count + 1, 0);
    g.targets_.reserve(directed.size());
    for (const auto &[u, v] : directed) {
        ++g.offsets_[u + 1];
        g.targets_.push_back(v);
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.external_ids_.resize(node_count);
    std::iota(g.external_ids_.begin(), g.external_ids_.end(), 0);
    return g;
}

std::span<const NodeId> InputGraph::neighbors(NodeId u) const {
    if (u >= node_count()) {
        throw std::out_of_range("node id " + std::to_string(u) + " out of range");
    }
    return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

bool InputGraph::has_edge(NodeId u, NodeId v) const {
    const auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> InputGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (const NodeId v : neighbors(u)) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

void InputGraph::set_external_ids(std::vector<std::int64_t> ids) {
    if (ids.size() != node_count()) {
        throw std::invalid_argument("external id table size mismatch");
    }
    external_ids_ = std::move(ids);
}

bool InputGraph::check_invariants() const {
    std::size_t total = 0;
    for (NodeId u = 0; u < node_count(); ++u) {
        const auto adj = neighbors(u);
        total += adj.size();
        for (std::size_t i = 0; i < adj.size(); ++i) {
            if (adj[i] == u || adj[i] >= node_count()) {
                return false;
            }
            if (i > 0 && adj[i - 1] >= adj[i]) {
                return false;
            }
            if (!has_edge(adj[i], u)) {
                return false;
            }
        }
    }
    return total % 2 == 0 && total / 2 == edge_count();
}

namespace {

bool parse_int(std::string_view token, std::int64_t &out) {
    const auto *first = token.data();
    const auto *last = token.data() + token.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::string_view next_token(std::string_view &rest) {
    const auto start = rest.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) {
        rest = {};
        return {};
    }
    rest.remove_prefix(start);
    const auto end = rest.find_first_of(" \t\r");
    const auto token = rest.substr(0, end);
    rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
    return token;
}

}    // namespace

InputGraph load_edge_list(std::istream &in) {
    std::unordered_map<std::int64_t, NodeId> dense;
    std::vector<std::int64_t> external;
    std::vector<Edge> edges;
    auto intern = [&](std::int64_t id) {
        const auto [it, inserted] = dense.try_emplace(id, static_cast<NodeId>(external.size()));
        if (inserted) {
            external.push_back(id);
        }
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest = line;
        const auto first = next_token(rest);
        if (first.empty() || first.front() == '#') {
            continue;
        }
        const auto second = next_token(rest);
        if (second.empty()) {
            throw ParseError(line_no, "expected two node ids");
        }
        std::int64_t a = 0;
        std::int64_t b = 0;
        if (!parse_int(first, a)) {
            throw ParseError(line_no, "malformed node id '" + std::string(first) + "'");
        }
        if (!parse_int(second, b)) {
            throw ParseError(line_no, "malformed node id '" + std::string(second) + "'");
        }
        const NodeId u = intern(a);
        const NodeId v = intern(b);
        edges.emplace_back(u, v);
    }
    auto g = InputGraph::from_edges(external.size(), edges);
    g.set_external_ids(std::move(external));
    return g;
}

InputGraph load_edge_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return load_edge_list(in);
}

void write_edge_list(const InputGraph &g, std::ostream &out, bool use_external_ids) {
    const auto &ext = g.external_ids();
    for (const auto &[u, v] : g.edges()) {
        if (use_external_ids) {
            out << ext[u] << ' ' << ext[v] << '\n';
        } else {
            out << u << ' ' << v << '\n';
        }
    }
}

InputGraph induced_sample(const InputGraph &g, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::domain_error("sample fraction must be in (0, 1]");
    }
    const std::size_t n = g.node_count();
    // Guard against 0.5 * 4 evaluating to 2.0000000001.
    const auto want = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(derive_seed(seed, Stream::Sample, {}));
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(want);
    std::sort(order.begin(), order.end());

    std::vector<NodeId> remap(n, kNoSupernode);
    for (NodeId i = 0; i < order.size(); ++i) {
        remap[order[i]] = i;
    }
    std::vector<Edge> edges;
    for (const NodeId u : order) {
        for (const NodeId v : g.neighbors(u)) {
            if (u < v && remap[v] != kNoSupernode) {
                edges.emplace_back(remap[u], remap[v]);
            }
        }
    }
    auto sample = InputGraph::from_edges(want, edges);
    std::vector<std::int64_t> ext(want);
    for (NodeId i = 0; i < want; ++i) {
        ext[i] = g.external_ids()[order[i]];
    }
    sample.set_external_ids(std::move(ext));
    return sample;
}

}    // namespace slugger
