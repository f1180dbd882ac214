#include "slugger/summary.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace slugger {

HierarchicalSummary::HierarchicalSummary(std::size_t subnode_count)
    : subnode_count_(subnode_count),
      alive_count_(subnode_count),
      parent_(subnode_count, kNoSupernode),
      children_(subnode_count),
      subtree_size_(subnode_count, 1),
      alive_(subnode_count, true),
      incident_(subnode_count) {}

HierarchicalSummary HierarchicalSummary::trivial(const InputGraph &g) {
    HierarchicalSummary s(g.node_count());
    for (const auto &[u, v] : g.edges()) {
        s.set_edge(u, v, +1);
    }
    return s;
}

HierarchicalSummary HierarchicalSummary::from_forest(std::size_t subnode_count, std::size_t supernode_count,
                                                     std::span<const SupernodePair> h_edges) {
    if (supernode_count < subnode_count) {
        throw InvalidSummary("fewer supernodes than subnodes");
    }
    HierarchicalSummary s(subnode_count);
    const auto internal = supernode_count - subnode_count;
    s.parent_.resize(supernode_count, kNoSupernode);
    s.children_.resize(supernode_count);
    s.subtree_size_.resize(supernode_count, 0);
    s.alive_.resize(supernode_count, true);
    s.incident_.resize(supernode_count);
    s.alive_count_ += internal;

    for (const auto &[p, c] : h_edges) {
        if (p >= supernode_count || c >= supernode_count) {
            throw InvalidSummary("h-edge references unknown supernode");
        }
        if (p < subnode_count) {
            throw InvalidSummary("leaf supernode " + std::to_string(p) + " cannot have children");
        }
        if (s.parent_[c] != kNoSupernode) {
            throw InvalidSummary("supernode " + std::to_string(c) + " has two parents");
        }
        s.parent_[c] = p;
        s.children_[p].push_back(c);
        ++s.h_count_;
    }
    for (SupernodeId x = static_cast<SupernodeId>(subnode_count); x < supernode_count; ++x) {
        if (s.children_[x].empty()) {
            throw InvalidSummary("internal supernode " + std::to_string(x) + " has no children");
        }
        std::sort(s.children_[x].begin(), s.children_[x].end());
    }
    // Cycle check and subtree sizes: every node must reach a root within supernode_count steps.
    for (SupernodeId x = 0; x < supernode_count; ++x) {
        std::size_t steps = 0;
        for (auto y = x; s.parent_[y] != kNoSupernode; y = s.parent_[y]) {
            if (++steps > supernode_count) {
                throw InvalidSummary("hierarchy contains a cycle");
            }
        }
    }
    for (NodeId u = 0; u < subnode_count; ++u) {
        for (auto y = s.parent_[u]; y != kNoSupernode; y = s.parent_[y]) {
            ++s.subtree_size_[y];
        }
    }
    return s;
}

SupernodeId HierarchicalSummary::root_of(SupernodeId x) const {
    while (parent_[x] != kNoSupernode) {
        x = parent_[x];
    }
    return x;
}

bool HierarchicalSummary::contains(SupernodeId x, SupernodeId y) const {
    for (auto z = y; z != kNoSupernode; z = parent_[z]) {
        if (z == x) {
            return true;
        }
    }
    return false;
}

std::size_t HierarchicalSummary::depth(SupernodeId x) const {
    std::size_t d = 0;
    for (auto z = parent_[x]; z != kNoSupernode; z = parent_[z]) {
        ++d;
    }
    return d;
}

std::size_t HierarchicalSummary::height(SupernodeId x) const {
    std::size_t best = 0;
    std::vector<std::pair<SupernodeId, std::size_t>> stack{{x, 0}};
    while (!stack.empty()) {
        const auto [y, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        for (const auto c : children_[y]) {
            stack.emplace_back(c, d + 1);
        }
    }
    return best;
}

std::vector<SupernodeId> HierarchicalSummary::roots() const {
    std::vector<SupernodeId> out;
    for (SupernodeId x = 0; x < parent_.size(); ++x) {
        if (alive_[x] && parent_[x] == kNoSupernode) {
            out.push_back(x);
        }
    }
    return out;
}

SupernodeId HierarchicalSummary::add_supernode(std::span<const SupernodeId> children) {
    if (children.empty()) {
        throw std::invalid_argument("a supernode needs at least one child");
    }
    const auto id = static_cast<SupernodeId>(parent_.size());
    std::size_t size = 0;
    for (std::size_t i = 0; i < children.size(); ++i) {
        const auto c = children[i];
        if (!is_root(c)) {
            throw std::invalid_argument("child " + std::to_string(c) + " is not a root");
        }
        if (std::find(children.begin(), children.begin() + static_cast<std::ptrdiff_t>(i), c) !=
            children.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw std::invalid_argument("duplicate child");
        }
        size += subtree_size_[c];
    }
    parent_.push_back(kNoSupernode);
    children_.emplace_back(children.begin(), children.end());
    subtree_size_.push_back(size);
    alive_.push_back(true);
    incident_.emplace_back();
    for (const auto c : children) {
        parent_[c] = id;
    }
    h_count_ += children.size();
    ++alive_count_;
    return id;
}

void HierarchicalSummary::splice(SupernodeId x) {
    if (!alive(x) || is_leaf(x)) {
        throw std::invalid_argument("only alive internal supernodes can be spliced");
    }
    if (!incident_[x].empty()) {
        throw std::invalid_argument("cannot splice a supernode with incident edges");
    }
    const auto p = parent_[x];
    auto kids = std::move(children_[x]);
    children_[x].clear();
    for (const auto c : kids) {
        parent_[c] = p;
    }
    if (p != kNoSupernode) {
        auto &siblings = children_[p];
        const auto it = std::find(siblings.begin(), siblings.end(), x);
        const auto pos = siblings.erase(it);
        siblings.insert(pos, kids.begin(), kids.end());
        h_count_ -= 1;
    } else {
        h_count_ -= kids.size();
    }
    parent_[x] = kNoSupernode;
    alive_[x] = false;
    --alive_count_;
}

int HierarchicalSummary::edge_sign(SupernodeId a, SupernodeId b) const {
    const auto &list = incident_[a].size() <= incident_[b].size() ? incident_[a] : incident_[b];
    const auto other = incident_[a].size() <= incident_[b].size() ? b : a;
    for (const auto &inc : list) {
        if (inc.other == other) {
            return inc.sign;
        }
    }
    return 0;
}

void HierarchicalSummary::adjust_count(int sign, int delta) {
    if (sign > 0) {
        p_count_ = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p_count_) + delta);
    } else if (sign < 0) {
        n_count_ = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n_count_) + delta);
    }
}

void HierarchicalSummary::set_edge(SupernodeId a, SupernodeId b, int sign) {
    if (sign < -1 || sign > 1) {
        throw std::invalid_argument("edge sign must be -1, 0 or +1");
    }
    if (!alive(a) || !alive(b)) {
        throw std::invalid_argument("edge endpoint is not an alive supernode");
    }
    auto find_in = [](std::vector<Incidence> &list, SupernodeId other) {
        return std::find_if(list.begin(), list.end(), [other](const Incidence &i) { return i.other == other; });
    };
    auto remove_from = [](std::vector<Incidence> &list, std::vector<Incidence>::iterator it) {
        *it = list.back();
        list.pop_back();
    };

    auto it_a = find_in(incident_[a], b);
    const int old = it_a == incident_[a].end() ? 0 : it_a->sign;
    if (old == sign) {
        return;
    }
    adjust_count(old, -1);
    adjust_count(sign, +1);
    if (sign == 0) {
        remove_from(incident_[a], it_a);
        if (a != b) {
            remove_from(incident_[b], find_in(incident_[b], a));
        }
    } else if (old == 0) {
        incident_[a].push_back({b, static_cast<std::int8_t>(sign)});
        if (a != b) {
            incident_[b].push_back({a, static_cast<std::int8_t>(sign)});
        }
    } else {
        it_a->sign = static_cast<std::int8_t>(sign);
        if (a != b) {
            find_in(incident_[b], a)->sign = static_cast<std::int8_t>(sign);
        }
    }
}

std::vector<NodeId> HierarchicalSummary::leaves(SupernodeId x) const {
    std::vector<NodeId> out;
    out.reserve(subtree_size_[x]);
    for_each_leaf(x, [&](NodeId u) { out.push_back(u); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SupernodePair> HierarchicalSummary::sorted_edges(int sign) const {
    std::vector<SupernodePair> out;
    for (SupernodeId a = 0; a < incident_.size(); ++a) {
        for (const auto &inc : incident_[a]) {
            if (inc.sign == sign && inc.other >= a) {
                out.emplace_back(a, inc.other);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SupernodePair> HierarchicalSummary::sorted_h_edges() const {
    std::vector<SupernodePair> out;
    for (SupernodeId x = 0; x < parent_.size(); ++x) {
        if (alive_[x] && parent_[x] != kNoSupernode) {
            out.emplace_back(parent_[x], x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void HierarchicalSummary::compact() {
    std::vector<SupernodeId> remap(parent_.size(), kNoSupernode);
    auto next = static_cast<SupernodeId>(subnode_count_);
    for (SupernodeId x = 0; x < parent_.size(); ++x) {
        if (!alive_[x]) {
            continue;
        }
        remap[x] = is_leaf(x) ? x : next++;
    }
    const std::size_t n = next;
    std::vector<SupernodeId> parent(n, kNoSupernode);
    std::vector<std::vector<SupernodeId>> children(n);
    std::vector<std::size_t> sizes(n, 0);
    std::vector<std::vector<Incidence>> incident(n);
    for (SupernodeId x = 0; x < parent_.size(); ++x) {
        if (!alive_[x]) {
            continue;
        }
        const auto y = remap[x];
        parent[y] = parent_[x] == kNoSupernode ? kNoSupernode : remap[parent_[x]];
        for (const auto c : children_[x]) {
            children[y].push_back(remap[c]);
        }
        sizes[y] = subtree_size_[x];
        for (const auto &inc : incident_[x]) {
            incident[y].push_back({remap[inc.other], inc.sign});
        }
    }
    parent_ = std::move(parent);
    children_ = std::move(children);
    subtree_size_ = std::move(sizes);
    incident_ = std::move(incident);
    alive_.assign(n, true);
    alive_count_ = n;
}

void HierarchicalSummary::check_structure() const {
    const auto bound = parent_.size();
    std::size_t h = 0;
    for (SupernodeId x = 0; x < bound; ++x) {
        if (!alive_[x]) {
            if (is_leaf(x)) {
                throw InvalidSummary("leaf supernode " + std::to_string(x) + " was removed");
            }
            continue;
        }
        const auto p = parent_[x];
        if (p != kNoSupernode) {
            ++h;
            if (!alive(p) || std::count(children_[p].begin(), children_[p].end(), x) != 1) {
                throw InvalidSummary("parent/children mismatch at supernode " + std::to_string(x));
            }
        }
        if (is_leaf(x) && !children_[x].empty()) {
            throw InvalidSummary("leaf supernode " + std::to_string(x) + " has children");
        }
        if (!is_leaf(x) && children_[x].empty()) {
            throw InvalidSummary("internal supernode " + std::to_string(x) + " has no children");
        }
        std::size_t size = is_leaf(x) ? 1 : 0;
        for (const auto c : children_[x]) {
            if (!alive(c) || parent_[c] != x) {
                throw InvalidSummary("child link broken at supernode " + std::to_string(x));
            }
            size += subtree_size_[c];
        }
        if (size != subtree_size_[x]) {
            throw InvalidSummary("subtree size mismatch at supernode " + std::to_string(x));
        }
        std::size_t steps = 0;
        for (auto y = p; y != kNoSupernode; y = parent_[y]) {
            if (++steps > bound) {
                throw InvalidSummary("hierarchy contains a cycle");
            }
        }
        for (const auto &inc : incident_[x]) {
            if (!alive(inc.other) || (inc.sign != 1 && inc.sign != -1)) {
                throw InvalidSummary("edge at supernode " + std::to_string(x) + " references a removed supernode");
            }
            if (inc.other != x) {
                const auto &back = incident_[inc.other];
                const auto it = std::find_if(back.begin(), back.end(),
                                             [x](const Incidence &i) { return i.other == x; });
                if (it == back.end() || it->sign != inc.sign) {
                    throw InvalidSummary("unmirrored edge at supernode " + std::to_string(x));
                }
            }
        }
    }
    if (h != h_count_) {
        throw InvalidSummary("h-edge count out of sync");
    }
}

bool operator==(const HierarchicalSummary &a, const HierarchicalSummary &b) {
    if (a.subnode_count_ != b.subnode_count_ || a.alive_count_ != b.alive_count_) {
        return false;
    }
    const auto bound = std::max(a.parent_.size(), b.parent_.size());
    for (SupernodeId x = 0; x < bound; ++x) {
        if (a.alive(x) != b.alive(x)) {
            return false;
        }
        if (a.alive(x) && a.parent_[x] != b.parent_[x]) {
            return false;
        }
    }
    return a.sorted_edges(+1) == b.sorted_edges(+1) && a.sorted_edges(-1) == b.sorted_edges(-1);
}

// ---------------------------------------------------------------------------

std::size_t cost(const HierarchicalSummary &s) { return s.cost(); }

namespace {

void require_root(const HierarchicalSummary &s, SupernodeId a) {
    if (!s.is_root(a)) {
        throw std::domain_error("supernode " + std::to_string(a) + " is not a root");
    }
}

}    // namespace

CostComponents cost_components(const HierarchicalSummary &s, SupernodeId a) {
    require_root(s, a);
    CostComponents out;
    std::size_t nodes = 0;
    s.for_each_in_tree(a, [&](SupernodeId x) {
        ++nodes;
        for (const auto &inc : s.incident(x)) {
            if (inc.other == x) {
                ++out.p_cost;
            } else if (s.root_of(inc.other) == a) {
                out.p_cost += x < inc.other ? 1 : 0;
            } else {
                ++out.p_cost;
            }
        }
    });
    out.h_cost = nodes - 1;
    return out;
}

std::size_t pair_cost(const HierarchicalSummary &s, SupernodeId a, SupernodeId b) {
    require_root(s, a);
    require_root(s, b);
    std::size_t count = 0;
    s.for_each_in_tree(a, [&](SupernodeId x) {
        for (const auto &inc : s.incident(x)) {
            if (s.root_of(inc.other) != b) {
                continue;
            }
            if (a != b || x <= inc.other) {
                ++count;
            }
        }
    });
    return count;
}

std::vector<std::pair<Edge, int>> expand_net_counts(const HierarchicalSummary &s) {
    std::unordered_map<std::uint64_t, int> net;
    auto key = [](NodeId u, NodeId v) {
        if (u > v) {
            std::swap(u, v);
        }
        return (static_cast<std::uint64_t>(u) << 32) | v;
    };
    std::vector<char> in_small(s.subnode_count(), 0);
    for (SupernodeId a = 0; a < s.id_bound(); ++a) {
        if (!s.alive(a)) {
            continue;
        }
        for (const auto &inc : s.incident(a)) {
            const auto b = inc.other;
            if (b < a) {
                continue;
            }
            if (a == b) {
                const auto l = s.leaves(a);
                for (std::size_t i = 0; i < l.size(); ++i) {
                    for (std::size_t j = i + 1; j < l.size(); ++j) {
                        net[key(l[i], l[j])] += inc.sign;
                    }
                }
            } else if (s.contains(a, b) || s.contains(b, a)) {
                const auto big = s.contains(a, b) ? a : b;
                const auto small = big == a ? b : a;
                const auto ls = s.leaves(small);
                const auto lb = s.leaves(big);
                for (const auto u : ls) {
                    in_small[u] = 1;
                }
                for (const auto u : ls) {
                    for (const auto v : lb) {
                        if (u == v || (in_small[v] && u > v)) {
                            continue;
                        }
                        net[key(u, v)] += inc.sign;
                    }
                }
                for (const auto u : ls) {
                    in_small[u] = 0;
                }
            } else {
                const auto la = s.leaves(a);
                const auto lb = s.leaves(b);
                for (const auto u : la) {
                    for (const auto v : lb) {
                        net[key(u, v)] += inc.sign;
                    }
                }
            }
        }
    }
    std::vector<std::pair<Edge, int>> out;
    out.reserve(net.size());
    for (const auto &[k, value] : net) {
        if (value != 0) {
            out.push_back({{static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xffffffffU)}, value});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

InputGraph decode(const HierarchicalSummary &s) {
    std::vector<Edge> edges;
    for (const auto &[e, value] : expand_net_counts(s)) {
        if (value != 1) {
            throw InvalidSummary(e.first, e.second, value);
        }
        edges.push_back(e);
    }
    return InputGraph::from_edges(s.subnode_count(), edges);
}

std::vector<NodeId> neighbors_of(const HierarchicalSummary &s, NodeId v) {
    if (v >= s.subnode_count()) {
        throw std::out_of_range("subnode id " + std::to_string(v) + " out of range");
    }
    std::vector<SupernodeId> chain;
    for (SupernodeId x = v; x != kNoSupernode; x = s.parent(x)) {
        chain.push_back(x);
    }
    auto chain_pos = [&](SupernodeId y) -> std::ptrdiff_t {
        const auto it = std::find(chain.begin(), chain.end(), y);
        return it == chain.end() ? -1 : it - chain.begin();
    };

    std::vector<std::pair<NodeId, int>> counts;
    for (std::size_t level = 0; level < chain.size(); ++level) {
        const auto x = chain[level];
        for (const auto &inc : s.incident(x)) {
            auto target = inc.other;
            const auto pos = chain_pos(target);
            // An edge between two ancestors of v is seen from both ends; count it
            // once, from the lower end, over the larger supernode.
            if (pos >= 0 && static_cast<std::size_t>(pos) < level) {
                continue;
            }
            s.for_each_leaf(target, [&](NodeId u) { counts.emplace_back(u, inc.sign); });
        }
    }
    std::sort(counts.begin(), counts.end());
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < counts.size();) {
        int total = 0;
        std::size_t j = i;
        for (; j < counts.size() && counts[j].first == counts[i].first; ++j) {
            total += counts[j].second;
        }
        if (total == 1 && counts[i].first != v) {
            out.push_back(counts[i].first);
        }
        i = j;
    }
    return out;
}

std::optional<std::size_t> super_distance(const HierarchicalSummary &s, const InputGraph &g, SupernodeId a,
                                          SupernodeId b) {
    std::vector<char> target(g.node_count(), 0);
    s.for_each_leaf(b, [&](NodeId u) { target[u] = 1; });
    std::vector<std::size_t> dist(g.node_count(), static_cast<std::size_t>(-1));
    std::deque<NodeId> queue;
    s.for_each_leaf(a, [&](NodeId u) {
        dist[u] = 0;
        queue.push_back(u);
    });
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        if (target[u]) {
            return dist[u];
        }
        for (const auto w : g.neighbors(u)) {
            if (dist[w] == static_cast<std::size_t>(-1)) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return std::nullopt;
}

LosslessReport verify_lossless(const HierarchicalSummary &s, const InputGraph &g, std::size_t max_reported) {
    LosslessReport report;
    auto add = [&](std::string message) {
        report.ok = false;
        ++report.violation_count;
        if (report.violations.size() < max_reported) {
            report.violations.push_back(std::move(message));
        }
    };
    if (s.subnode_count() != g.node_count()) {
        add("subnode count " + std::to_string(s.subnode_count()) + " != graph node count " +
            std::to_string(g.node_count()));
        return report;
    }
    try {
        s.check_structure();
    } catch (const InvalidSummary &e) {
        add(e.what());
        return report;
    }
    const auto net = expand_net_counts(s);
    const auto edges = g.edges();
    std::size_t i = 0;
    std::size_t j = 0;
    auto pair_str = [](const Edge &e) {
        return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
    };
    while (i < net.size() || j < edges.size()) {
        if (j == edges.size() || (i < net.size() && net[i].first < edges[j])) {
            if (net[i].second == 1) {
                add("extra subedge " + pair_str(net[i].first));
            } else {
                add("invalid net count " + std::to_string(net[i].second) + " at " + pair_str(net[i].first));
            }
            ++i;
        } else if (i == net.size() || edges[j] < net[i].first) {
            add("missing subedge " + pair_str(edges[j]));
            ++j;
        } else {
            if (net[i].second != 1) {
                add("invalid net count " + std::to_string(net[i].second) + " at " + pair_str(net[i].first));
            }
            ++i;
            ++j;
        }
    }
    return report;
}

Fraction relative_size(const HierarchicalSummary &s, const InputGraph &g) {
    if (g.edge_count() == 0) {
        throw std::domain_error("relative size is undefined for an edgeless graph");
    }
    return {static_cast<std::int64_t>(s.cost()), static_cast<std::int64_t>(g.edge_count())};
}

EdgeComposition edge_composition(const HierarchicalSummary &s) {
    const auto total = static_cast<double>(s.cost());
    if (s.cost() == 0) {
        throw std::domain_error("edge composition is undefined for a zero-cost summary");
    }
    return {static_cast<double>(s.p_edge_count()) / total, static_cast<double>(s.n_edge_count()) / total,
            static_cast<double>(s.h_edge_count()) / total};
}

std::size_t max_tree_height(const HierarchicalSummary &s) {
    std::size_t best = 0;
    for (NodeId u = 0; u < s.subnode_count(); ++u) {
        best = std::max(best, s.depth(u));
    }
    return best;
}

double mean_leaf_depth(const HierarchicalSummary &s) {
    if (s.subnode_count() == 0) {
        return 0.0;
    }
    std::size_t total = 0;
    for (NodeId u = 0; u < s.subnode_count(); ++u) {
        total += s.depth(u);
    }
    return static_cast<double>(total) / static_cast<double>(s.subnode_count());
}

}    // namespace slugger
