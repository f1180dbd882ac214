#include "slugger/slugger.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "slugger/rng.hpp"

namespace slugger {

void SluggerConfig::validate() const {
    if (iterations < 1) {
        throw std::invalid_argument("iterations must be at least 1");
    }
    if (max_candidate_size < 2) {
        throw std::invalid_argument("max_candidate_size must be at least 2");
    }
    if (max_shingle_rounds < 1) {
        throw std::invalid_argument("max_shingle_rounds must be at least 1");
    }
}

Fraction theta(std::size_t t, std::size_t T) {
    if (t < 1 || t > T) {
        throw std::domain_error("theta: iteration index out of range");
    }
    if (t == T) {
        return Fraction{0, 1};
    }
    return Fraction{1, static_cast<std::int64_t>(t) + 1};
}

// ---------------------------------------------------------------------------

struct SluggerEngine::RootSide {
    SupernodeId root{kNoSupernode};
    std::vector<SupernodeId> part;    // root, then its children
    std::vector<PartEdge> edges;      // every incidence of a part node
};

SluggerEngine::SluggerEngine(const InputGraph &g, HierarchicalSummary s, MemoTable &memo, SluggerConfig cfg)
    : g_(&g), s_(std::move(s)), memo_(&memo), cfg_(cfg) {
    const auto bound = s_.id_bound();
    uf_.resize(bound);
    pcost_.assign(bound, 0);
    tree_nodes_.assign(bound, 0);
    height_.assign(bound, 0);
    for (SupernodeId x = 0; x < bound; ++x) {
        if (s_.alive(x)) {
            uf_[x] = s_.root_of(x);
        } else {
            uf_[x] = x;
        }
    }
    for (const auto r : s_.roots()) {
        s_.for_each_in_tree(r, [&](SupernodeId) { ++tree_nodes_[r]; });
        height_[r] = s_.height(r);
    }
    for (const auto sign : {+1, -1}) {
        for (const auto &[a, b] : s_.sorted_edges(sign)) {
            const auto ra = uf_[a];
            const auto rb = uf_[b];
            ++pcost_[ra];
            if (rb != ra) {
                ++pcost_[rb];
            }
        }
    }
}

SupernodeId SluggerEngine::find_root(SupernodeId x) const {
    while (uf_[x] != x) {
        uf_[x] = uf_[uf_[x]];
        x = uf_[x];
    }
    return x;
}

std::size_t SluggerEngine::pair_edge_cost(SupernodeId a, SupernodeId b) const {
    std::size_t count = 0;
    std::size_t self = 0;
    s_.for_each_in_tree(a, [&](SupernodeId x) {
        for (const auto &inc : s_.incident(x)) {
            if (find_root(inc.other) == b) {
                if (inc.other == x) {
                    ++self;
                } else {
                    ++count;
                }
            }
        }
    });
    return a == b ? count / 2 + self : count;
}

bool SluggerEngine::height_allows(SupernodeId a, SupernodeId b) const {
    if (!cfg_.height_bound) {
        return true;
    }
    return 1 + std::max(height_[a], height_[b]) <= *cfg_.height_bound;
}

SluggerEngine::RootSide SluggerEngine::side_of(SupernodeId a) const {
    RootSide side;
    side.root = a;
    side.part.push_back(a);
    const auto kids = s_.children(a);
    side.part.insert(side.part.end(), kids.begin(), kids.end());
    for (const auto x : side.part) {
        for (const auto &inc : s_.incident(x)) {
            side.edges.push_back({x, inc.other, find_root(inc.other), inc.sign});
        }
    }
    return side;
}

std::size_t SluggerEngine::merged_cost(const RootSide &a, const RootSide &b, std::size_t pair_ab) const {
    const auto &first = a.root < b.root ? a : b;
    const auto &second = a.root < b.root ? b : a;

    // Yellow panel exactly as build_panel lays it out after the merge; slot 0
    // stands for the not-yet-existing merged root.
    std::vector<SupernodeId> nodes{kNoSupernode, first.root, second.root};
    PanelShape shape;
    shape.parent = {-1, 0, 0};
    shape.singleton = {false, s_.is_leaf(first.root), s_.is_leaf(second.root)};
    for (const auto *side : {&first, &second}) {
        const int at = side == &first ? 1 : 2;
        for (std::size_t k = 1; k < side->part.size(); ++k) {
            nodes.push_back(side->part[k]);
            shape.parent.push_back(at);
            shape.singleton.push_back(s_.is_leaf(side->part[k]));
        }
    }
    if (nodes.size() > 7) {
        throw std::logic_error("merge panel exceeds 7 supernodes");
    }
    shape.yellow_count = nodes.size();
    const auto pos = [&](SupernodeId x) {
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            if (nodes[i] == x) {
                return static_cast<int>(i);
            }
        }
        return -1;
    };

    std::int64_t delta = 0;

    // Case 1: edges among yellow nodes.
    {
        const auto &layout = panel_layout(shape);
        auto sig = DeltaSignature::zero(shape);
        std::size_t old = 0;
        bool only_free = false;
        for (const auto *side : {&first, &second}) {
            for (const auto &e : side->edges) {
                if (e.to_root != a.root && e.to_root != b.root) {
                    continue;
                }
                const auto pf = pos(e.from);
                const auto pt = pos(e.to);
                if (pt < 0 || pf > pt) {
                    continue;
                }
                sig.add_edge(layout, pf, pt, e.sign);
                ++old;
                only_free = pf == pt && shape.singleton[static_cast<std::size_t>(pf)];
            }
        }
        if (old > 1 || (old == 1 && only_free)) {
            const auto best = min_encoding(sig, *memo_);
            delta += static_cast<std::int64_t>(best.cardinality()) - static_cast<std::int64_t>(old);
        }
    }

    // Case 2: per neighboring root C, edges from yellow nodes to C or its children.
    struct Cross {
        SupernodeId root;
        int from;
        SupernodeId to;
        std::int8_t sign;
    };
    std::vector<Cross> cross;
    for (const auto *side : {&first, &second}) {
        for (const auto &e : side->edges) {
            if (e.to_root == a.root || e.to_root == b.root) {
                continue;
            }
            if (e.to == e.to_root || s_.parent(e.to) == e.to_root) {
                cross.push_back({e.to_root, pos(e.from), e.to, e.sign});
            }
        }
    }
    std::stable_sort(cross.begin(), cross.end(), [](const Cross &x, const Cross &y) { return x.root < y.root; });
    for (std::size_t lo = 0; lo < cross.size();) {
        std::size_t hi = lo;
        while (hi < cross.size() && cross[hi].root == cross[lo].root) {
            ++hi;
        }
        const auto count = hi - lo;
        if (count > 1) {
            const auto c = cross[lo].root;
            auto shape2 = shape;
            const auto orange = static_cast<int>(nodes.size());
            std::vector<SupernodeId> onodes{c};
            shape2.parent.push_back(-1);
            shape2.singleton.push_back(s_.is_leaf(c));
            for (const auto ch : s_.children(c)) {
                onodes.push_back(ch);
                shape2.parent.push_back(orange);
                shape2.singleton.push_back(s_.is_leaf(ch));
            }
            if (onodes.size() > 3) {
                throw std::logic_error("orange panel exceeds 3 supernodes");
            }
            const auto &layout = panel_layout(shape2);
            auto sig = DeltaSignature::zero(shape2);
            for (std::size_t i = lo; i < hi; ++i) {
                const auto at = std::find(onodes.begin(), onodes.end(), cross[i].to) - onodes.begin();
                sig.add_edge(layout, cross[i].from, orange + static_cast<int>(at), cross[i].sign);
            }
            const auto best = min_encoding(sig, *memo_);
            delta += static_cast<std::int64_t>(best.cardinality()) - static_cast<std::int64_t>(count);
        }
        lo = hi;
    }

    const auto base = static_cast<std::int64_t>(tree_nodes_[a.root] - 1 + tree_nodes_[b.root] - 1 + 2 +
                                                pcost_[a.root] + pcost_[b.root] - pair_ab);
    return static_cast<std::size_t>(base + delta);
}

std::size_t SluggerEngine::merged_cost(SupernodeId a, SupernodeId b) const {
    if (a == b || !s_.is_root(a) || !s_.is_root(b)) {
        throw std::invalid_argument("merged_cost: expected two distinct roots");
    }
    return merged_cost(side_of(a), side_of(b), pair_edge_cost(a, b));
}

Saving SluggerEngine::saving(const RootSide &a, const RootSide &b, std::size_t pair_ab) const {
    const auto den = static_cast<std::int64_t>(root_cost(a.root) + root_cost(b.root) - pair_ab);
    if (den == 0) {
        return std::nullopt;
    }
    const auto merged = static_cast<std::int64_t>(merged_cost(a, b, pair_ab));
    return Fraction{den - merged, den};
}

Saving SluggerEngine::saving(SupernodeId a, SupernodeId b) const {
    if (a == b || !s_.is_root(a) || !s_.is_root(b)) {
        throw std::invalid_argument("saving: expected two distinct roots");
    }
    return saving(side_of(a), side_of(b), pair_edge_cost(a, b));
}

void SluggerEngine::put_edge(SupernodeId a, SupernodeId b, int sign) {
    const auto old = s_.edge_sign(a, b);
    if (old == sign) {
        return;
    }
    s_.set_edge(a, b, sign);
    if ((old != 0) != (sign != 0)) {
        const auto ra = find_root(a);
        const auto rb = find_root(b);
        if (sign != 0) {
            ++pcost_[ra];
            if (rb != ra) {
                ++pcost_[rb];
            }
        } else {
            --pcost_[ra];
            if (rb != ra) {
                --pcost_[rb];
            }
        }
    }
}

void SluggerEngine::reencode(const Panel &panel) {
    const auto sig = signature_of(s_, panel);
    const auto best = min_encoding(sig, *memo_);
    const auto &layout = panel_layout(panel.shape);
    for (std::size_t p = 0; p < layout.pairs().size(); ++p) {
        const auto [i, j] = layout.pairs()[p];
        put_edge(panel.nodes[static_cast<std::size_t>(i)], panel.nodes[static_cast<std::size_t>(j)], best.signs[p]);
    }
}

std::optional<SupernodeId> SluggerEngine::merge_and_update(SupernodeId a, SupernodeId b) {
    if (a == b || !s_.is_root(a) || !s_.is_root(b)) {
        throw std::invalid_argument("merge_and_update: expected two distinct roots");
    }
    if (!height_allows(a, b)) {
        return std::nullopt;
    }
    const auto pair_ab = pair_edge_cost(a, b);
    const SupernodeId kids[2] = {std::min(a, b), std::max(a, b)};
    const auto m = s_.add_supernode(kids);
    uf_.push_back(m);
    uf_[a] = m;
    uf_[b] = m;
    pcost_.push_back(pcost_[a] + pcost_[b] - pair_ab);
    tree_nodes_.push_back(tree_nodes_[a] + tree_nodes_[b] + 1);
    height_.push_back(1 + std::max(height_[a], height_[b]));

    const auto yellow = build_panel(s_, m);
    reencode(yellow);

    std::vector<SupernodeId> neighbors;
    for (const auto y : yellow.nodes) {
        for (const auto &inc : s_.incident(y)) {
            const auto c = find_root(inc.other);
            if (c != m && (inc.other == c || s_.parent(inc.other) == c)) {
                neighbors.push_back(c);
            }
        }
    }
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    for (const auto c : neighbors) {
        reencode(build_panel(s_, m, c));
    }
    return m;
}

std::size_t SluggerEngine::merge_step(const CandidateSet &d, std::size_t t, std::size_t set_index) {
    std::vector<SupernodeId> q;
    for (const auto x : d) {
        if (s_.is_root(x)) {
            q.push_back(x);
        }
    }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());

    std::mt19937_64 rng(derive_seed(cfg_.seed, Stream::Merge, {t, set_index}));
    const auto threshold = theta(t, cfg_.iterations);
    std::size_t merges = 0;
    std::unordered_map<SupernodeId, std::size_t> pair_counts;
    while (q.size() > 1) {
        const auto i = static_cast<std::size_t>(rng() % q.size());
        const auto a = q[i];
        q[i] = q.back();
        q.pop_back();

        pair_counts.clear();
        s_.for_each_in_tree(a, [&](SupernodeId x) {
            for (const auto &inc : s_.incident(x)) {
                ++pair_counts[find_root(inc.other)];
            }
        });
        const auto side_a = side_of(a);

        std::optional<Fraction> best;
        SupernodeId best_z = kNoSupernode;
        std::size_t best_slot = 0;
        for (std::size_t k = 0; k < q.size(); ++k) {
            const auto z = q[k];
            if (!height_allows(a, z)) {
                continue;
            }
            const auto it = pair_counts.find(z);
            const auto pair = it == pair_counts.end() ? std::size_t{0} : it->second;
            const auto value = saving(side_a, side_of(z), pair);
            if (!value) {
                continue;
            }
            if (!best || *value > *best || (*value == *best && z < best_z)) {
                best = value;
                best_z = z;
                best_slot = k;
            }
        }
        if (best && *best >= threshold) {
            const auto m = merge_and_update(a, best_z);
            q[best_slot] = *m;
            ++merges;
        }
    }
    return merges;
}

std::vector<CandidateSet> SluggerEngine::candidates(std::size_t t) const {
    return generate_candidates(s_, *g_, t, cfg_);
}

// ---------------------------------------------------------------------------

Saving saving(const HierarchicalSummary &s, SupernodeId a, SupernodeId b, MemoTable &memo) {
    const InputGraph none;
    SluggerEngine engine(none, s, memo);
    return engine.saving(a, b);
}

std::optional<SupernodeId> merge_and_update(HierarchicalSummary &s, SupernodeId a, SupernodeId b, MemoTable &memo,
                                            std::optional<std::size_t> height_bound) {
    const InputGraph none;
    SluggerConfig cfg;
    cfg.height_bound = height_bound;
    SluggerEngine engine(none, std::move(s), memo, cfg);
    const auto m = engine.merge_and_update(a, b);
    s = engine.release();
    return m;
}

std::size_t merge_step(HierarchicalSummary &s, const InputGraph &g, const CandidateSet &d, std::size_t t,
                       std::size_t set_index, const SluggerConfig &cfg, MemoTable &memo) {
    cfg.validate();
    SluggerEngine engine(g, std::move(s), memo, cfg);
    const auto merges = engine.merge_step(d, t, set_index);
    s = engine.release();
    return merges;
}

HierarchicalSummary summarize(const InputGraph &g, const SluggerConfig &cfg, SummarizeReport *report,
                              const SummarizeHooks *hooks, MemoTable *memo) {
    cfg.validate();
    using Clock = std::chrono::steady_clock;
    const auto seconds = [](Clock::time_point from) {
        return std::chrono::duration<double>(Clock::now() - from).count();
    };
    MemoTable local_memo;
    auto &table = memo != nullptr ? *memo : local_memo;
    SummarizeReport local_report;
    auto &rep = report != nullptr ? *report : local_report;
    rep = SummarizeReport{};

    SluggerEngine engine(g, HierarchicalSummary::trivial(g), table, cfg);
    for (std::size_t t = 1; t <= cfg.iterations; ++t) {
        const auto start = Clock::now();
        const auto sets = engine.candidates(t);
        rep.candidate_seconds += seconds(start);
        const auto merge_start = Clock::now();
        std::size_t merges = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            merges += engine.merge_step(sets[i], t, i);
            if (hooks != nullptr && hooks->after_merge_step) {
                hooks->after_merge_step(engine, t, i);
            }
        }
        rep.merge_seconds += seconds(merge_start);
        rep.merges += merges;
        rep.iterations.push_back({t, theta(t, cfg.iterations), sets.size(), merges, engine.summary().cost(),
                                  seconds(start)});
        if (hooks != nullptr && hooks->after_iteration) {
            hooks->after_iteration(engine, t);
        }
        if (hooks != nullptr && hooks->progress != nullptr) {
            const auto &it = rep.iterations.back();
            *hooks->progress << "t=" << t << " theta=" << it.theta << " sets=" << it.candidate_sets
                             << " merges=" << merges << " cost=" << it.cost << '\n';
        }
    }

    auto s = engine.release();
    rep.cost_before_prune = s.cost();
    if (cfg.pruning_enabled) {
        const auto start = Clock::now();
        prune_step1(s);
        rep.prune_step_cost[0] = s.cost();
        prune_step2(s);
        rep.prune_step_cost[1] = s.cost();
        prune_step3(s, g);
        rep.prune_step_cost[2] = s.cost();
        rep.prune_seconds = seconds(start);
    } else {
        for (auto &c : rep.prune_step_cost) {
            c = s.cost();
        }
    }
    s.compact();
    rep.memo = table.stats();
    return s;
}

}    // namespace slugger
