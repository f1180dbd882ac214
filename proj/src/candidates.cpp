#include <algorithm>
#include <limits>
#include <random>

#include "slugger/kernels.hpp"
#include "slugger/rng.hpp"
#include "slugger/slugger.hpp"

namespace slugger {

std::uint64_t shingle(const HierarchicalSummary &s, const InputGraph &g, SupernodeId root, std::uint64_t hash_seed) {
    auto best = std::numeric_limits<std::uint64_t>::max();
    s.for_each_leaf(root, [&](NodeId u) {
        best = std::min(best, node_hash(hash_seed, u));
        for (const auto w : g.neighbors(u)) {
            best = std::min(best, node_hash(hash_seed, w));
        }
    });
    return best;
}

std::vector<CandidateSet> generate_candidates(const HierarchicalSummary &s, const InputGraph &g, std::size_t t,
                                              const SluggerConfig &cfg) {
    cfg.validate();
    const auto n = s.subnode_count();
    std::vector<SupernodeId> leaf_root(n);
    for (NodeId u = 0; u < n; ++u) {
        leaf_root[u] = s.root_of(u);
    }

    std::vector<CandidateSet> groups{s.roots()};
    std::vector<std::uint64_t> minhash(n);
    std::vector<std::uint64_t> key(s.id_bound());
    const auto cap = cfg.max_candidate_size;
    for (std::size_t round = 1; round <= cfg.max_shingle_rounds; ++round) {
        const bool oversized =
            std::any_of(groups.begin(), groups.end(), [cap](const CandidateSet &d) { return d.size() > cap; });
        if (round > 1 && !oversized) {
            break;
        }
        kernels::closed_minhash(g, derive_seed(cfg.seed, Stream::Shingle, {t, round}), minhash);
        std::fill(key.begin(), key.end(), std::numeric_limits<std::uint64_t>::max());
        for (NodeId u = 0; u < n; ++u) {
            auto &k = key[leaf_root[u]];
            k = std::min(k, minhash[u]);
        }

        std::vector<CandidateSet> next;
        for (auto &d : groups) {
            if (round > 1 && d.size() <= cap) {
                next.push_back(std::move(d));
                continue;
            }
            std::sort(d.begin(), d.end(), [&](SupernodeId a, SupernodeId b) {
                return key[a] != key[b] ? key[a] < key[b] : a < b;
            });
            for (std::size_t lo = 0; lo < d.size();) {
                std::size_t hi = lo + 1;
                while (hi < d.size() && key[d[hi]] == key[d[lo]]) {
                    ++hi;
                }
                next.emplace_back(d.begin() + static_cast<std::ptrdiff_t>(lo),
                                  d.begin() + static_cast<std::ptrdiff_t>(hi));
                lo = hi;
            }
        }
        groups = std::move(next);
    }

    std::vector<CandidateSet> out;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        auto &d = groups[gi];
        if (d.size() < 2) {
            continue;
        }
        if (d.size() <= cap) {
            std::sort(d.begin(), d.end());
            out.push_back(std::move(d));
            continue;
        }
        std::mt19937_64 rng(derive_seed(cfg.seed, Stream::Split, {t, gi}));
        std::shuffle(d.begin(), d.end(), rng);
        std::vector<CandidateSet> pending{std::move(d)};
        while (!pending.empty()) {
            auto piece = std::move(pending.back());
            pending.pop_back();
            if (piece.size() <= cap) {
                if (piece.size() >= 2) {
                    std::sort(piece.begin(), piece.end());
                    out.push_back(std::move(piece));
                }
                continue;
            }
            const auto half = piece.size() / 2;
            pending.emplace_back(piece.begin() + static_cast<std::ptrdiff_t>(half), piece.end());
            pending.emplace_back(piece.begin(), piece.begin() + static_cast<std::ptrdiff_t>(half));
        }
    }
    return out;
}

}    // namespace slugger
