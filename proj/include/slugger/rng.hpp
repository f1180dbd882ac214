#pragma once

#include <cstdint>
#include <initializer_list>

namespace slugger {

// Purpose tags for derived random streams.
enum class Stream : std::uint64_t {
    Shingle = 0x5348494e474cULL,
    Split = 0x53504c4954ULL,
    Merge = 0x4d45524745ULL,
    Sample = 0x53414d504cULL,
    Generator = 0x47454eULL,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream, a pure function of the master seed, the
/// purpose tag and any number of indices (iteration, set index, round, ...).
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream tag, std::initializer_list<std::uint64_t> indices) {
    std::uint64_t h = splitmix64(master ^ static_cast<std::uint64_t>(tag));
    for (const auto i : indices) {
        h = splitmix64(h ^ splitmix64(i + 0x632be59bd9b4e019ULL));
    }
    return h;
}

/// Per-subnode hash used by min-hash shingles.
constexpr std::uint64_t node_hash(std::uint64_t seed, std::uint64_t id) { return splitmix64(seed ^ splitmix64(id)); }

}    // namespace slugger
