// Serial vs OpenMP timings for the data-parallel kernels.
//
//   bench_kernels [nodes] [p] [repeats]

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "slugger/kernels.hpp"
#include "slugger/slugger.hpp"
#include "slugger/synthgen.hpp"

using namespace slugger;

namespace {

template <typename F>
double best_of(int repeats, F &&f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

void row(const std::string &name, double serial, double parallel, bool same) {
    std::cout << std::left << std::setw(18) << name << std::right << std::setw(12) << serial * 1e3 << std::setw(12)
              << parallel * 1e3 << std::setw(10) << (parallel > 0 ? serial / parallel : 0.0) << std::setw(8)
              << (same ? "yes" : "NO") << '\n';
}

}    // namespace

int main(int argc, char **argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
    const double p = argc > 2 ? std::strtod(argv[2], nullptr) : 0.001;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;

    const auto g = er_graph(n, p, 11);
    SluggerConfig cfg;
    cfg.iterations = 10;
    const auto s = summarize(g, cfg);

    std::cout << "graph: ER(" << n << ", " << p << ") |E|=" << g.edge_count() << " summary cost=" << s.cost()
              << " threads=" << kernels::thread_count() << '\n';
    std::cout << std::left << std::setw(18) << "kernel" << std::right << std::setw(12) << "serial_ms" << std::setw(12)
              << "omp_ms" << std::setw(10) << "speedup" << std::setw(8) << "equal" << '\n';
    std::cout << std::fixed << std::setprecision(3);

    std::vector<std::uint64_t> a(g.node_count());
    std::vector<std::uint64_t> b(g.node_count());
    const auto ts = best_of(repeats, [&] { kernels::closed_minhash_serial(g, 42, a); });
    const auto tp = best_of(repeats, [&] { kernels::closed_minhash(g, 42, b); });
    row("closed_minhash", ts, tp, a == b);

    std::vector<std::vector<NodeId>> da;
    std::vector<std::vector<NodeId>> db;
    const auto ds = best_of(repeats, [&] { da = kernels::decode_adjacency_serial(s); });
    const auto dp = best_of(repeats, [&] { db = kernels::decode_adjacency(s); });
    row("decode_adjacency", ds, dp, da == db);

    const auto degree = kernels::summary_degrees(s);
    std::vector<double> cur(s.subnode_count(), 1.0 / static_cast<double>(s.subnode_count()));
    std::vector<double> ns(s.subnode_count());
    std::vector<double> np(s.subnode_count());
    const auto ps = best_of(repeats, [&] { kernels::pagerank_gather_serial(s, degree, cur, ns); });
    const auto pp = best_of(repeats, [&] { kernels::pagerank_gather(s, degree, cur, np); });
    row("pagerank_gather", ps, pp, ns == np);
    return 0;
}
