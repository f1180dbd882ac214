// Command-line front end: summarize, verify, inspect and query hierarchical summaries.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slugger/encoder.hpp"
#include "slugger/query.hpp"
#include "slugger/slugger.hpp"
#include "slugger/summary.hpp"
#include "slugger/synthgen.hpp"

namespace {

using namespace slugger;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kIoError = 3;

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

InputGraph read_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open graph file " + path);
    }
    return load_edge_list(in);
}

HierarchicalSummary read_summary(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open summary file " + path);
    }
    return deserialize(in);
}

// Writes to a temporary sibling and renames, so a failed run leaves no partial file.
template <typename F>
void write_file(const std::string &path, F &&emit) {
    const auto tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw IoError("cannot write " + path);
        }
        emit(out);
        out.flush();
        if (!out) {
            throw IoError("write failed for " + path);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw IoError("cannot move output into place at " + path);
    }
}

// Report output: stdout or a file.
class ReportSink {
  public:
    explicit ReportSink(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw IoError("cannot write report " + path);
            }
        }
    }
    std::ostream &out() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

void check_node(const HierarchicalSummary &s, std::uint64_t v) {
    if (v >= s.subnode_count()) {
        throw UsageError("node " + std::to_string(v) + " out of range (subnodes: " +
                         std::to_string(s.subnode_count()) + ")");
    }
}

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

struct SummarizeArgs {
    std::string input;
    std::string output;
    std::string report;
    std::string memo_dump;
    std::size_t iterations{20};
    std::uint64_t seed{0};
    std::size_t height_bound{0};
    std::size_t max_candidate_size{500};
    std::size_t shingle_rounds{10};
    std::size_t repeat{1};
    bool no_prune{false};
    bool progress{false};
};

void print_summary_stats(std::ostream &out, const HierarchicalSummary &s) {
    out << "cost=" << s.cost() << '\n';
    out << "supernodes=" << s.supernode_count() << '\n';
    out << "p_edges=" << s.p_edge_count() << '\n';
    out << "n_edges=" << s.n_edge_count() << '\n';
    out << "h_edges=" << s.h_edge_count() << '\n';
    if (s.cost() > 0) {
        const auto c = edge_composition(s);
        out << "p_fraction=" << c.p_fraction << '\n';
        out << "n_fraction=" << c.n_fraction << '\n';
        out << "h_fraction=" << c.h_fraction << '\n';
    }
    out << "max_height=" << max_tree_height(s) << '\n';
    out << "mean_leaf_depth=" << mean_leaf_depth(s) << '\n';
}

int cmd_summarize(const SummarizeArgs &a) {
    const auto g = read_graph(a.input);
    SluggerConfig cfg;
    cfg.iterations = a.iterations;
    cfg.seed = a.seed;
    cfg.max_candidate_size = a.max_candidate_size;
    cfg.max_shingle_rounds = a.shingle_rounds;
    cfg.pruning_enabled = !a.no_prune;
    if (a.height_bound > 0) {
        cfg.height_bound = a.height_bound;
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (a.repeat < 1) {
        throw UsageError("--repeat must be at least 1");
    }

    ReportSink sink(a.report);
    auto &out = sink.out();
    out << std::setprecision(10);
    out << "input=" << a.input << '\n';
    out << "nodes=" << g.node_count() << '\n';
    out << "edges=" << g.edge_count() << '\n';
    out << "seed=" << cfg.seed << '\n';
    out << "iterations=" << cfg.iterations << '\n';
    out << "max_candidate_size=" << cfg.max_candidate_size << '\n';
    out << "max_shingle_rounds=" << cfg.max_shingle_rounds << '\n';
    out << "height_bound=" << (cfg.height_bound ? std::to_string(*cfg.height_bound) : "none") << '\n';
    out << "pruning=" << (cfg.pruning_enabled ? "on" : "off") << '\n';

    HierarchicalSummary first;
    double total_seconds = 0.0;
    double total_cost = 0.0;
    for (std::size_t run = 0; run < a.repeat; ++run) {
        MemoTable memo;
        SummarizeReport rep;
        SummarizeHooks hooks;
        hooks.progress = a.progress ? &std::cerr : nullptr;
        const auto start = std::chrono::steady_clock::now();
        auto s = summarize(g, cfg, &rep, &hooks, &memo);
        const auto seconds = elapsed(start);
        total_seconds += seconds;
        total_cost += static_cast<double>(s.cost());

        if (run == 0) {
            const auto check = verify_lossless(s, g);
            if (!check.ok) {
                std::cerr << "error: summary failed the lossless self-check, nothing written\n";
                for (const auto &v : check.violations) {
                    std::cerr << "  " << v << '\n';
                }
                return kVerifyFailed;
            }
            for (const auto &it : rep.iterations) {
                out << "iteration." << it.t << ".theta=" << it.theta << '\n';
                out << "iteration." << it.t << ".merges=" << it.merges << '\n';
                out << "iteration." << it.t << ".cost=" << it.cost << '\n';
            }
            out << "merges=" << rep.merges << '\n';
            out << "cost_before_prune=" << rep.cost_before_prune << '\n';
            for (int k = 0; k < 3; ++k) {
                out << "prune_step" << k + 1 << "_cost=" << rep.prune_step_cost[k] << '\n';
            }
            print_summary_stats(out, s);
            if (g.edge_count() > 0) {
                out << "relative_size=" << relative_size(s, g).to_double() << '\n';
            }
            out << "time_candidates=" << rep.candidate_seconds << '\n';
            out << "time_merge=" << rep.merge_seconds << '\n';
            out << "time_prune=" << rep.prune_seconds << '\n';
            out << "time_total=" << seconds << '\n';
            out << "memo_entries=" << rep.memo.entries << '\n';
            out << "memo_bytes=" << rep.memo.bytes_estimate << '\n';
            out << "memo_hit_rate=" << rep.memo.hit_rate << '\n';
            if (!a.memo_dump.empty()) {
                write_file(a.memo_dump, [&](std::ostream &f) { memo.dump(f); });
            }
            first = std::move(s);
        }
        if (a.repeat > 1) {
            out << "run." << run + 1 << ".time_total=" << seconds << '\n';
            out << "run." << run + 1 << ".cost=" << rep.prune_step_cost[2] << '\n';
        }
    }
    if (a.repeat > 1) {
        out << "mean.time_total=" << total_seconds / static_cast<double>(a.repeat) << '\n';
        out << "mean.cost=" << total_cost / static_cast<double>(a.repeat) << '\n';
    }
    write_file(a.output, [&](std::ostream &f) { serialize(first, f); });
    return kOk;
}

int cmd_verify(const std::string &summary_path, const std::string &graph_path) {
    const auto s = read_summary(summary_path);
    const auto g = read_graph(graph_path);
    const auto report = verify_lossless(s, g);
    if (report.ok) {
        std::cout << "lossless=yes\n";
        return kOk;
    }
    std::cout << "lossless=no\n";
    std::cout << "violations=" << report.violation_count << '\n';
    for (const auto &v : report.violations) {
        std::cout << "violation: " << v << '\n';
    }
    return kVerifyFailed;
}

int cmd_stats(const std::string &summary_path) {
    const auto s = read_summary(summary_path);
    std::cout << std::setprecision(10);
    std::cout << "subnodes=" << s.subnode_count() << '\n';
    print_summary_stats(std::cout, s);
    return kOk;
}

int cmd_neighbors(const std::string &summary_path, std::uint64_t node) {
    const auto s = read_summary(summary_path);
    check_node(s, node);
    const auto nbrs = neighbors_of(s, static_cast<NodeId>(node));
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        std::cout << (i == 0 ? "" : " ") << nbrs[i];
    }
    std::cout << '\n';
    return kOk;
}

int cmd_pagerank(const std::string &summary_path, double damping, std::size_t iters, std::size_t top) {
    const auto s = read_summary(summary_path);
    PageRankVector pr;
    try {
        pr = pagerank(s, damping, iters);
    } catch (const std::domain_error &e) {
        throw UsageError(e.what());
    }
    std::vector<NodeId> order(pr.scores.size());
    for (NodeId v = 0; v < order.size(); ++v) {
        order[v] = v;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return pr.scores[a] > pr.scores[b]; });
    order.resize(std::min(top, order.size()));
    std::cout << std::setprecision(12);
    for (const auto v : order) {
        std::cout << v << ' ' << pr.scores[v] << '\n';
    }
    return kOk;
}

int cmd_dfs(const std::string &summary_path, std::uint64_t start) {
    const auto s = read_summary(summary_path);
    check_node(s, start);
    const auto order = dfs(s, static_cast<NodeId>(start));
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::cout << (i == 0 ? "" : " ") << order[i];
    }
    std::cout << '\n';
    return kOk;
}

int cmd_bfs(const std::string &summary_path, std::uint64_t start) {
    const auto s = read_summary(summary_path);
    check_node(s, start);
    for (const auto &[v, d] : bfs(s, static_cast<NodeId>(start))) {
        std::cout << v << ' ' << d << '\n';
    }
    return kOk;
}

int cmd_decode(const std::string &summary_path, const std::string &output, const std::string &ids_from) {
    const auto s = read_summary(summary_path);
    auto g = decode(s);
    bool external = false;
    if (!ids_from.empty()) {
        const auto original = read_graph(ids_from);
        if (original.node_count() != g.node_count()) {
            throw UsageError("--ids-from graph has " + std::to_string(original.node_count()) +
                             " nodes, summary has " + std::to_string(g.node_count()));
        }
        g.set_external_ids(original.external_ids());
        external = true;
    }
    if (output.empty() || output == "-") {
        write_edge_list(g, std::cout, external);
    } else {
        write_file(output, [&](std::ostream &f) { write_edge_list(g, f, external); });
    }
    return kOk;
}

std::vector<double> parse_fractions(const std::string &text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto slash = item.find('/');
        double value = 0.0;
        try {
            if (slash == std::string::npos) {
                value = std::stod(item);
            } else {
                value = std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1));
            }
        } catch (const std::exception &) {
            throw UsageError("bad fraction '" + item + "'");
        }
        if (!(value > 0.0 && value <= 1.0)) {
            throw UsageError("fraction '" + item + "' outside (0, 1]");
        }
        out.push_back(value);
    }
    if (out.size() < 2) {
        throw UsageError("need at least two fractions");
    }
    return out;
}

int cmd_bench_scaling(const std::string &input, const std::string &fractions, std::uint64_t seed,
                      std::size_t iterations) {
    const auto g = read_graph(input);
    const auto fs = parse_fractions(fractions);
    SluggerConfig cfg;
    cfg.seed = seed;
    cfg.iterations = iterations;
    std::vector<double> edges;
    std::vector<double> seconds;
    std::cout << std::setprecision(6);
    for (const auto f : fs) {
        const auto sample = induced_sample(g, f, seed);
        const auto start = std::chrono::steady_clock::now();
        const auto s = summarize(sample, cfg);
        const auto t = elapsed(start);
        edges.push_back(static_cast<double>(sample.edge_count()));
        seconds.push_back(t);
        std::cout << "fraction=" << f << " nodes=" << sample.node_count() << " edges=" << sample.edge_count()
                  << " cost=" << s.cost() << " seconds=" << t << '\n';
    }
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
        if (edges[i] == 0.0 || seconds[i] == 0.0) {
            continue;
        }
        const auto ratio = (seconds[i + 1] / seconds[i]) / (edges[i + 1] / edges[i]);
        std::cout << "normalized_ratio." << i + 1 << '=' << ratio << '\n';
        worst = std::max(worst, ratio);
    }
    std::cout << "max_normalized_ratio=" << worst << '\n';
    return kOk;
}

struct GenArgs {
    std::string kind;
    std::string output;
    std::size_t n{0};
    std::size_t k{1};
    double p{0.0};
    std::size_t cliques{1};
    std::size_t size{2};
    std::uint64_t seed{0};
};

int cmd_gen(const GenArgs &a) {
    InputGraph g;
    try {
        if (a.kind == "theorem") {
            g = theorem_graph({a.n, a.k});
        } else if (a.kind == "er") {
            g = er_graph(a.n, a.p, a.seed);
        } else {
            g = caveman_graph(a.cliques, a.size, a.seed);
        }
    } catch (const std::domain_error &e) {
        throw UsageError(e.what());
    }
    if (a.output.empty() || a.output == "-") {
        write_edge_list(g, std::cout);
    } else {
        write_file(a.output, [&](std::ostream &f) { write_edge_list(g, f); });
    }
    return kOk;
}

}    // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hierarchical lossless graph summarization"};
    app.require_subcommand(1);

    SummarizeArgs sum;
    auto *summarize_cmd = app.add_subcommand("summarize", "Summarize an edge list into a summary file");
    summarize_cmd->add_option("input", sum.input, "Edge-list file")->required();
    summarize_cmd->add_option("-o,--output", sum.output, "Summary file to write")->required();
    summarize_cmd->add_option("--iterations", sum.iterations, "Merge iterations T")->capture_default_str();
    summarize_cmd->add_option("--seed", sum.seed, "Master seed")->capture_default_str();
    summarize_cmd->add_option("--height-bound", sum.height_bound, "Maximum tree height (0 = unbounded)");
    summarize_cmd->add_option("--max-candidate-size", sum.max_candidate_size)->capture_default_str();
    summarize_cmd->add_option("--shingle-rounds", sum.shingle_rounds)->capture_default_str();
    summarize_cmd->add_flag("--no-prune", sum.no_prune, "Skip the pruning pass");
    summarize_cmd->add_option("--report", sum.report, "Write the key=value report here instead of stdout");
    summarize_cmd->add_option("--repeat", sum.repeat, "Run N times and report per-run and mean rows");
    summarize_cmd->add_option("--memo-dump", sum.memo_dump, "Dump the encoding memo table");
    summarize_cmd->add_flag("--progress", sum.progress, "Per-iteration progress on stderr");

    std::string summary_path;
    std::string graph_path;
    auto *verify_cmd = app.add_subcommand("verify", "Check a summary against its graph");
    verify_cmd->add_option("summary", summary_path)->required();
    verify_cmd->add_option("graph", graph_path)->required();

    auto *stats_cmd = app.add_subcommand("stats", "Cost, composition and hierarchy statistics");
    stats_cmd->add_option("summary", summary_path)->required();

    std::uint64_t node = 0;
    auto *neighbors_cmd = app.add_subcommand("neighbors", "Neighbors of one subnode");
    neighbors_cmd->add_option("summary", summary_path)->required();
    neighbors_cmd->add_option("--node", node)->required();

    double damping = 0.85;
    std::size_t pr_iters = 30;
    std::size_t top = 10;
    auto *pagerank_cmd = app.add_subcommand("pagerank", "Top PageRank scores");
    pagerank_cmd->add_option("summary", summary_path)->required();
    pagerank_cmd->add_option("--damping", damping)->capture_default_str();
    pagerank_cmd->add_option("--iters", pr_iters)->capture_default_str();
    pagerank_cmd->add_option("--top", top)->capture_default_str();

    auto *dfs_cmd = app.add_subcommand("dfs", "DFS visit order");
    dfs_cmd->add_option("summary", summary_path)->required();
    dfs_cmd->add_option("--start", node)->required();

    auto *bfs_cmd = app.add_subcommand("bfs", "BFS hop distances");
    bfs_cmd->add_option("summary", summary_path)->required();
    bfs_cmd->add_option("--start", node)->required();

    std::string output;
    std::string ids_from;
    auto *decode_cmd = app.add_subcommand("decode", "Write the decoded edge list");
    decode_cmd->add_option("summary", summary_path)->required();
    decode_cmd->add_option("-o,--output", output, "Output file (default stdout)");
    decode_cmd->add_option("--ids-from", ids_from, "Original edge list, to emit its node ids");

    std::string fractions = "1/8,1/4,1/2,1";
    std::uint64_t bench_seed = 0;
    std::size_t bench_iters = 20;
    auto *bench_cmd = app.add_subcommand("bench-scaling", "Runtime against |E| on induced samples");
    bench_cmd->add_option("input", graph_path)->required();
    bench_cmd->add_option("--fractions", fractions)->capture_default_str();
    bench_cmd->add_option("--seed", bench_seed)->capture_default_str();
    bench_cmd->add_option("--iterations", bench_iters)->capture_default_str();

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a synthetic graph");
    gen_cmd->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"theorem", "er", "caveman"}));
    gen_cmd->add_option("--n", gen.n, "Groups (theorem) or nodes (er)");
    gen_cmd->add_option("--k", gen.k, "Group size (theorem)");
    gen_cmd->add_option("--p", gen.p, "Edge probability (er)");
    gen_cmd->add_option("--cliques", gen.cliques);
    gen_cmd->add_option("--size", gen.size);
    gen_cmd->add_option("--seed", gen.seed);
    gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*summarize_cmd) {
            return cmd_summarize(sum);
        }
        if (*verify_cmd) {
            return cmd_verify(summary_path, graph_path);
        }
        if (*stats_cmd) {
            return cmd_stats(summary_path);
        }
        if (*neighbors_cmd) {
            return cmd_neighbors(summary_path, node);
        }
        if (*pagerank_cmd) {
            return cmd_pagerank(summary_path, damping, pr_iters, top);
        }
        if (*dfs_cmd) {
            return cmd_dfs(summary_path, node);
        }
        if (*bfs_cmd) {
            return cmd_bfs(summary_path, node);
        }
        if (*decode_cmd) {
            return cmd_decode(summary_path, output, ids_from);
        }
        if (*bench_cmd) {
            return cmd_bench_scaling(graph_path, fractions, bench_seed, bench_iters);
        }
        if (*gen_cmd) {
            return cmd_gen(gen);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const FormatError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const InvalidSummary &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}
