#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <tuple>

#include "slugger/summary.hpp"

namespace slugger {

void serialize(const HierarchicalSummary &s, std::ostream &out) {
    if (s.id_bound() != s.supernode_count()) {
        auto copy = s;
        copy.compact();
        serialize(copy, out);
        return;
    }
    const auto h = s.sorted_h_edges();
    const auto p = s.sorted_edges(+1);
    const auto n = s.sorted_edges(-1);
    out << kSummaryMagic << '\n';
    out << s.subnode_count() << ' ' << s.supernode_count() << ' ' << p.size() << ' ' << n.size() << ' ' << h.size()
        << '\n';
    for (const auto &[a, b] : h) {
        out << "H " << a << ' ' << b << '\n';
    }
    for (const auto &[a, b] : p) {
        out << "P " << a << ' ' << b << '\n';
    }
    for (const auto &[a, b] : n) {
        out << "N " << a << ' ' << b << '\n';
    }
}

std::string serialize(const HierarchicalSummary &s) {
    std::ostringstream out;
    serialize(s, out);
    return out.str();
}

namespace {

class LineReader {
  public:
    explicit LineReader(std::istream &in) : in_(in) {}

    std::string next(const char *what) {
        std::string line;
        if (!std::getline(in_, line)) {
            throw FormatError("truncated summary: missing " + std::string(what) + " at line " +
                              std::to_string(line_no_ + 1));
        }
        ++line_no_;
        return line;
    }
    [[nodiscard]] std::size_t line_no() const { return line_no_; }
    [[nodiscard]] bool at_end() {
        std::string rest;
        while (std::getline(in_, rest)) {
            ++line_no_;
            if (!rest.empty()) {
                return false;
            }
        }
        return true;
    }

  private:
    std::istream &in_;
    std::size_t line_no_{0};
};

std::vector<std::uint64_t> parse_fields(std::string_view line, std::size_t count, std::size_t line_no) {
    std::vector<std::uint64_t> out;
    while (!line.empty()) {
        if (line.front() == ' ') {
            line.remove_prefix(1);
            continue;
        }
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ')) {
            throw FormatError("malformed number at line " + std::to_string(line_no));
        }
        out.push_back(value);
        line.remove_prefix(static_cast<std::size_t>(ptr - line.data()));
    }
    if (out.size() != count) {
        throw FormatError("expected " + std::to_string(count) + " fields at line " + std::to_string(line_no));
    }
    return out;
}

SupernodePair parse_record(LineReader &reader, char tag, std::uint64_t supernodes) {
    const auto line = reader.next("record");
    if (line.size() < 2 || line[0] != tag || line[1] != ' ') {
        throw FormatError(std::string("expected '") + tag + "' record at line " + std::to_string(reader.line_no()));
    }
    const auto f = parse_fields(std::string_view(line).substr(2), 2, reader.line_no());
    if (f[0] >= supernodes || f[1] >= supernodes) {
        throw FormatError("dangling supernode reference at line " + std::to_string(reader.line_no()));
    }
    return {static_cast<SupernodeId>(f[0]), static_cast<SupernodeId>(f[1])};
}

}    // namespace

HierarchicalSummary deserialize(std::istream &in) {
    LineReader reader(in);
    if (reader.next("header") != kSummaryMagic) {
        throw FormatError("bad header: expected '" + std::string(kSummaryMagic) + "'");
    }
    const auto counts = parse_fields(reader.next("counts"), 5, reader.line_no());
    const auto subnodes = counts[0];
    const auto supernodes = counts[1];
    if (supernodes < subnodes || supernodes >= kNoSupernode) {
        throw FormatError("inconsistent supernode count");
    }

    std::vector<SupernodePair> h;
    h.reserve(counts[4]);
    for (std::uint64_t i = 0; i < counts[4]; ++i) {
        h.push_back(parse_record(reader, 'H', supernodes));
    }
    std::set<SupernodePair> seen;
    std::vector<std::pair<SupernodePair, int>> edges;
    for (const auto &[tag, count, sign] : {std::tuple{'P', counts[2], +1}, std::tuple{'N', counts[3], -1}}) {
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto e = parse_record(reader, tag, supernodes);
            if (e.first > e.second) {
                throw FormatError("edge endpoints out of order at line " + std::to_string(reader.line_no()));
            }
            if (!seen.insert(e).second) {
                throw FormatError("duplicate or conflicting edge at line " + std::to_string(reader.line_no()));
            }
            edges.emplace_back(e, sign);
        }
    }
    if (!reader.at_end()) {
        throw FormatError("trailing content after line " + std::to_string(reader.line_no()));
    }

    HierarchicalSummary s;
    try {
        s = HierarchicalSummary::from_forest(subnodes, supernodes, h);
    } catch (const InvalidSummary &e) {
        throw FormatError(e.what());
    }
    for (const auto &[e, sign] : edges) {
        s.set_edge(e.first, e.second, sign);
    }
    return s;
}

HierarchicalSummary deserialize(const std::string &text) {
    std::istringstream in(text);
    return deserialize(in);
}

}    // namespace slugger
