#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace slugger {

using NodeId = std::uint32_t;
using SupernodeId = std::uint32_t;

inline constexpr SupernodeId kNoSupernode = std::numeric_limits<SupernodeId>::max();

/// Exact non-negative-denominator fraction. Used where the pipeline compares
/// thresholds and ratios and must not be at the mercy of rounding.
struct Fraction {
    std::int64_t num{0};
    std::int64_t den{1};

    constexpr Fraction() = default;
    constexpr Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
    }

    [[nodiscard]] Fraction reduced() const {
        const auto g = std::gcd(num < 0 ? -num : num, den);
        return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
    }
    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Fraction &a, const Fraction &b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<(const Fraction &a, const Fraction &b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Fraction &a, const Fraction &b) { return !(b < a); }
    friend bool operator>(const Fraction &a, const Fraction &b) { return b < a; }
    friend bool operator>=(const Fraction &a, const Fraction &b) { return !(a < b); }
    friend std::ostream &operator<<(std::ostream &os, const Fraction &f) { return os << f.num << '/' << f.den; }
};

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Raised when a summary's p/n-edges give some subnode pair a net count outside {0, 1}.
class InvalidSummary : public std::runtime_error {
  public:
    InvalidSummary(NodeId u, NodeId v, int net)
        : std::runtime_error("invalid summary: subnode pair (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has net count " + std::to_string(net)),
          u_(u), v_(v), net_(net) {}
    explicit InvalidSummary(const std::string &what) : std::runtime_error(what) {}
    [[nodiscard]] NodeId first() const { return u_; }
    [[nodiscard]] NodeId second() const { return v_; }
    [[nodiscard]] int net() const { return net_; }

  private:
    NodeId u_{0};
    NodeId v_{0};
    int net_{0};
};

class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}    // namespace slugger
