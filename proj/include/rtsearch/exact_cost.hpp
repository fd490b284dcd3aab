#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rtsearch {

/// A path cost of the form `straight + diag * sqrt(2)`, or infinity.
///
/// Grid arcs cost either 1 or sqrt(2), so every g, f and h value that the
/// algorithms ever produce is an integer combination of the two. Keeping the
/// two counts separately gives an exact total order (no floating tie noise)
/// and a canonical encoding, since sqrt(2) is irrational.
///
/// Components may individually be negative (RTAA*'s `f - g(s)` produces
/// values such as `-1 + 2*sqrt(2)`), but the represented value of any
/// heuristic or path cost is nonnegative.
class ExactCost {
public:
    constexpr ExactCost() = default;
    constexpr ExactCost(std::int64_t straight, std::int64_t diag) : straight_(straight), diag_(diag) {}

    static constexpr ExactCost zero() { return {}; }
    static constexpr ExactCost unit() { return {1, 0}; }
    static constexpr ExactCost sqrt2() { return {0, 1}; }
    static constexpr ExactCost infinity() {
        ExactCost c;
        c.infinite_ = true;
        return c;
    }

    constexpr std::int64_t straight() const { return straight_; }
    constexpr std::int64_t diag() const { return diag_; }
    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    double to_double() const {
        if (infinite_) return std::numeric_limits<double>::infinity();
        return static_cast<double>(straight_) + static_cast<double>(diag_) * std::sqrt(2.0);
    }

    /// Sign of the represented value: -1, 0 or +1. Infinity is +1.
    constexpr int sign() const {
        if (infinite_) return 1;
        return sign_of(straight_, diag_);
    }

    constexpr ExactCost& operator+=(const ExactCost& o) {
        if (infinite_ || o.infinite_) {
            *this = infinity();
        } else {
            straight_ += o.straight_;
            diag_ += o.diag_;
        }
        return *this;
    }

    /// Subtraction of a finite value. Subtracting infinity is undefined for
    /// heuristic arithmetic and throws.
    ExactCost& operator-=(const ExactCost& o) {
        if (o.infinite_) throw std::domain_error("ExactCost: subtracting infinity");
        if (!infinite_) {
            straight_ -= o.straight_;
            diag_ -= o.diag_;
        }
        return *this;
    }

    friend constexpr ExactCost operator+(ExactCost a, const ExactCost& b) { return a += b; }
    friend ExactCost operator-(ExactCost a, const ExactCost& b) { return a -= b; }

    friend constexpr bool operator==(const ExactCost& a, const ExactCost& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.straight_ == b.straight_ && a.diag_ == b.diag_;
    }

    friend constexpr std::strong_ordering operator<=>(const ExactCost& a, const ExactCost& b) {
        if (a.infinite_ || b.infinite_) {
            if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
            return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        const int s = sign_of(a.straight_ - b.straight_, a.diag_ - b.diag_);
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        if (infinite_) return "inf";
        return std::to_string(straight_) + "+" + std::to_string(diag_) + "r2";
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactCost& c) {
        return os << c.to_string();
    }

private:
    // sign(a + b*sqrt(2)) with integer arithmetic only.
    static constexpr int sign_of(std::int64_t a, std::int64_t b) {
        const int sa = (a > 0) - (a < 0);
        const int sb = (b > 0) - (b < 0);
        if (sa == sb) return sa;
        if (sa == 0) return sb;
        if (sb == 0) return sa;
        // Opposite signs: compare a^2 against 2*b^2.
        __extension__ using Wide = __int128;
        const Wide a2 = static_cast<Wide>(a) * a;
        const Wide b2 = static_cast<Wide>(b) * b * 2;
        if (a2 == b2) return 0;  // unreachable for integers, sqrt(2) is irrational
        return a2 > b2 ? sa : sb;
    }

    std::int64_t straight_ = 0;
    std::int64_t diag_ = 0;
    bool infinite_ = false;
};

inline ExactCost min(const ExactCost& a, const ExactCost& b) { return b < a ? b : a; }
inline ExactCost max(const ExactCost& a, const ExactCost& b) { return a < b ? b : a; }

}  // namespace rtsearch
