#ifndef CANTOR_INTERVAL_HPP
#define CANTOR_INTERVAL_HPP

#include "cantor/rational.hpp"

namespace cantor {

/// Closed interval [lo, hi] with exact rational endpoints. All operations are
/// exact (no outward rounding is ever needed over the rationals).
struct RationalInterval {
    Rational lo;
    Rational hi;

    RationalInterval() = default;
    RationalInterval(Rational point) : lo(point), hi(point) {}
    RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
    }

    Rational width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }

    friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RationalInterval operator-(const RationalInterval& a) { return {-a.hi, -a.lo}; }
    friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
    /// Requires 0 not in b.
    friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);

    friend RationalInterval operator+(const RationalInterval& a, const Rational& s) {
        return {a.lo + s, a.hi + s};
    }
    friend RationalInterval operator*(const RationalInterval& a, const Rational& s) {
        return s >= Rational(0) ? RationalInterval{a.lo * s, a.hi * s}
                                : RationalInterval{a.hi * s, a.lo * s};
    }

    /// [lo,hi]^e for integer e >= 0, tight on the monotone pieces.
    RationalInterval pow(long e) const;

    bool operator==(const RationalInterval& o) const { return lo == o.lo && hi == o.hi; }
};

/// Intersection; throws if empty (callers only intersect intervals sharing a
/// common point by construction).
RationalInterval intersect(const RationalInterval& a, const RationalInterval& b);

inline bool disjoint(const RationalInterval& a, const RationalInterval& b) {
    return a.hi < b.lo || b.hi < a.lo;
}

}  // namespace cantor

#endif
