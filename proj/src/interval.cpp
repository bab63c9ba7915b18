#include "cantor/interval.hpp"

#include <algorithm>

namespace cantor {

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
    if (b.contains(Rational(0)))
        throw std::domain_error("RationalInterval: division by interval containing 0");
    RationalInterval inv{Rational(1) / b.hi, Rational(1) / b.lo};
    return a * inv;
}

RationalInterval RationalInterval::pow(long e) const {
    if (e < 0) throw std::invalid_argument("RationalInterval::pow: negative exponent");
    if (e == 0) return {Rational(1), Rational(1)};
    Rational pl = lo.pow(e), ph = hi.pow(e);
    if (e % 2 == 1 || lo >= Rational(0)) return {pl, ph};
    if (hi <= Rational(0)) return {ph, pl};
    // even power across zero
    return {Rational(0), max(pl, ph)};
}

RationalInterval intersect(const RationalInterval& a, const RationalInterval& b) {
    Rational l = max(a.lo, b.lo), h = min(a.hi, b.hi);
    if (l > h) throw std::logic_error("intersect: empty intersection");
    return {l, h};
}

}  // namespace cantor
