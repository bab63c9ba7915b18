#ifndef CANTOR_CERTIFIED_HPP
#define CANTOR_CERTIFIED_HPP

#include "cantor/interval.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace cantor {

struct UndecidableComparison : std::runtime_error {
    explicit UndecidableComparison(const std::string& m) : std::runtime_error(m) {}
};

enum class Ordering { Less, Equal, Greater };

namespace detail {
class Node;
}

/// A real number known through a refinable enclosure. Refinements are nested:
/// every enclosure returned by eval() contains all later ones, and the true
/// value lies in each. Expressions built from these stay sound under
/// +, -, *, /, integer powers, log.
class CertifiedScalar {
public:
    CertifiedScalar() : CertifiedScalar(Rational(0)) {}
    CertifiedScalar(Rational exact);
    CertifiedScalar(long v) : CertifiedScalar(Rational(v)) {}

    /// Enclosure at refinement level `level`; widths shrink to 0 as the level
    /// grows. Larger levels never widen the result.
    RationalInterval eval(int level) const;

    /// Exact rational payload if the expression is syntactically rational.
    bool exact_value(Rational* out) const;

    friend CertifiedScalar operator+(const CertifiedScalar& a, const CertifiedScalar& b);
    friend CertifiedScalar operator-(const CertifiedScalar& a, const CertifiedScalar& b);
    friend CertifiedScalar operator*(const CertifiedScalar& a, const CertifiedScalar& b);
    friend CertifiedScalar operator/(const CertifiedScalar& a, const CertifiedScalar& b);
    friend CertifiedScalar operator-(const CertifiedScalar& a);

    CertifiedScalar pow(long e) const;

    static CertifiedScalar exp_of(const Rational& x);     // e^x, x >= 0
    static CertifiedScalar root_of(const Rational& y, long m);  // y^(1/m), y > 0
    static CertifiedScalar log_of(const CertifiedScalar& y);    // ln y, y > 0
    static CertifiedScalar arctan_of(const Rational& x);   // arctan x, x >= 0
    static CertifiedScalar pi();

private:
    explicit CertifiedScalar(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
};

inline constexpr int kDefaultCompareCap = 64;

/// Decides lhs ? rhs by refining both sides until the enclosures separate.
/// Equal is returned only when both sides are syntactically rational and
/// equal; otherwise an overlapping pair at the cap throws.
Ordering certified_compare(const CertifiedScalar& lhs, const CertifiedScalar& rhs,
                           int cap = kDefaultCompareCap);

/// [lo,hi] containing e^x with hi - lo <= target_width. Truncated Taylor
/// series; the Lagrange remainder (with e^x overestimated by 3^ceil(x)) is
/// added to the upper endpoint.
RationalInterval certified_exp(const Rational& x, const Rational& target_width);

/// Enclosure of y^(1/m) of width <= target_width, by bisection on z^m = y
/// with exact comparisons.
RationalInterval certified_root(const Rational& y, long m, const Rational& target_width);

/// Enclosure of ln y (y > 0) of width <= target_width.
RationalInterval certified_log(const Rational& y, const Rational& target_width);

/// Enclosure of arctan x (x >= 0) of width <= target_width.
RationalInterval certified_arctan(const Rational& x, const Rational& target_width);

RationalInterval certified_pi(const Rational& target_width);

/// floor(log_r x) for 0 < r < 1, x > 0: the unique j with r^(j+1) < x <= r^j,
/// found by exact repeated multiplication.
long floor_log_base_r(const Rational& r, const Rational& x);

/// Same floor for a certified x > 0, refining until both endpoints agree.
long floor_log_base_r(const Rational& r, const CertifiedScalar& x,
                      int cap = kDefaultCompareCap);

}  // namespace cantor

#endif
