#ifndef CANTOR_BOUNDS_HPP
#define CANTOR_BOUNDS_HPP

#include "cantor/cantor_core.hpp"
#include "cantor/certified.hpp"
#include "cantor/interval.hpp"

#include <optional>

namespace cantor {

/// The derived quantities attached to (r, m): the subdivision level n*, the
/// seed box size k*, the window anchors a and b, and the k-range bracket.
struct BoundsProfile {
    CantorParams params;
    long m = 1;
    long n_star = 1;
    long k_star = 2;
    Rational a;            // k* (1-r)^m
    Rational b;            // a r^m + (1-r)^m
    Rational lower_bound;  // (1/r - 1)^m
    mpz_class target_k;    // ceil(lower_bound)
};

/// Exact evaluation of one k against the side conditions. Degenerate cases
/// (log arguments <= 0) are flagged rather than thrown.
struct ConditionReport {
    long k = 0;
    std::optional<long> l0;  // unset when k <= a
    std::optional<long> m0;  // unset when k + k* - 1 <= b
    bool a1 = false;
    bool a2 = false;
    bool a2prime = false;
    bool a3 = false;
    bool a4 = false;
    bool degenerate = false;

    bool all() const { return a1 && a2prime && a3 && a4; }
};

BoundsProfile profile(const CantorParams& params, long m);

ConditionReport check_conditions(const BoundsProfile& prof, long k);

/// Enclosures of M(r, m) and of the final bound M + lambda e^{1/(1-r)} + 3,
/// plus the sound integer bound ceil(hi).
struct UpperBoundReport {
    RationalInterval M;
    RationalInterval bound;
    mpz_class integer_bound;
};

UpperBoundReport upper_bound_M(const CantorParams& params, long m,
                               const Rational& target_width = Rational(1, 1000000));

/// Enclosure of the exponent threshold above which the Waring number equals
/// ceil((1/r-1)^m). Requires r^2 - 3r + 1 > 0, checked exactly.
struct ThresholdReport {
    RationalInterval enclosure;
    mpz_class integer_threshold;  // ceil(hi)
};

ThresholdReport theorem310_threshold(const CantorParams& params,
                                     const Rational& target_width = Rational(1, 1000000));

/// ceil(1/r - 1): the linear-case Waring number.
mpz_class g_alpha_1(const CantorParams& params);

/// The uncovered open interval (k r^m, (1-r)^m) when k < (1/r-1)^m.
std::optional<RationalInterval> lower_bound_gap(const BoundsProfile& prof, long k);

/// Smallest total k >= max(k*+2, ceil((1/r-1)^m)) whose condition check
/// passes at k - k*; the engine's certified coverage size for [0, k].
long min_certified_k(const CantorParams& params, long m, long scan_cap = 4096);

}  // namespace cantor

#endif
