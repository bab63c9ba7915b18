#ifndef CANTOR_POWERSUM_HPP
#define CANTOR_POWERSUM_HPP

#include "cantor/bounds.hpp"
#include "cantor/cantor_core.hpp"
#include "cantor/errors.hpp"
#include "cantor/interval.hpp"

#include <optional>
#include <vector>

namespace cantor {

/// The problem "is every t in [0,k] a sum of k m-th powers from C_alpha".
struct PowerSumProblem {
    CantorParams params;
    long k;  // summand count
    long m;  // exponent

    PowerSumProblem(CantorParams p, long kk, long mm) : params(std::move(p)), k(kk), m(mm) {
        if (k < 1 || m < 1) throw std::invalid_argument("PowerSumProblem: k, m must be >= 1");
    }
};

/// One coordinate of a box: a level interval [u, u + r^n] addressed by a
/// word, or a frozen (degenerate) coordinate pinned at its word's value.
struct BoxCoord {
    SymbolWord word;
    Rational value;  // eval_prefix of word
    bool frozen = false;
};

/// Product of level intervals at a common depth for the non-frozen
/// coordinates. Frozen coordinates behave as points.
struct Box {
    CantorParams params;
    long depth = 0;  // level of the non-frozen coordinates
    std::vector<BoxCoord> coords;

    std::size_t active_count() const;
};

/// Exact image interval of the power-sum map on a box.
struct BoxImage {
    Rational lo;
    Rational hi;
    RationalInterval interval() const { return {lo, hi}; }
};

BoxImage box_image(const Box& box, long m);

/// The subdivision inequality: sum over non-maximal coordinates of u^(m-1)
/// (frozen values included) against lambda (u_M + r^n - r^(n+1))^(m-1), or
/// with (u_M + r^n)^(m-1) in the strong form. u_M is the largest non-frozen
/// left endpoint.
bool subdivision_ok(const Box& box, long m, bool strong);

/// Replaces every non-frozen coordinate by one of its two children so that
/// the child box image still contains the target. Children are searched in
/// order of image left endpoint (ties lexicographic, 0 preferred). The
/// criterion guarantees existence; a miss aborts loudly.
Box refine_target(const Box& box, long m, const Rational& target);

/// Replayable evidence that `target` is a sum of k m-th powers up to
/// `residual_bound`. Words may have different lengths; every word is a
/// genuine C_alpha address.
struct DecompositionCertificate {
    PowerSumProblem problem;
    Rational target;
    std::vector<SymbolWord> words;
    long depth = 0;  // requested digit depth
    Rational residual_bound;

    /// Exact replayed sum of m-th powers of the word values.
    Rational replay_sum() const;
    /// |replay - target| <= residual_bound, decided exactly.
    bool verify() const;
};

/// Recomputes the stored conservative bound sum_j ((u_j + r^len_j)^m - u_j^m)
/// from the words alone.
Rational residual_bound_from_words(const PowerSumProblem& problem,
                                   const std::vector<SymbolWord>& words);

/// Digit-refinement solver. For m = 1 the integer-shift reduction applies;
/// for m >= 2 the target is scaled into the covered window and walked through
/// the overlapping window pieces. Parameters must pass the side conditions at
/// k - k* (checked; CertificationError otherwise) unless best_effort is set.
DecompositionCertificate decompose(const PowerSumProblem& problem, const Rational& target,
                                   long digits, bool best_effort = false);

/// New certificate for target * r^(l m): every word gains l leading zeros.
DecompositionCertificate scale_certificate(const DecompositionCertificate& cert, long l);

/// Trace hook used by tests: invoked with every refined box along a
/// decomposition (after the strong criterion has been re-checked).
using RefineObserver = void (*)(const Box& child, long m);
void set_refine_observer(RefineObserver obs);

}  // namespace cantor

#endif
