#ifndef CANTOR_COVERAGE_HPP
#define CANTOR_COVERAGE_HPP

#include "cantor/errors.hpp"
#include "cantor/interval.hpp"
#include "cantor/powersum.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cantor {

/// Normalized union of disjoint closed intervals; touching pieces merge.
struct CoverageSet {
    std::vector<RationalInterval> intervals;
    // provenance
    CantorParams params;
    long k = 0;
    long m = 0;
    std::size_t n = 0;

    bool contains(const Rational& x) const;
    bool disjoint_from(const RationalInterval& iv) const;
    /// Set inclusion of unions.
    bool subset_of(const CoverageSet& other) const;
};

/// Sorts and merges raw interval pieces into a CoverageSet body.
std::vector<RationalInterval> merge_intervals(std::vector<RationalInterval> pieces);

struct GapReport {
    std::vector<RationalInterval> gaps;  // open intervals, stored by endpoints
    Rational sup_gap;
};

inline constexpr std::uint64_t kDefaultEnumBudget = 10000000ull;

/// Exact image of the power-sum map on F_n^k as a merged union, enumerated
/// over multisets of level-n intervals (the map is symmetric).
CoverageSet enumerate_image(const PowerSumProblem& problem, std::size_t n,
                            std::uint64_t budget = kDefaultEnumBudget);

GapReport gap_report(const CoverageSet& cov);

/// One uncovered window (two summands, r = 1/3 family): the exclusion
/// interval near the top of [0,2] at truncation level n.
struct TwoPowerWindow {
    std::size_t n;
    RationalInterval window;  // open (R_{u2,u2}, L_{u2,u3})
};

/// Evaluates the three competing endpoints at each level and emits the
/// window whenever the strict ordering holds. Windows are cross-checked
/// against the enumerated image at the same level when the budget allows.
std::vector<TwoPowerWindow> two_power_window(const CantorParams& params, long m,
                                             std::size_t max_n, bool cross_check = true,
                                             std::uint64_t budget = kDefaultEnumBudget);

/// Three-summand tail coverage: the level n picked through a certified
/// enclosure of 2^(-1/m) and the exact epsilon = 3 - 3 (1 - 3^-n)^m.
struct ThreePowerEpsilon {
    long n;
    Rational epsilon;
};

ThreePowerEpsilon three_power_epsilon(long m);

/// Finite-depth probe of the conjectured tight coverage at k = ceil((1/r-1)^m).
/// A nonempty gap list at finite depth is reported as a trend, never as a
/// refutation (the enumeration over-approximates).
struct ProbeReport {
    long k;
    long m;
    std::size_t n;
    std::vector<RationalInterval> gaps;
    bool obstruction_free;  // no gaps at this depth
};

ProbeReport conjecture_probe(const CantorParams& params, long m, std::size_t n,
                             std::uint64_t budget = kDefaultEnumBudget);

/// C(2^n + k - 1, k): the multiset count the enumeration would visit.
mpz_class enumeration_cost(std::size_t n, long k);

}  // namespace cantor

#endif
