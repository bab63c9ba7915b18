#include "cantor/coverage.hpp"

#include <algorithm>

namespace cantor {

bool CoverageSet::contains(const Rational& x) const {
    for (const auto& iv : intervals)
        if (iv.contains(x)) return true;
    return false;
}

bool CoverageSet::disjoint_from(const RationalInterval& iv) const {
    for (const auto& piece : intervals)
        if (!disjoint(piece, iv)) return false;
    return true;
}

bool CoverageSet::subset_of(const CoverageSet& other) const {
    for (const auto& iv : intervals) {
        bool covered = false;
        for (const auto& o : other.intervals)
            if (o.contains(iv)) { covered = true; break; }
        if (!covered) return false;
    }
    return true;
}

std::vector<RationalInterval> merge_intervals(std::vector<RationalInterval> pieces) {
    if (pieces.empty()) return pieces;
    std::sort(pieces.begin(), pieces.end(), [](const RationalInterval& a, const RationalInterval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<RationalInterval> out;
    out.push_back(pieces.front());
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].lo <= out.back().hi) {  // touching counts as one interval
            if (pieces[i].hi > out.back().hi) out.back().hi = pieces[i].hi;
        } else {
            out.push_back(pieces[i]);
        }
    }
    return out;
}

mpz_class enumeration_cost(std::size_t n, long k) {
    mpz_class c;
    mpz_class top = mpz_class(1) << n;  // 2^n
    top += k - 1;
    mpz_bin_ui(c.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
    return c;
}

namespace {

// Multisets of left endpoints, enumerated as nondecreasing index tuples with
// running power sums.
void enumerate_rec(const std::vector<Rational>& lows, const std::vector<Rational>& highs,
                   long k, std::size_t start, const Rational& lo_acc, const Rational& hi_acc,
                   std::vector<RationalInterval>& out) {
    if (k == 0) {
        out.push_back({lo_acc, hi_acc});
        return;
    }
    for (std::size_t i = start; i < lows.size(); ++i)
        enumerate_rec(lows, highs, k - 1, i, lo_acc + lows[i], hi_acc + highs[i], out);
}

}  // namespace

CoverageSet enumerate_image(const PowerSumProblem& problem, std::size_t n, std::uint64_t budget) {
    mpz_class cost = enumeration_cost(n, problem.k);
    if (cost > mpz_class(static_cast<unsigned long>(budget)))
        throw BudgetExceeded("enumerate_image: " + cost.get_str() + " multisets exceed budget " +
                             std::to_string(budget));
    auto cover = truncation_cover(problem.params, n, /*depth_cap=*/64);
    std::vector<Rational> lows, highs;
    lows.reserve(cover.size());
    highs.reserve(cover.size());
    for (const auto& iv : cover) {
        lows.push_back(iv.lo.pow(problem.m));
        highs.push_back(iv.hi.pow(problem.m));
    }
    std::vector<RationalInterval> pieces;
    pieces.reserve(1024);
    enumerate_rec(lows, highs, problem.k, 0, Rational(0), Rational(0), pieces);
    CoverageSet cs{merge_intervals(std::move(pieces)), problem.params, problem.k, problem.m, n};
    return cs;
}

GapReport gap_report(const CoverageSet& cov) {
    GapReport rep;
    rep.sup_gap = Rational(0);
    for (std::size_t i = 1; i < cov.intervals.size(); ++i) {
        RationalInterval gap{cov.intervals[i - 1].hi, cov.intervals[i].lo};
        rep.sup_gap = max(rep.sup_gap, gap.width());
        rep.gaps.push_back(std::move(gap));
    }
    return rep;
}

std::vector<TwoPowerWindow> two_power_window(const CantorParams& params, long m,
                                             std::size_t max_n, bool cross_check,
                                             std::uint64_t budget) {
    if (m < 2) throw std::invalid_argument("two_power_window: m must be >= 2");
    std::vector<TwoPowerWindow> out;
    const Rational one(1);
    // F_n holds three distinct rightmost intervals only from level 2 on.
    for (std::size_t n = 2; n <= max_n; ++n) {
        Rational rn = params.r_pow(static_cast<long>(n));
        Rational rn1 = params.r_pow(static_cast<long>(n) - 1);
        // Last three intervals of F_n have left endpoints u1 = 1-2r^(n-1)-r^n,
        // u2 = 1-r^(n-1), u3 = 1-r^n. The exact endpoint formulas below stay
        // valid for any r in (0,1/2); emission never fires at n = 1.
        Rational r_u1u3 = (one - Rational(2) * rn1).pow(m) + one;  // right end of f(I_u1 x I_u3)
        Rational r_u2u2 = Rational(2) * (one - rn1 + rn).pow(m);   // right end of f(I_u2 x I_u2)
        Rational l_u2u3 = (one - rn1).pow(m) + (one - rn).pow(m);  // left end of f(I_u2 x I_u3)
        if (r_u1u3 < r_u2u2 && r_u2u2 < l_u2u3) {
            TwoPowerWindow w{n, RationalInterval{r_u2u2, l_u2u3}};
            if (cross_check) {
                mpz_class cost = enumeration_cost(n, 2);
                if (cost <= mpz_class(static_cast<unsigned long>(budget))) {
                    CoverageSet img = enumerate_image({params, 2, m}, n, budget);
                    // open window: interior disjointness is what the exclusion means
                    for (const auto& piece : img.intervals)
                        if (piece.lo < w.window.hi && w.window.lo < piece.hi)
                            throw std::logic_error(
                                "two_power_window: emitted window meets the enumerated image");
                }
            }
            out.push_back(std::move(w));
        }
    }
    return out;
}

ThreePowerEpsilon three_power_epsilon(long m) {
    if (m < 1) throw std::invalid_argument("three_power_epsilon: m must be >= 1");
    // n = floor(-log_3(1 - 2^(-1/m))) + 1, the floor decided on a certified
    // enclosure of 2^(-1/m).
    CertifiedScalar y = CertifiedScalar(1) - CertifiedScalar::root_of(Rational(1, 2), m);
    long n = floor_log_base_r(Rational(1, 3), y) + 1;
    Rational base = Rational(1) - Rational(1, 3).pow(n);
    Rational eps = Rational(3) - Rational(3) * base.pow(m);
    if (eps < Rational(1, 2))
        throw std::logic_error("three_power_epsilon: epsilon fell below 1/2");
    return {n, eps};
}

ProbeReport conjecture_probe(const CantorParams& params, long m, std::size_t n,
                             std::uint64_t budget) {
    BoundsProfile prof = profile(params, m);
    if (!prof.target_k.fits_slong_p())
        throw BudgetExceeded("conjecture_probe: target k does not fit in a machine long");
    long k = prof.target_k.get_si();
    CoverageSet img = enumerate_image({params, k, m}, n, budget);
    GapReport gaps = gap_report(img);
    return {k, m, n, gaps.gaps, gaps.gaps.empty()};
}

}  // namespace cantor
