#include "cantor/bounds.hpp"

namespace cantor {

BoundsProfile profile(const CantorParams& params, long m) {
    if (m < 1) throw std::invalid_argument("profile: m must be a positive integer");
    BoundsProfile p{params, m};
    // n* = floor(-log_r m) + 1 = floor(log_r (1/m)) + 1
    p.n_star = floor_log_base_r(params.r, Rational(1, m)) + 1;
    Rational one_minus_r = Rational(1) - params.r;
    Rational ratio = Rational(1) + params.r_pow(p.n_star) / one_minus_r;
    p.k_star = static_cast<long>(
        Rational(params.lambda * ratio.pow(m - 1)).floor().get_si() + 2);
    p.a = Rational(p.k_star) * one_minus_r.pow(m);
    p.b = p.a * params.r_pow(m) + one_minus_r.pow(m);
    p.lower_bound = (Rational(1) / params.r - Rational(1)).pow(m);
    p.target_k = p.lower_bound.ceil();
    return p;
}

ConditionReport check_conditions(const BoundsProfile& prof, long k) {
    if (k < 2) throw std::invalid_argument("check_conditions: k must be >= 2");
    const CantorParams& P = prof.params;
    const long m = prof.m;
    Rational one_minus_r = Rational(1) - P.r;
    Rational rm = P.r_pow(m);
    Rational kq(k);

    ConditionReport rep;
    rep.k = k;

    // l0 = floor(m + log_r((1-r)(k-a)/lambda)) + 1, folding r^m into the log
    // argument keeps everything exact.
    Rational karg = one_minus_r * (kq - prof.a) / P.lambda;
    if (karg.sign() > 0) {
        rep.l0 = floor_log_base_r(P.r, rm * karg) + 1;
    } else {
        rep.degenerate = true;
    }
    Rational kk = kq + Rational(prof.k_star) - Rational(1) - prof.b;
    Rational marg = one_minus_r * kk / P.lambda;
    if (marg.sign() > 0) {
        rep.m0 = floor_log_base_r(P.r, rm * marg) + 1;
    } else {
        rep.degenerate = true;
    }

    rep.a1 = kq >= max(Rational(prof.k_star), P.lambda / one_minus_r.pow(m - 1) + Rational(1));
    Rational a2base = P.lambda / (one_minus_r * rm);
    rep.a2 = kq <= a2base + prof.a;
    rep.a2prime = kq <= a2base + prof.b + Rational(1) - Rational(prof.k_star);
    if (rep.l0) {
        rep.a3 = (kq - prof.a) * rm + (one_minus_r + P.r_pow(*rep.l0)).pow(m) >=
                 Rational(2) * one_minus_r.pow(m);
    }
    rep.a4 = kk * (Rational(1) + Rational(m) * P.r / P.lambda * one_minus_r.pow(m)) >=
             prof.lower_bound + prof.a - prof.b;
    return rep;
}

UpperBoundReport upper_bound_M(const CantorParams& params, long m, const Rational& target_width) {
    if (m < 1) throw std::invalid_argument("upper_bound_M: m must be >= 1");
    Rational one_minus_r = Rational(1) - params.r;
    CertifiedScalar E = CertifiedScalar::exp_of(Rational(1) / one_minus_r);
    CertifiedScalar lam{params.lambda};
    CertifiedScalar core = lam * E + CertifiedScalar(2);

    Rational m1 = (Rational(1) / params.r - Rational(1)).pow(m);
    Rational m3 = params.lambda / one_minus_r.pow(m - 1) + Rational(1);
    CertifiedScalar t1 = CertifiedScalar(m1) + core * CertifiedScalar(one_minus_r.pow(m));

    UpperBoundReport out;
    for (int level = 4; level <= 96; ++level) {
        RationalInterval i1 = t1.eval(level);
        RationalInterval i2 = core.eval(level);
        RationalInterval M{max(max(i1.lo, i2.lo), m3), max(max(i1.hi, i2.hi), m3)};
        RationalInterval bound = M + i2 + RationalInterval(Rational(3));
        if (bound.width() <= target_width) {
            out.M = M;
            out.bound = bound;
            out.integer_bound = bound.hi.ceil();
            return out;
        }
    }
    throw UndecidableComparison("upper_bound_M: target width unreachable at cap");
}

ThresholdReport theorem310_threshold(const CantorParams& params, const Rational& target_width) {
    // r < (3 - sqrt 5)/2 cleared of the radical: r^2 - 3r + 1 > 0 on (0, 1/2).
    Rational disc = params.r * params.r - Rational(3) * params.r + Rational(1);
    if (disc.sign() <= 0)
        throw std::domain_error("theorem310_threshold: ratio condition violated (r too large)");
    Rational one_minus_r = Rational(1) - params.r;
    CertifiedScalar E = CertifiedScalar::exp_of(Rational(1) / one_minus_r);
    Rational pre = (Rational(2) - params.r) * (params.lambda / params.r + one_minus_r);
    CertifiedScalar numarg =
        CertifiedScalar(pre) * (CertifiedScalar(params.lambda) * E + CertifiedScalar(2));
    CertifiedScalar num = CertifiedScalar::log_of(numarg);
    Rational base = (Rational(1) / params.r - Rational(1)) * one_minus_r;  // > 1 here
    CertifiedScalar den = CertifiedScalar::log_of(CertifiedScalar(base));
    CertifiedScalar thr = num / den;
    for (int level = 4; level <= 96; ++level) {
        RationalInterval iv = thr.eval(level);
        if (iv.width() <= target_width) return {iv, iv.hi.ceil()};
    }
    throw UndecidableComparison("theorem310_threshold: target width unreachable at cap");
}

mpz_class g_alpha_1(const CantorParams& params) {
    return Rational(Rational(1) / params.r - Rational(1)).ceil();
}

std::optional<RationalInterval> lower_bound_gap(const BoundsProfile& prof, long k) {
    if (k < 1) throw std::invalid_argument("lower_bound_gap: k must be >= 1");
    if (Rational(k) >= prof.lower_bound) return std::nullopt;
    Rational lo = Rational(k) * prof.params.r_pow(prof.m);
    Rational hi = (Rational(1) - prof.params.r).pow(prof.m);
    return RationalInterval{lo, hi};
}

long min_certified_k(const CantorParams& params, long m, long scan_cap) {
    BoundsProfile prof = profile(params, m);
    long start = prof.k_star + 2;
    if (prof.target_k.fits_slong_p() && prof.target_k.get_si() > start)
        start = prof.target_k.get_si();
    for (long k_total = start; k_total <= start + scan_cap; ++k_total) {
        long k = k_total - prof.k_star;
        if (k < 2) continue;
        if (check_conditions(prof, k).all()) return k_total;
    }
    throw std::runtime_error("min_certified_k: no certified k within scan cap");
}

}  // namespace cantor
