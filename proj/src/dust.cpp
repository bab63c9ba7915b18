#include "cantor/dust.hpp"

#include <utility>

namespace cantor {

namespace {

ComplexRational i_pow(long m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {Rational(1), Rational(0)};
        case 1: return {Rational(0), Rational(1)};
        case 2: return {Rational(-1), Rational(0)};
        default: return {Rational(0), Rational(-1)};
    }
}

Rational upper_sqrt(const Rational& q) {
    if (q.sign() < 0) throw std::domain_error("upper_sqrt: negative");
    if (q.is_zero()) return Rational(0);
    Rational w = min(q, Rational(1, 1024));
    return certified_root(q, 2, w).hi;
}

}  // namespace

ComplexRational ComplexRational::pow(long e) const {
    if (e < 0) throw std::invalid_argument("ComplexRational::pow: negative exponent");
    ComplexRational acc{Rational(1), Rational(0)};
    ComplexRational base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

RotationVector rotation_vector(const CantorParams& params, long n, long m) {
    if (m < 1) throw std::invalid_argument("rotation_vector: m must be >= 1");
    long an = n < 0 ? -n : n;
    Rational rn = params.r_pow(an);
    ComplexRational base = n >= 0 ? ComplexRational{Rational(1), rn}
                                  : ComplexRational{rn, Rational(1)};
    RotationVector rv{n, m, base.pow(m), (Rational(1) + rn * rn).pow(m)};
    return rv;
}

CertifiedScalar theta_scalar(const CantorParams& params, long n) {
    if (n >= 0) return CertifiedScalar::arctan_of(params.r_pow(n));
    return CertifiedScalar::pi() * CertifiedScalar(Rational(1, 2)) -
           CertifiedScalar::arctan_of(params.r_pow(-n));
}

RationalInterval theta_enclosure(const CantorParams& params, long n,
                                 const Rational& target_width) {
    if (target_width.sign() <= 0) throw std::invalid_argument("theta_enclosure: width <= 0");
    CertifiedScalar t = theta_scalar(params, n);
    for (int level = 4; level <= 220; ++level) {
        RationalInterval iv = t.eval(level);
        if (iv.width() <= target_width) return iv;
    }
    throw UndecidableComparison("theta_enclosure: width not reachable at cap");
}

ComplexRational DustCertificate::replay_sum() const {
    ComplexRational acc{Rational(0), Rational(0)};
    for (const auto& s : summands) {
        ComplexRational z{eval_prefix(params, s.x), eval_prefix(params, s.y)};
        acc = acc + z.pow(m);
    }
    return acc;
}

bool DustCertificate::verify() const {
    ComplexRational diff = replay_sum() - target;
    return diff.norm2() <= residual_bound * residual_bound;
}

ComplexRational i_pow_m_conj(const ComplexRational& z, long m) {
    return i_pow(m) * z.conj();
}

DustCertificate symmetry_map(const DustCertificate& cert) {
    DustCertificate out = cert;
    out.target = i_pow_m_conj(cert.target, cert.m);
    for (auto& s : out.summands) std::swap(s.x, s.y);
    return out;
}

long disk_cover_budget(long m) {
    if (m < 3) throw std::invalid_argument("disk_cover_budget: m must be >= 3");
    if (m > 40) throw std::invalid_argument("disk_cover_budget: m too large for a long budget");
    Rational check = Rational(2).pow(m + 6) * Rational(2, 3).pow(m) / Rational(100);
    if (!(check > Rational(1)))
        throw std::logic_error("disk_cover_budget: scale inequality failed");
    return 1L << (m + 8);
}

namespace {

struct GeometryFailure : SearchFailure {
    using SearchFailure::SearchFailure;
};

// Piece assembly for one complex decomposition. A "segment" realizes
// direction * [0, s] through chunked real decompositions; a "lattice" piece
// repeats a fixed dust point and its coordinate swap.
struct Assembler {
    const CantorParams& P;
    long m;
    long digits;
    long chunk_k;
    std::vector<DustSummand> summands;

    enum class Kind { Real, Imag, RotPos, RotNeg };

    DustSummand make(Kind kind, long n, const SymbolWord& w) const {
        switch (kind) {
            case Kind::Real: return {w, SymbolWord{}};
            case Kind::Imag: return {SymbolWord{}, w};
            case Kind::RotPos: return {w, w.prepend_zeros(static_cast<std::size_t>(n))};
            case Kind::RotNeg: return {w.prepend_zeros(static_cast<std::size_t>(n)), w};
        }
        throw std::logic_error("Assembler::make: bad kind");
    }

    void segment(Kind kind, long n, const Rational& s, bool paired = false) {
        if (s.sign() < 0) throw GeometryFailure("segment: negative coefficient");
        Rational remaining = s;
        while (remaining.sign() > 0) {
            Rational part = min(remaining, Rational(chunk_k));
            auto cert = decompose({P, chunk_k, m}, part, digits);
            for (const auto& w : cert.words) {
                summands.push_back(make(kind, n, w));
                if (paired) {
                    Kind other = kind == Kind::RotPos ? Kind::RotNeg : Kind::RotPos;
                    summands.push_back(make(other, n, w));
                }
            }
            remaining -= part;
        }
    }

    void lattice(const DustSummand& base, long reps) {
        for (long i = 0; i < reps; ++i) {
            summands.push_back(base);
            summands.push_back({base.y, base.x});
        }
    }
};

struct WindowScanner {
    const CantorParams& P;
    long m;
    int cap_levels = kDefaultCompareCap;

    CertifiedScalar m_theta(long n) const {
        return CertifiedScalar(Rational(m)) * theta_scalar(P, n);
    }

    CertifiedScalar pi_mult(const Rational& c) const {
        return CertifiedScalar::pi() * CertifiedScalar(c);
    }

    bool le(const CertifiedScalar& a, const CertifiedScalar& b) const {
        return certified_compare(a, b, cap_levels) != Ordering::Greater;
    }

    // First n >= 0 with m theta_{n+1} <= c pi; the sandwich upper side
    // m theta_n > c pi is asserted.
    long scan(const Rational& c) const {
        CertifiedScalar bound = pi_mult(c);
        long cap = 4 * m + 4;
        for (long n = 0; n <= cap; ++n) {
            if (le(m_theta(n + 1), bound)) {
                if (!le(m_theta(n), bound)) return n;
                throw GeometryFailure("window scan: sandwich failed at its lower index");
            }
        }
        throw GeometryFailure("window scan: no index within cap");
    }
};

// Exact direction sum of the rotation pair at index n: (1+ir^n)^m + (r^n+i)^m.
ComplexRational pair_direction(const CantorParams& P, long n, long m) {
    return rotation_vector(P, n, m).value + rotation_vector(P, -n, m).value;
}

// Truncated word for r^j (all-ones tail cut at `digits`): 0^j 1^(digits-j).
SymbolWord word_r_pow(long j, long digits) {
    std::vector<bool> bits;
    bits.reserve(static_cast<std::size_t>(digits));
    for (long i = 0; i < j; ++i) bits.push_back(false);
    for (long i = j; i < digits; ++i) bits.push_back(true);
    return SymbolWord(std::move(bits));
}

SymbolWord word_one(long digits) { return word_r_pow(0, digits); }  // value 1 - r^digits

SymbolWord word_one_minus_r(long digits) {  // exact value 1 - r
    SymbolWord w = SymbolWord::parse("1");
    return w.pad_to(static_cast<std::size_t>(digits));
}

SymbolWord word_step_at(long n, long digits) {  // exact value (1-r) r^n
    SymbolWord w = SymbolWord::parse("1").prepend_zeros(static_cast<std::size_t>(n));
    return w.pad_to(static_cast<std::size_t>(digits));
}

}  // namespace

DustCertificate decompose_complex(const CantorParams& params, long m,
                                  const ComplexRational& target, long digits, long budget) {
    if (m < 3) throw std::invalid_argument("decompose_complex: m must be >= 3");
    if (digits < 1) throw std::invalid_argument("decompose_complex: digits must be >= 1");
    if (budget <= 0) budget = disk_cover_budget(m);
    if (target.norm2() > Rational(1))
        throw std::invalid_argument("decompose_complex: target outside the closed unit disk");

    DustCertificate cert{params, m, target, {}, Rational(0)};
    if (target.is_zero()) return cert;

    const long residue = ((m % 4) + 4) % 4;

    // m = 0 mod 4 with Im(target) < 0: decompose the conjugate and reflect.
    if (residue == 0 && target.im.sign() < 0) {
        DustCertificate flipped = decompose_complex(params, m, target.conj(), digits, budget);
        DustCertificate out = symmetry_map(flipped);
        if (!(out.target == target)) throw GeometryFailure("conjugate route: target mismatch");
        if (!out.verify()) throw GeometryFailure("conjugate route: replay failed");
        return out;
    }

    WindowScanner scan{params, m};
    Assembler mk{params, m, digits, min_certified_k(params, m), {}};
    const Rational x = target.re, y = target.im;

    auto finish = [&]() {
        cert.summands = std::move(mk.summands);
        if (static_cast<long>(cert.summands.size()) > budget)
            throw GeometryFailure("decompose_complex: summand budget exceeded");
        ComplexRational diff = cert.replay_sum() - target;
        cert.residual_bound = upper_sqrt(diff.norm2());
        if (!cert.verify()) throw GeometryFailure("decompose_complex: replay failed");
        return cert;
    };

    if (residue == 0) {
        long n0 = scan.scan(Rational(1, 2));
        CertifiedScalar split = scan.pi_mult(Rational(1, 2)) +
                                CertifiedScalar(Rational(m) * params.r_pow(3 * n0 + 3));
        long n1 = certified_compare(scan.m_theta(n0), split, scan.cap_levels) == Ordering::Less
                      ? n0 - 1
                      : n0;
        if (n1 < 0) throw GeometryFailure("m=0 mod 4: negative pair index");
        ComplexRational pair = pair_direction(params, n1, m);
        if (!pair.im.is_zero() || pair.re.sign() >= 0)
            throw GeometryFailure("m=0 mod 4: pair direction not negative-real");
        ComplexRational U = rotation_vector(params, n0 + 1, m).value;
        if (U.im.sign() <= 0) throw GeometryFailure("m=0 mod 4: upward direction lost");

        Rational s_u = y / U.im;  // y >= 0 here
        Rational x_rest = x - s_u * U.re;
        mk.segment(Assembler::Kind::RotPos, n0 + 1, s_u);
        if (x_rest.sign() >= 0) {
            mk.segment(Assembler::Kind::Real, 0, x_rest);
        } else {
            mk.segment(Assembler::Kind::RotPos, n1, x_rest / pair.re, /*paired=*/true);
        }
        return finish();
    }

    if (residue == 1) {
        long n0 = scan.scan(Rational(1));
        bool case1 = scan.le(scan.m_theta(n0 + 1), scan.pi_mult(Rational(7, 12)));
        bool case2 = !case1 && !scan.le(scan.m_theta(n0 + 1), scan.pi_mult(Rational(5, 6)));
        Rational xr = x, yr = y;
        if (case1 || case2) {
            long ne = case1 ? n0 : n0 + 1;
            ComplexRational pair = pair_direction(params, ne, m);
            if (pair.re != pair.im || pair.re.sign() >= 0)
                throw GeometryFailure("m=1 mod 4: pair direction not down-left diagonal");
            Rational c = pair.re;
            Rational s_e = max(Rational(0), max(x / c, y / c));
            mk.segment(Assembler::Kind::RotPos, ne, s_e, /*paired=*/true);
            xr = x - s_e * c;
            yr = y - s_e * c;
        } else {
            // Lattice base 2/3 + i r^(n0+1), truncated on the second word.
            DustSummand base{word_one_minus_r(digits), word_r_pow(n0 + 1, digits)};
            ComplexRational zb{eval_prefix(params, base.x), eval_prefix(params, base.y)};
            ComplexRational V = zb.pow(m);
            ComplexRational step = V + i_pow_m_conj(V, m);
            if (step.re != step.im || step.re.sign() >= 0)
                throw GeometryFailure("m=1 mod 4: lattice step not down-left diagonal");
            Rational c = step.re;
            Rational need = max(Rational(0), max(-x, -y));
            long reps = need.is_zero() ? 0 : static_cast<long>(Rational(need / -c).ceil().get_si());
            mk.lattice(base, reps);
            xr = x - Rational(reps) * c;
            yr = y - Rational(reps) * c;
        }
        if (xr.sign() < 0 || yr.sign() < 0)
            throw GeometryFailure("m=1 mod 4: residue left the first quadrant");
        mk.segment(Assembler::Kind::Real, 0, xr);
        mk.segment(Assembler::Kind::Imag, 0, yr);  // i^m = i here
        return finish();
    }

    if (residue == 2) {
        long n0 = scan.scan(Rational(3, 4));
        ComplexRational U = rotation_vector(params, n0 + 1, m).value;
        if (U.im.sign() <= 0) throw GeometryFailure("m=2 mod 4: upward direction lost");
        Rational yr = y;
        if (y.sign() < 0) {
            long n1 = scan.scan(Rational(1));
            ComplexRational step;
            DustSummand base;
            bool continuous = false;
            if (scan.le(scan.m_theta(n1 + 1), scan.pi_mult(Rational(2, 3)))) {
                if (scan.le(scan.m_theta(n1), scan.pi_mult(Rational(7, 6)))) {
                    base = {word_one_minus_r(digits), word_r_pow(n1, digits)};  // 2/3 + i r^n1
                } else {
                    continuous = true;
                }
            } else {
                base = {word_one(digits), word_step_at(n1, digits)};  // 1 + i 2r^(n1+1), exact im
            }
            if (continuous) {
                ComplexRational pair = pair_direction(params, n1, m);
                if (!pair.re.is_zero() || pair.im.sign() >= 0)
                    throw GeometryFailure("m=2 mod 4: pair direction not downward");
                mk.segment(Assembler::Kind::RotPos, n1, y / pair.im, /*paired=*/true);
                yr = Rational(0);
            } else {
                ComplexRational zb{eval_prefix(params, base.x), eval_prefix(params, base.y)};
                ComplexRational V = zb.pow(m);
                step = V + i_pow_m_conj(V, m);
                if (!step.re.is_zero() || step.im.sign() >= 0)
                    throw GeometryFailure("m=2 mod 4: lattice step not downward");
                long reps = static_cast<long>(Rational(y / step.im).ceil().get_si());
                mk.lattice(base, reps);
                yr = y - Rational(reps) * step.im;
            }
            if (yr.sign() < 0) throw GeometryFailure("m=2 mod 4: downward overshoot");
        }
        Rational s_u = yr / U.im;
        Rational x_rest = x - s_u * U.re;
        mk.segment(Assembler::Kind::RotPos, n0 + 1, s_u);
        if (x_rest.sign() >= 0) mk.segment(Assembler::Kind::Real, 0, x_rest);
        else mk.segment(Assembler::Kind::Imag, 0, -x_rest);  // i^m = -1 here
        return finish();
    }

    // residue == 3
    long n0 = scan.scan(Rational(1, 3));
    ComplexRational pair = pair_direction(params, n0, m);
    if (pair.re != -pair.im || pair.re.sign() >= 0)
        throw GeometryFailure("m=3 mod 4: pair direction not up-left diagonal");
    Rational c = pair.re;  // direction (c, -c), c < 0
    Rational s_e = max(Rational(0), max(x / c, -y / c));
    mk.segment(Assembler::Kind::RotPos, n0, s_e, /*paired=*/true);
    Rational xr = x - s_e * c;
    Rational yr = y + s_e * c;
    if (xr.sign() < 0 || yr.sign() > 0)
        throw GeometryFailure("m=3 mod 4: residue left the fourth quadrant");
    mk.segment(Assembler::Kind::Real, 0, xr);
    mk.segment(Assembler::Kind::Imag, 0, -yr);  // i^m = -i here
    return finish();
}

}  // namespace cantor
