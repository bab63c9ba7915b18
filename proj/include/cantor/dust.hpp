#ifndef CANTOR_DUST_HPP
#define CANTOR_DUST_HPP

#include "cantor/certified.hpp"
#include "cantor/powersum.hpp"

#include <vector>

namespace cantor {

/// Exact Gaussian rational x + i y.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexRational operator*(const ComplexRational& a, const Rational& s) {
        return {a.re * s, a.im * s};
    }
    ComplexRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    ComplexRational pow(long e) const;
    bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

/// (1 + i r^n)^m for n >= 0, or (r^|n| + i)^m for n < 0; the exact carrier of
/// the direction e^{i m theta_n}. |value|^2 = (1 + r^(2|n|))^m exactly.
struct RotationVector {
    long n;
    long m;
    ComplexRational value;
    Rational norm2;  // (1 + r^(2|n|))^m
};

RotationVector rotation_vector(const CantorParams& params, long n, long m);

/// Certified enclosure of theta_n = arctan r^n (theta_{-n} = pi/2 - theta_n).
RationalInterval theta_enclosure(const CantorParams& params, long n,
                                 const Rational& target_width);

/// theta_n as a refinable scalar, for comparisons against pi-multiples.
CertifiedScalar theta_scalar(const CantorParams& params, long n);

/// One summand z = x + i y with both coordinates addressed by words.
struct DustSummand {
    SymbolWord x;
    SymbolWord y;
};

struct DustCertificate {
    CantorParams params;
    long m;
    ComplexRational target;
    std::vector<DustSummand> summands;
    Rational residual_bound;  // bound on |sum z_j^m - target|

    ComplexRational replay_sum() const;
    /// norm2(replay - target) <= residual_bound^2, decided exactly.
    bool verify() const;
};

/// w -> i^m conj(w) realized on certificates by swapping every summand's
/// word pair; the target maps the same way.
DustCertificate symmetry_map(const DustCertificate& cert);
ComplexRational i_pow_m_conj(const ComplexRational& z, long m);

/// k = 2^(m+8) together with the exact check 2^(m+6) (2/3)^m / 100 > 1.
long disk_cover_budget(long m);

/// Constructive coverage of the closed unit disk: decomposes target into at
/// most `budget` m-th powers of dust points (budget <= 0 means 2^(m+8)).
DustCertificate decompose_complex(const CantorParams& params, long m,
                                  const ComplexRational& target, long digits,
                                  long budget = 0);

}  // namespace cantor

#endif
