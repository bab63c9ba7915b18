#ifndef CANTOR_PADIC_HPP
#define CANTOR_PADIC_HPP

#include "cantor/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cantor {

/// Truncated p-adic integer: a residue mod p^N carried with its truncation
/// depth. Ring operations are exact mod p^min(N_a, N_b).
class PadicInt {
public:
    PadicInt(unsigned long p, unsigned long N, const mpz_class& value);

    unsigned long p() const { return p_; }
    unsigned long depth() const { return N_; }
    const mpz_class& value() const { return v_; }
    const mpz_class& modulus() const { return mod_; }

    /// Base-p digits d_0 .. d_(N-1).
    std::vector<unsigned long> digits() const;
    /// "d0 d1 d2 ... (base p)"
    std::string digit_string() const;

    /// v_p: index of the first nonzero digit; nullopt for the zero residue.
    std::optional<unsigned long> valuation() const;

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ % p_ != 0; }

    friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
    PadicInt operator-() const;
    PadicInt pow(unsigned long e) const;
    /// Multiplicative inverse; requires a unit.
    PadicInt inverse() const;
    /// Exact division by p^e; requires p^e | value.
    PadicInt shift_down(unsigned long e) const;
    /// Reduce to a shallower truncation.
    PadicInt truncate(unsigned long N) const;

    bool congruent(const PadicInt& o, unsigned long depth) const;
    bool operator==(const PadicInt& o) const { return p_ == o.p_ && v_ == o.v_ && N_ == o.N_; }

private:
    unsigned long p_;
    unsigned long N_;
    mpz_class mod_;  // p^N
    mpz_class v_;    // in [0, p^N)
};

/// Parameters of the p-adic Cantor set: gamma in p Z_p with p^u > 2 where
/// u = v_p(gamma); gamma = p^u gamma1 with gamma1 a unit.
struct PadicCantorParams {
    unsigned long p;
    unsigned long N;  // working truncation depth
    PadicInt gamma;
    unsigned long u;       // valuation of gamma
    PadicInt gamma1;       // unit part
    mpz_class g_script;    // p^u - 1, the linear Waring number

    static PadicCantorParams make(unsigned long p, const Rational& gamma, unsigned long N);

    /// Element of C_gamma from a selection word: sum over set bits of
    /// (gamma-1) gamma^n, truncated.
    PadicInt element(const std::vector<bool>& word) const;
};

/// Certificate that target is congruent to a sum of m-th powers of C_gamma
/// elements mod p^congruence_depth.
struct PadicCertificate {
    PadicCantorParams params;
    PadicInt target;
    unsigned long m;
    std::vector<std::vector<bool>> summands;  // selection words
    unsigned long congruence_depth;

    PadicInt replay_sum() const;
    bool verify() const;
};

/// Greedy base-gamma expansion of x: digits b_n in {0, .., p^u - 1} with
/// sum b_n gamma^n = x mod p^(u * count).
std::vector<mpz_class> base_gamma_digits(const PadicInt& x, const PadicCantorParams& params);

/// Exactly p^u - 1 summands via the digit-layer construction.
PadicCertificate decompose_linear(const PadicInt& target, const PadicCantorParams& params);

/// Inductive m-th power decomposition (separate base moduli for p = 2 and
/// p >= 3); summand count p^(u+v) - 1 + p^u - 1 (2^(2u+v) - 1 + 2^u - 1 for
/// p = 2) where v = v_p(m).
PadicCertificate decompose_power(const PadicInt& target, unsigned long m,
                                 const PadicCantorParams& params);

/// Minimal t such that the t-fold sumset of {x^m mod p^j : x in C_gamma}
/// covers Z/p^j — a certified lower bound for the power Waring number.
unsigned long residue_lower_bound(const PadicCantorParams& params, unsigned long m,
                                  unsigned long j, unsigned long budget = 1u << 24);

}  // namespace cantor

#endif
