#include "cantor/padic.hpp"

#include "cantor/errors.hpp"

#include <algorithm>

namespace cantor {

namespace {

mpz_class pow_ui(unsigned long base, unsigned long e) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), base, e);
    return m;
}

mpz_class mod_reduce(const mpz_class& v, const mpz_class& mod) {
    mpz_class out;
    mpz_fdiv_r(out.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    return out;
}

unsigned long vp_of_mpz(const mpz_class& v, unsigned long p) {
    if (v == 0) throw std::logic_error("vp_of_mpz: zero");
    mpz_class cur = v;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(cur.get_mpz_t(), p)) {
        cur /= p;
        ++e;
    }
    return e;
}

}  // namespace

PadicInt::PadicInt(unsigned long p, unsigned long N, const mpz_class& value)
    : p_(p), N_(N), mod_(pow_ui(p, N)), v_(mod_reduce(value, mod_)) {
    if (p < 2) throw std::invalid_argument("PadicInt: p must be >= 2");
}

std::vector<unsigned long> PadicInt::digits() const {
    std::vector<unsigned long> out;
    out.reserve(N_);
    mpz_class cur = v_;
    for (unsigned long i = 0; i < N_; ++i) {
        mpz_class d = cur % p_;
        out.push_back(d.get_ui());
        cur /= p_;
    }
    return out;
}

std::string PadicInt::digit_string() const {
    std::string s;
    for (unsigned long d : digits()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(d);
    }
    return s + " (base " + std::to_string(p_) + ")";
}

std::optional<unsigned long> PadicInt::valuation() const {
    if (v_ == 0) return std::nullopt;
    return vp_of_mpz(v_, p_);
}

PadicInt operator+(const PadicInt& a, const PadicInt& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("PadicInt: mixed primes");
    unsigned long N = std::min(a.N_, b.N_);
    return PadicInt(a.p_, N, a.v_ + b.v_);
}

PadicInt operator-(const PadicInt& a, const PadicInt& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("PadicInt: mixed primes");
    unsigned long N = std::min(a.N_, b.N_);
    return PadicInt(a.p_, N, a.v_ - b.v_);
}

PadicInt operator*(const PadicInt& a, const PadicInt& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("PadicInt: mixed primes");
    unsigned long N = std::min(a.N_, b.N_);
    return PadicInt(a.p_, N, a.v_ * b.v_);
}

PadicInt PadicInt::operator-() const { return PadicInt(p_, N_, -v_); }

PadicInt PadicInt::pow(unsigned long e) const {
    mpz_class out;
    mpz_class ex(static_cast<unsigned long>(e));
    mpz_powm(out.get_mpz_t(), v_.get_mpz_t(), ex.get_mpz_t(), mod_.get_mpz_t());
    return PadicInt(p_, N_, out);
}

PadicInt PadicInt::inverse() const {
    if (!is_unit()) throw std::domain_error("PadicInt::inverse: not a unit");
    mpz_class out;
    if (!mpz_invert(out.get_mpz_t(), v_.get_mpz_t(), mod_.get_mpz_t()))
        throw std::domain_error("PadicInt::inverse: no inverse");
    return PadicInt(p_, N_, out);
}

PadicInt PadicInt::shift_down(unsigned long e) const {
    if (e > N_) throw std::invalid_argument("PadicInt::shift_down: below zero depth");
    mpz_class pe = pow_ui(p_, e);
    if (!mpz_divisible_p(v_.get_mpz_t(), pe.get_mpz_t()))
        throw std::domain_error("PadicInt::shift_down: value not divisible by p^e");
    return PadicInt(p_, N_ - e, v_ / pe);
}

PadicInt PadicInt::truncate(unsigned long N) const {
    if (N > N_) throw std::invalid_argument("PadicInt::truncate: cannot deepen");
    return PadicInt(p_, N, v_);
}

bool PadicInt::congruent(const PadicInt& o, unsigned long depth) const {
    if (p_ != o.p_) return false;
    if (depth > N_ || depth > o.N_)
        throw std::invalid_argument("PadicInt::congruent: depth beyond truncation");
    mpz_class mod = pow_ui(p_, depth);
    return mod_reduce(v_ - o.v_, mod) == 0;
}

PadicCantorParams PadicCantorParams::make(unsigned long p, const Rational& gamma,
                                          unsigned long N) {
    if (N < 2) throw std::invalid_argument("PadicCantorParams: truncation too shallow");
    mpz_class num = gamma.num(), den = gamma.den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        throw std::invalid_argument("PadicCantorParams: gamma denominator divisible by p");
    mpz_class mod = pow_ui(p, N);
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    PadicInt g(p, N, num * dinv);
    if (g.is_zero()) throw std::invalid_argument("PadicCantorParams: gamma is 0 mod p^N");
    unsigned long u = *g.valuation();
    if (u < 1 || pow_ui(p, u) <= 2)
        throw std::invalid_argument("PadicCantorParams: need 2|gamma|_p < 1 (p^u > 2, u >= 1)");
    PadicInt g1 = g.shift_down(u);  // depth N - u
    return PadicCantorParams{p, N, g, u, PadicInt(p, N, g1.value()), pow_ui(p, u) - 1};
}

PadicInt PadicCantorParams::element(const std::vector<bool>& word) const {
    PadicInt acc(p, N, 0);
    PadicInt gpow(p, N, 1);
    PadicInt gm1 = gamma - PadicInt(p, N, 1);
    for (bool b : word) {
        if (b) acc = acc + gm1 * gpow;
        gpow = gpow * gamma;
    }
    return acc;
}

PadicInt PadicCertificate::replay_sum() const {
    PadicInt acc(params.p, params.N, 0);
    for (const auto& w : summands) acc = acc + params.element(w).pow(m);
    return acc;
}

bool PadicCertificate::verify() const {
    return replay_sum().congruent(target.truncate(params.N), congruence_depth);
}

std::vector<mpz_class> base_gamma_digits(const PadicInt& x, const PadicCantorParams& params) {
    unsigned long count = params.N / params.u;
    mpz_class pu = pow_ui(params.p, params.u);
    PadicInt ginv1 = params.gamma1.inverse();
    std::vector<mpz_class> out;
    out.reserve(count);
    PadicInt cur = x.truncate(params.N);
    for (unsigned long i = 0; i < count; ++i) {
        mpz_class b = mod_reduce(cur.value(), pu);
        out.push_back(b);
        if (i + 1 == count) break;
        PadicInt next = (cur - PadicInt(params.p, cur.depth(), b)).shift_down(params.u);
        cur = next * ginv1.truncate(next.depth());
    }
    return out;
}

PadicCertificate decompose_linear(const PadicInt& target, const PadicCantorParams& params) {
    PadicInt one(params.p, params.N, 1);
    PadicInt gm1 = params.gamma - one;
    PadicInt x = target.truncate(params.N) * gm1.inverse();
    std::vector<mpz_class> digits = base_gamma_digits(x, params);
    unsigned long layers = mpz_class(params.g_script).get_ui();
    std::vector<std::vector<bool>> words(layers);
    for (unsigned long i = 1; i <= layers; ++i) {
        words[i - 1].resize(digits.size(), false);
        for (std::size_t n = 0; n < digits.size(); ++n)
            if (digits[n] >= i) words[i - 1][n] = true;
    }
    unsigned long depth = params.u * static_cast<unsigned long>(digits.size());
    PadicCertificate cert{params, target, 1, std::move(words), depth};
    if (!cert.verify()) throw SearchFailure("decompose_linear: replay failed");
    return cert;
}

PadicCertificate decompose_power(const PadicInt& target, unsigned long m,
                                 const PadicCantorParams& params) {
    if (m < 2) throw std::invalid_argument("decompose_power: m must be >= 2");
    const unsigned long p = params.p, u = params.u, N = params.N;
    unsigned long v = 0;
    {
        mpz_class mm(static_cast<unsigned long>(m));
        if (mm != 0) v = vp_of_mpz(mm, p) ;
    }
    unsigned long m1 = m / static_cast<unsigned long>(pow_ui(p, v).get_ui());
    const bool p2 = (p == 2);
    const unsigned long base_exp = p2 ? 2 * u + v : u + v;
    if (N < base_exp + u)
        throw std::invalid_argument("decompose_power: truncation too short for one step");

    // Valuation inequality used by the induction step, checked on the
    // instances visited: ((j-1)N' - 1) u + v_p(C(m,j)) >= v for j in 2..m.
    std::vector<unsigned long> binom_vp(m + 1, 0);
    for (unsigned long j = 2; j <= m; ++j) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), m, j);
        binom_vp[j] = vp_of_mpz(c, p);
    }
    auto check_step_valuations = [&](unsigned long Nstep) {
        for (unsigned long j = 2; j <= m; ++j) {
            long lhs = (static_cast<long>(j) - 1) * static_cast<long>(Nstep) - 1;
            lhs = lhs * static_cast<long>(u) + static_cast<long>(binom_vp[j]);
            if (lhs < static_cast<long>(v))
                throw SearchFailure("decompose_power: step valuation inequality failed");
        }
    };

    PadicInt one(p, N, 1);
    PadicInt gm1 = params.gamma - one;
    PadicInt gm1_m = gm1.pow(m);

    const unsigned long actives = pow_ui(p, u).get_ui() - 1;
    const mpz_class y_slots = pow_ui(p, base_exp) - 1;

    // Base: all active summands at gamma-1; solve the y-layer count k0.
    unsigned long n_start = p2 ? 2 : 1;
    std::vector<std::vector<bool>> active(actives);
    for (auto& w : active) {
        w.assign(n_start, false);
        w[0] = true;  // value gamma - 1
    }
    mpz_class base_mod = pow_ui(p, base_exp);
    PadicInt rhs = target.truncate(N) - (gm1_m * PadicInt(p, N, actives));
    mpz_class inv_gm1m;
    mpz_invert(inv_gm1m.get_mpz_t(), gm1_m.value().get_mpz_t(), base_mod.get_mpz_t());
    mpz_class k0 = mod_reduce(rhs.value() * inv_gm1m, base_mod);
    if (k0 > y_slots) throw SearchFailure("decompose_power: base layer overflow");

    std::vector<std::vector<bool>> ys(mpz_class(y_slots).get_ui());
    for (std::size_t i = 0; i < ys.size(); ++i)
        if (mpz_class(static_cast<unsigned long>(i)) < k0) ys[i] = {true};

    auto sum_all = [&]() {
        PadicInt acc(p, N, 0);
        for (const auto& w : ys) acc = acc + params.element(w).pow(m);
        for (const auto& w : active) acc = acc + params.element(w).pow(m);
        return acc;
    };

    // Induction: at depth index n the residual is divisible by p^(u n + v);
    // one digit of the active words fixes the next layer.
    PadicInt step_unit = PadicInt(p, N, m1) * gm1_m;  // m1 (gamma-1)^m, unit
    mpz_class pu = pow_ui(p, u);
    unsigned long n_cur = n_start;
    while (u * (n_cur + 1) + v <= N) {
        check_step_valuations(n_cur);
        PadicInt residual = target.truncate(N) - sum_all();
        unsigned long need_exp = u * n_cur + v;
        if (!residual.is_zero()) {
            auto val = residual.valuation();
            if (!val || *val < need_exp)
                throw SearchFailure("decompose_power: residual valuation below the invariant");
        }
        PadicInt shifted = residual.shift_down(need_exp);
        // k1 = shifted / (m1 (gamma-1)^m gamma1^n)  mod p^u
        PadicInt denom = step_unit * params.gamma1.pow(n_cur);
        mpz_class dinv;
        mpz_invert(dinv.get_mpz_t(), denom.value().get_mpz_t(), pu.get_mpz_t());
        mpz_class k1 = mod_reduce(shifted.value() * dinv, pu);
        unsigned long k1u = k1.get_ui();
        for (unsigned long i = 0; i < actives; ++i) {
            active[i].resize(n_cur + 1, false);
            if (i < k1u) active[i][n_cur] = true;
        }
        ++n_cur;
    }

    unsigned long depth = std::min<unsigned long>(N, u * n_cur + v);
    std::vector<std::vector<bool>> words;
    words.reserve(ys.size() + active.size());
    for (auto& w : ys) words.push_back(std::move(w));
    for (auto& w : active) words.push_back(std::move(w));
    PadicCertificate cert{params, target, m, std::move(words), depth};
    if (!cert.verify()) throw SearchFailure("decompose_power: replay failed");
    return cert;
}

unsigned long residue_lower_bound(const PadicCantorParams& params, unsigned long m,
                                  unsigned long j, unsigned long budget) {
    mpz_class pj_z = pow_ui(params.p, j);
    if (pj_z > budget) throw BudgetExceeded("residue_lower_bound: p^j exceeds budget");
    unsigned long pj = pj_z.get_ui();
    unsigned long L = (j + params.u - 1) / params.u;  // gamma^L = 0 mod p^j
    if (L >= 30 || (1ull << L) > budget)
        throw BudgetExceeded("residue_lower_bound: word enumeration exceeds budget");

    // Image of C_gamma mod p^j over all selection words of length L.
    std::vector<bool> residues(pj, false);
    mpz_class gm1 = mod_reduce(params.gamma.value() - 1, pj_z);
    std::vector<mpz_class> gpow(L);
    {
        mpz_class g = mod_reduce(params.gamma.value(), pj_z), cur = 1;
        for (unsigned long i = 0; i < L; ++i) {
            gpow[i] = cur;
            cur = mod_reduce(cur * g, pj_z);
        }
    }
    std::vector<bool> powers(pj, false);
    for (unsigned long mask = 0; mask < (1ul << L); ++mask) {
        mpz_class acc = 0;
        for (unsigned long i = 0; i < L; ++i)
            if (mask & (1ul << i)) acc += gm1 * gpow[i];
        acc = mod_reduce(acc, pj_z);
        mpz_class pw;
        mpz_class ex(static_cast<unsigned long>(m));
        mpz_powm(pw.get_mpz_t(), acc.get_mpz_t(), ex.get_mpz_t(), pj_z.get_mpz_t());
        powers[pw.get_ui()] = true;
    }

    std::vector<unsigned long> plist;
    for (unsigned long x = 0; x < pj; ++x)
        if (powers[x]) plist.push_back(x);

    std::vector<bool> reach(pj, false);
    reach[0] = true;  // 0-fold sum
    for (unsigned long t = 1; t <= 2 * pj + 2; ++t) {
        std::vector<bool> next(pj, false);
        bool full = true;
        for (unsigned long x = 0; x < pj; ++x) {
            if (!reach[x]) continue;
            for (unsigned long q : plist) next[(x + q) % pj] = true;
        }
        for (unsigned long x = 0; x < pj; ++x)
            if (!next[x]) { full = false; break; }
        reach = std::move(next);
        if (full) return t;
    }
    throw SearchFailure("residue_lower_bound: sumset never covered Z/p^j");
}

}  // namespace cantor
