#include "cantor/certified.hpp"

#include <mutex>
#include <optional>
#include <utility>

namespace cantor {

namespace detail {

namespace {

Rational two_pow_neg(int level) {
    if (level < 0) level = 0;
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(level));
    return Rational(mpz_class(1), d);
}

// e^x for rational x >= 0. Remainder after n terms: e^xi * x^n / n! with
// e^xi <= 3^ceil(x).
RationalInterval exp_series(const Rational& x, const Rational& width) {
    if (x.sign() < 0) throw std::domain_error("certified_exp: x < 0");
    if (width.sign() <= 0) throw std::invalid_argument("certified_exp: width <= 0");
    if (x.is_zero()) return {Rational(1), Rational(1)};
    Rational cap = Rational(3).pow(x.ceil().get_si());
    Rational sum(1), term(1);
    long n = 1;
    for (;;) {
        term *= x;
        term /= Rational(n);
        Rational rem = cap * term;
        if (rem <= width) {
            // sum holds the first n terms (indices 0..n-1); remainder bound
            // covers everything from index n on, term included below.
            return {sum, sum + term + rem};
        }
        sum += term;
        ++n;
        if (n > 100000) throw std::logic_error("certified_exp: series did not converge");
    }
}

RationalInterval root_bisect(const Rational& y, long m, const Rational& width) {
    if (y.sign() <= 0) throw std::domain_error("certified_root: y <= 0");
    if (m <= 0) throw std::invalid_argument("certified_root: m <= 0");
    if (m == 1 || y == Rational(1)) return {y, y};
    Rational lo = min(Rational(1), y), hi = max(Rational(1), y);
    while (hi - lo > width) {
        Rational mid = (lo + hi) / Rational(2);
        Rational p = mid.pow(m);
        if (p == y) return {mid, mid};
        (p < y ? lo : hi) = mid;
    }
    return {lo, hi};
}

// atanh series: atanh(w) = sum w^(2j+1)/(2j+1), |w| < 1.
// Tail after the j-term <= |w|^(2j+3) / ((2j+3)(1-w^2)).
RationalInterval atanh_series(const Rational& w, const Rational& width) {
    Rational w2 = w * w;
    if (w2 >= Rational(1)) throw std::domain_error("atanh: |w| >= 1");
    Rational sum = w, pw = w;
    long j = 0;
    Rational geom = Rational(1) / (Rational(1) - w2);
    for (;;) {
        pw *= w2;
        ++j;
        Rational tail = (pw / Rational(2 * j + 1)).abs() * geom;
        if (tail <= width) return {sum - tail, sum + tail};
        sum += pw / Rational(2 * j + 1);
        if (j > 100000) throw std::logic_error("atanh: series did not converge");
    }
}

RationalInterval log_series(const Rational& y, const Rational& width) {
    if (y.sign() <= 0) throw std::domain_error("certified_log: y <= 0");
    if (y == Rational(1)) return {Rational(0), Rational(0)};
    // Reduce into (2/3, 4/3] by powers of two: ln y = k ln 2 + ln z.
    Rational z = y;
    long k = 0;
    while (z > Rational(4, 3)) { z /= Rational(2); ++k; }
    while (z <= Rational(2, 3)) { z *= Rational(2); --k; }
    Rational w = (z - Rational(1)) / (z + Rational(1));
    Rational half = width / Rational(2);
    RationalInterval lnz = atanh_series(w, half / Rational(2)) * Rational(2);
    if (k == 0) return lnz;
    Rational kw = (half / Rational(2)) / Rational(k > 0 ? k : -k);
    RationalInterval ln2 = atanh_series(Rational(1, 3), kw) * Rational(2);
    return lnz + ln2 * Rational(k);
}

// Alternating series for arctan on [0, 1); terms strictly decrease.
RationalInterval arctan_series(const Rational& x, const Rational& width) {
    Rational x2 = x * x;
    Rational sum = x, pw = x;
    long j = 0;
    for (;;) {
        pw *= x2;
        ++j;
        Rational term = pw / Rational(2 * j + 1);
        if (term <= width) {
            // Alternating: the value lies between sum and sum -/+ term.
            if (j % 2 == 1) return {sum - term, sum};
            return {sum, sum + term};
        }
        if (j % 2 == 1) sum -= term; else sum += term;
        if (j > 200000) throw std::logic_error("arctan: series did not converge");
    }
}

RationalInterval pi_machin(const Rational& width) {
    // pi = 16 arctan(1/5) - 4 arctan(1/239)
    Rational w = width / Rational(32);
    RationalInterval a = arctan_series(Rational(1, 5), w);
    RationalInterval b = arctan_series(Rational(1, 239), w);
    return a * Rational(16) - b * Rational(4);
}

RationalInterval arctan_any(const Rational& x, const Rational& width) {
    if (x.sign() < 0) throw std::domain_error("certified_arctan: x < 0");
    if (x < Rational(1)) return arctan_series(x, width);
    if (x == Rational(1)) return pi_machin(width * Rational(2)) * Rational(1, 4);
    // arctan x = pi/2 - arctan(1/x)
    Rational half = width / Rational(2);
    RationalInterval p = pi_machin(half) * Rational(1, 2);
    return p - arctan_series(Rational(1) / x, half);
}

}  // namespace

class Node {
public:
    virtual ~Node() = default;

    RationalInterval eval(int level) const {
        std::lock_guard<std::mutex> g(mu_);
        if (cache_ && cached_level_ >= level) return *cache_;
        RationalInterval iv = raw_eval(level);
        if (cache_) iv = intersect(iv, *cache_);
        cache_ = iv;
        cached_level_ = level;
        return iv;
    }

    virtual bool exact_value(Rational*) const { return false; }

protected:
    virtual RationalInterval raw_eval(int level) const = 0;

private:
    mutable std::mutex mu_;
    mutable std::optional<RationalInterval> cache_;
    mutable int cached_level_ = -1;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

struct ConstNode final : Node {
    Rational v;
    explicit ConstNode(Rational r) : v(std::move(r)) {}
    RationalInterval raw_eval(int) const override { return {v, v}; }
    bool exact_value(Rational* out) const override {
        if (out) *out = v;
        return true;
    }
};

struct ExpNode final : Node {
    Rational x;
    explicit ExpNode(Rational r) : x(std::move(r)) {}
    RationalInterval raw_eval(int level) const override { return exp_series(x, two_pow_neg(level)); }
};

struct RootNode final : Node {
    Rational y;
    long m;
    RootNode(Rational r, long mm) : y(std::move(r)), m(mm) {}
    RationalInterval raw_eval(int level) const override { return root_bisect(y, m, two_pow_neg(level)); }
};

struct ArctanNode final : Node {
    Rational x;
    explicit ArctanNode(Rational r) : x(std::move(r)) {}
    RationalInterval raw_eval(int level) const override { return arctan_any(x, two_pow_neg(level)); }
};

struct PiNode final : Node {
    RationalInterval raw_eval(int level) const override { return pi_machin(two_pow_neg(level)); }
};

struct LogNode final : Node {
    NodePtr arg;
    explicit LogNode(NodePtr a) : arg(std::move(a)) {}
    RationalInterval raw_eval(int level) const override {
        RationalInterval a = arg->eval(level);
        int boost = level;
        while (a.lo.sign() <= 0) {
            boost += 8;
            if (boost > level + 512)
                throw std::domain_error("certified log: operand not provably positive");
            a = arg->eval(boost);
        }
        Rational w = two_pow_neg(level + 1);
        RationalInterval llo = log_series(a.lo, w);
        if (a.is_point()) return llo;
        RationalInterval lhi = log_series(a.hi, w);
        return {llo.lo, lhi.hi};
    }
};

struct BinNode final : Node {
    enum Op { Add, Sub, Mul, Div } op;
    NodePtr a, b;
    BinNode(Op o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
    RationalInterval raw_eval(int level) const override {
        RationalInterval ia = a->eval(level);
        RationalInterval ib = b->eval(level);
        switch (op) {
            case Add: return ia + ib;
            case Sub: return ia - ib;
            case Mul: return ia * ib;
            case Div: {
                int boost = level;
                while (ib.contains(Rational(0))) {
                    boost += 8;
                    if (boost > level + 512)
                        throw std::domain_error("certified division: denominator not separated from 0");
                    ib = b->eval(boost);
                }
                return ia / ib;
            }
        }
        throw std::logic_error("BinNode: bad op");
    }
    bool exact_value(Rational* out) const override {
        Rational x, y;
        if (!a->exact_value(&x) || !b->exact_value(&y)) return false;
        switch (op) {
            case Add: x += y; break;
            case Sub: x -= y; break;
            case Mul: x *= y; break;
            case Div:
                if (y.is_zero()) return false;
                x /= y;
                break;
        }
        if (out) *out = x;
        return true;
    }
};

struct PowNode final : Node {
    NodePtr a;
    long e;
    PowNode(NodePtr x, long ee) : a(std::move(x)), e(ee) {}
    RationalInterval raw_eval(int level) const override { return a->eval(level).pow(e); }
    bool exact_value(Rational* out) const override {
        Rational x;
        if (!a->exact_value(&x)) return false;
        if (out) *out = x.pow(e);
        return true;
    }
};

struct NegNode final : Node {
    NodePtr a;
    explicit NegNode(NodePtr x) : a(std::move(x)) {}
    RationalInterval raw_eval(int level) const override { return -a->eval(level); }
    bool exact_value(Rational* out) const override {
        Rational x;
        if (!a->exact_value(&x)) return false;
        if (out) *out = -x;
        return true;
    }
};

}  // namespace

}  // namespace detail

using detail::Node;

CertifiedScalar::CertifiedScalar(Rational exact)
    : node_(std::make_shared<detail::ConstNode>(std::move(exact))) {}

RationalInterval CertifiedScalar::eval(int level) const { return node_->eval(level); }

bool CertifiedScalar::exact_value(Rational* out) const { return node_->exact_value(out); }

CertifiedScalar operator+(const CertifiedScalar& a, const CertifiedScalar& b) {
    return CertifiedScalar(std::make_shared<detail::BinNode>(detail::BinNode::Add, a.node_, b.node_));
}
CertifiedScalar operator-(const CertifiedScalar& a, const CertifiedScalar& b) {
    return CertifiedScalar(std::make_shared<detail::BinNode>(detail::BinNode::Sub, a.node_, b.node_));
}
CertifiedScalar operator*(const CertifiedScalar& a, const CertifiedScalar& b) {
    return CertifiedScalar(std::make_shared<detail::BinNode>(detail::BinNode::Mul, a.node_, b.node_));
}
CertifiedScalar operator/(const CertifiedScalar& a, const CertifiedScalar& b) {
    return CertifiedScalar(std::make_shared<detail::BinNode>(detail::BinNode::Div, a.node_, b.node_));
}
CertifiedScalar operator-(const CertifiedScalar& a) {
    return CertifiedScalar(std::make_shared<detail::NegNode>(a.node_));
}

CertifiedScalar CertifiedScalar::pow(long e) const {
    if (e < 0) throw std::invalid_argument("CertifiedScalar::pow: negative exponent");
    return CertifiedScalar(std::make_shared<detail::PowNode>(node_, e));
}

CertifiedScalar CertifiedScalar::exp_of(const Rational& x) {
    return CertifiedScalar(std::make_shared<detail::ExpNode>(x));
}
CertifiedScalar CertifiedScalar::root_of(const Rational& y, long m) {
    return CertifiedScalar(std::make_shared<detail::RootNode>(y, m));
}
CertifiedScalar CertifiedScalar::log_of(const CertifiedScalar& y) {
    return CertifiedScalar(std::make_shared<detail::LogNode>(y.node_));
}
CertifiedScalar CertifiedScalar::arctan_of(const Rational& x) {
    return CertifiedScalar(std::make_shared<detail::ArctanNode>(x));
}
CertifiedScalar CertifiedScalar::pi() { return CertifiedScalar(std::make_shared<detail::PiNode>()); }

Ordering certified_compare(const CertifiedScalar& lhs, const CertifiedScalar& rhs, int cap) {
    Rational a, b;
    if (lhs.exact_value(&a) && rhs.exact_value(&b)) {
        if (a == b) return Ordering::Equal;
        return a < b ? Ordering::Less : Ordering::Greater;
    }
    for (int level = 2; level <= cap; ++level) {
        RationalInterval ia = lhs.eval(level);
        RationalInterval ib = rhs.eval(level);
        if (ia.hi < ib.lo) return Ordering::Less;
        if (ib.hi < ia.lo) return Ordering::Greater;
    }
    throw UndecidableComparison("certified_compare: enclosures still overlap at cap");
}

RationalInterval certified_exp(const Rational& x, const Rational& target_width) {
    return detail::exp_series(x, target_width);
}

RationalInterval certified_root(const Rational& y, long m, const Rational& target_width) {
    if (target_width.sign() <= 0) throw std::invalid_argument("certified_root: width <= 0");
    return detail::root_bisect(y, m, target_width);
}

RationalInterval certified_log(const Rational& y, const Rational& target_width) {
    if (target_width.sign() <= 0) throw std::invalid_argument("certified_log: width <= 0");
    return detail::log_series(y, target_width);
}

RationalInterval certified_arctan(const Rational& x, const Rational& target_width) {
    if (target_width.sign() <= 0) throw std::invalid_argument("certified_arctan: width <= 0");
    return detail::arctan_any(x, target_width);
}

RationalInterval certified_pi(const Rational& target_width) {
    if (target_width.sign() <= 0) throw std::invalid_argument("certified_pi: width <= 0");
    return detail::pi_machin(target_width);
}

long floor_log_base_r(const Rational& r, const Rational& x) {
    if (r.sign() <= 0 || r >= Rational(1))
        throw std::domain_error("floor_log_base_r: r must be in (0,1)");
    if (x.sign() <= 0) throw std::domain_error("floor_log_base_r: x must be positive");
    // j is the unique integer with r^(j+1) < x <= r^j.
    if (x <= Rational(1)) {
        long j = 0;
        Rational p = r;  // r^(j+1)
        while (p >= x) { p *= r; ++j; }
        return j;
    }
    long j = 0;
    Rational p(1);  // r^j
    while (p < x) { p /= r; --j; }
    return j;
}

long floor_log_base_r(const Rational& r, const CertifiedScalar& x, int cap) {
    Rational exact;
    if (x.exact_value(&exact)) return floor_log_base_r(r, exact);
    for (int level = 2; level <= cap; ++level) {
        RationalInterval iv = x.eval(level);
        if (iv.lo.sign() <= 0) continue;
        long jlo = floor_log_base_r(r, iv.hi);  // log_r is decreasing
        long jhi = floor_log_base_r(r, iv.lo);
        if (jlo == jhi) return jlo;
    }
    throw UndecidableComparison("floor_log_base_r: floor undecided at cap");
}

}  // namespace cantor
