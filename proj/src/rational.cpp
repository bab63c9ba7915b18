#include "cantor/rational.hpp"

#include <ostream>

namespace cantor {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            return Rational(n);
        }
        mpz_class n(s.substr(0, slash));
        mpz_class d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator");
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
    }
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    bool inv = e < 0;
    unsigned long p = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    if (inv && is_zero()) throw std::domain_error("Rational::pow: 0 to negative power");
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), p);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), p);
    return inv ? Rational(d, n) : Rational(n, d);
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
    mpz_class n = v_.get_num(), d = v_.get_den();
    std::string sign = (sgn(n) < 0) ? "-" : "";
    n = ::abs(n);
    mpz_class ip = n / d, rem = n % d;
    std::string out = sign + ip.get_str();
    if (digits <= 0 || rem == 0) return out;
    out += ".";
    for (int i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        mpz_class dig = rem / d;
        rem %= d;
        out += dig.get_str();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace cantor
