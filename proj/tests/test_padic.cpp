#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/padic.hpp"

#include <random>

using namespace cantor;

namespace {

mpz_class rand_mpz(std::mt19937_64& rng, const mpz_class& mod) {
    mpz_class acc = 0;
    for (int i = 0; i < 4; ++i) {
        acc <<= 64;
        acc += mpz_class(static_cast<unsigned long>(rng()));
    }
    mpz_class out;
    mpz_fdiv_r(out.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    return out;
}

}  // namespace

TEST_CASE("ring laws mod p^N on random triples") {
    std::mt19937_64 rng(1234);
    PadicCantorParams params = PadicCantorParams::make(3, Rational(3), 12);
    mpz_class mod = PadicInt(3, 12, 0).modulus();
    for (int i = 0; i < 1000; ++i) {
        PadicInt a(3, 12, rand_mpz(rng, mod)), b(3, 12, rand_mpz(rng, mod)),
            c(3, 12, rand_mpz(rng, mod));
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == PadicInt(3, 12, 0));
    }
}

TEST_CASE("valuation and units") {
    PadicInt x(3, 10, 18);  // 2 * 3^2
    REQUIRE(x.valuation().has_value());
    CHECK(*x.valuation() == 2);
    CHECK_FALSE(x.is_unit());
    CHECK(PadicInt(3, 10, 7).is_unit());
    CHECK_FALSE(PadicInt(3, 10, 0).valuation().has_value());
    CHECK(x.shift_down(2).value() == 2);
    CHECK(PadicInt(5, 6, 7).inverse() * PadicInt(5, 6, 7) == PadicInt(5, 6, 1));
}

TEST_CASE("digit rendering") {
    PadicInt x(3, 5, 7);  // 1 + 2*3
    auto d = x.digits();
    REQUIRE(d.size() == 5);
    CHECK(d[0] == 1);
    CHECK(d[1] == 2);
    CHECK(d[2] == 0);
    CHECK(x.digit_string() == "1 2 0 0 0 (base 3)");
}

TEST_CASE("params validation") {
    CHECK_THROWS(PadicCantorParams::make(2, Rational(2), 20));  // 2|gamma|_2 = 1, not < 1
    CHECK_THROWS(PadicCantorParams::make(3, Rational(1), 20));  // unit gamma
    CHECK_THROWS(PadicCantorParams::make(3, Rational(1, 3), 20));
    auto p = PadicCantorParams::make(2, Rational(4), 20);
    CHECK(p.u == 2);
    CHECK(p.g_script == 3);
    auto q = PadicCantorParams::make(3, Rational(6), 20);
    CHECK(q.u == 1);
    CHECK(q.gamma1.value() == PadicInt(3, 19, 2).value());
}

TEST_CASE("base_gamma_digits worked instances") {
    auto p33 = PadicCantorParams::make(3, Rational(3), 12);
    auto d1 = base_gamma_digits(PadicInt(3, 12, 1), p33);
    CHECK(d1[0] == 1);
    for (std::size_t i = 1; i < d1.size(); ++i) CHECK(d1[i] == 0);

    auto d7 = base_gamma_digits(PadicInt(3, 12, 7), p33);
    CHECK(d7[0] == 1);
    CHECK(d7[1] == 2);
    for (std::size_t i = 2; i < d7.size(); ++i) CHECK(d7[i] == 0);

    // gamma = 6: digits replay against the original value
    auto p36 = PadicCantorParams::make(3, Rational(6), 12);
    auto d5 = base_gamma_digits(PadicInt(3, 12, 5), p36);
    CHECK(d5[0] == 2);
    PadicInt acc(3, 12, 0), gp(3, 12, 1);
    for (auto& b : d5) {
        acc = acc + PadicInt(3, 12, b) * gp;
        gp = gp * p36.gamma;
    }
    CHECK(acc.congruent(PadicInt(3, 12, 5), p36.u * d5.size()));
}

TEST_CASE("base_gamma round trip on random values") {
    std::mt19937_64 rng(777);
    for (auto [p, g] : {std::pair<unsigned long, long>{3, 3}, {3, 6}, {2, 4}, {5, 5}}) {
        auto params = PadicCantorParams::make(p, Rational(g), 24);
        mpz_class mod = params.gamma.modulus();
        for (int i = 0; i < 50; ++i) {
            PadicInt x(p, 24, rand_mpz(rng, mod));
            auto digits = base_gamma_digits(x, params);
            PadicInt acc(p, 24, 0), gp(p, 24, 1);
            for (auto& b : digits) {
                acc = acc + PadicInt(p, 24, b) * gp;
                gp = gp * params.gamma;
            }
            CHECK(acc.congruent(x, params.u * digits.size()));
        }
    }
}

TEST_CASE("decompose_linear worked instances") {
    auto p33 = PadicCantorParams::make(3, Rational(3), 12);
    auto cert = decompose_linear(PadicInt(3, 12, 2), p33);
    REQUIRE(cert.summands.size() == 2);  // G = 3 - 1
    CHECK(cert.verify());
    // layer 1 takes the digit-2 at position 0; layer 2 stays empty
    CHECK(p33.element(cert.summands[0]).value() == 2);
    CHECK(p33.element(cert.summands[1]).is_zero());

    auto zero = decompose_linear(PadicInt(3, 12, 0), p33);
    CHECK(zero.verify());
    for (const auto& w : zero.summands) CHECK(p33.element(w).is_zero());
}

TEST_CASE("decompose_linear randomized across parameter shapes") {
    std::mt19937_64 rng(4242);
    for (auto [p, g] : {std::pair<unsigned long, long>{3, 3}, {3, 6}, {2, 4}, {5, 5}}) {
        auto params = PadicCantorParams::make(p, Rational(g), 20);
        mpz_class mod = params.gamma.modulus();
        for (int i = 0; i < 250; ++i) {
            PadicInt x(p, 20, rand_mpz(rng, mod));
            auto cert = decompose_linear(x, params);
            CHECK(cert.summands.size() == params.g_script);
            CHECK(cert.verify());
        }
    }
}

TEST_CASE("linear minimality witness at gamma = 9") {
    // 8*(gamma-1) is not a sum of 7 elements mod 9: elements lie in {0, 8}
    // mod 9, and 7 eights cannot reach 64 = 1 mod 9.
    auto p39 = PadicCantorParams::make(3, Rational(9), 8);
    CHECK(p39.g_script == 8);
    mpz_class target = mpz_class(8) * 8 % 9;  // 64 mod 9 = 1
    std::vector<bool> reachable(9, false);
    reachable[0] = true;
    for (int step = 0; step < 7; ++step) {
        std::vector<bool> next(9, false);
        for (int x = 0; x < 9; ++x)
            if (reachable[x]) {
                next[x] = true;            // add 0
                next[(x + 8) % 9] = true;  // add gamma-1 = 8
            }
        reachable = std::move(next);
    }
    CHECK_FALSE(reachable[target.get_ui()]);
}

TEST_CASE("decompose_power worked instances") {
    auto p33 = PadicCantorParams::make(3, Rational(3), 30);
    auto cert = decompose_power(PadicInt(3, 30, 7), 2, p33);
    CHECK(cert.summands.size() == 4);  // 3^{u+v}-1 + 3^u-1 = 2 + 2
    CHECK(cert.congruence_depth == 30);
    CHECK(cert.verify());
    // first-digit sanity: the squares realize 7 mod 9
    PadicInt s(3, 30, 0);
    for (const auto& w : cert.summands) s = s + p33.element(w).pow(2);
    CHECK(s.congruent(PadicInt(3, 30, 7), 2));

    auto zero = decompose_power(PadicInt(3, 30, 0), 2, p33);
    CHECK(zero.verify());

    // p = 2, gamma = 4, m = 2: u = 2, v = 1: at most 2^5-1 + 2^2-1 = 34
    auto p24 = PadicCantorParams::make(2, Rational(4), 20);
    auto c2 = decompose_power(PadicInt(2, 20, 1), 2, p24);
    CHECK(c2.summands.size() == 34);
    CHECK(c2.verify());

    CHECK_THROWS_AS(decompose_power(PadicInt(3, 30, 7), 1, p33), std::invalid_argument);
}

TEST_CASE("decompose_power randomized") {
    std::mt19937_64 rng(9999);
    auto p33 = PadicCantorParams::make(3, Rational(3), 30);
    mpz_class mod = p33.gamma.modulus();
    for (int i = 0; i < 100; ++i) {
        PadicInt x(3, 30, rand_mpz(rng, mod));
        auto cert = decompose_power(x, 2, p33);
        CHECK(cert.summands.size() == 4);
        CHECK(cert.congruence_depth == 30);
        CHECK(cert.verify());
    }
    // a higher exponent with p | m: m = 6, v = 1 at p = 3
    for (int i = 0; i < 10; ++i) {
        PadicInt x(3, 30, rand_mpz(rng, mod));
        auto cert = decompose_power(x, 6, p33);
        CHECK(cert.summands.size() == 3 * 3 - 1 + 2);  // p^{u+v}-1 + p^u-1, u=v=1
        CHECK(cert.verify());
    }
}

TEST_CASE("residue_lower_bound pins the small Waring numbers") {
    auto p33 = PadicCantorParams::make(3, Rational(3), 10);
    CHECK(residue_lower_bound(p33, 2, 2) == 4);  // squares need four summands
    CHECK(residue_lower_bound(p33, 1, 1) == 2);  // linear case: G = 2

    auto p55 = PadicCantorParams::make(5, Rational(5), 10);
    CHECK(residue_lower_bound(p55, 2, 1) == 4);

    // sandwich: decompose_power succeeds with exactly four squares, so the
    // residue bound of 4 pins the value.
    auto cert = decompose_power(PadicInt(3, 10, 7), 2, p33);
    CHECK(cert.summands.size() == 4);
}
