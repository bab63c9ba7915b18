#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/bounds.hpp"

#include <random>

using namespace cantor;

namespace {
const CantorParams kThird{Rational(1, 3)};
const CantorParams kQuarter{Rational(1, 4)};
}

TEST_CASE("profile at r=1/3") {
    auto p4 = profile(kThird, 4);
    CHECK(p4.n_star == 2);
    CHECK(p4.k_star == 3);
    CHECK(p4.lower_bound == Rational(16));
    CHECK(p4.target_k == 16);
    CHECK(p4.a == Rational(16, 27));

    auto p5 = profile(kThird, 5);
    CHECK(p5.n_star == 2);
    CHECK(p5.k_star == 3);

    auto p1 = profile(kThird, 1);
    CHECK(p1.lower_bound == Rational(2));
    CHECK(p1.target_k == 2);

    auto p6 = profile(kThird, 6);
    CHECK(p6.k_star <= 6);
    CHECK(p6.a <= Rational(6) * Rational(2, 3).pow(6));
    CHECK(p6.a < Rational(1));
}

TEST_CASE("conditions at the certified k") {
    auto p4 = profile(kThird, 4);
    auto rep = check_conditions(p4, 13);  // 2^4 - k*
    CHECK(rep.a1);
    CHECK(rep.a2prime);
    CHECK(rep.a2);
    CHECK(rep.a3);
    CHECK(rep.a4);
    REQUIRE(rep.l0.has_value());
    CHECK(*rep.l0 == 3);

    auto bad = check_conditions(p4, 2);
    CHECK_FALSE(bad.a1);  // 2 < k* = 3

    auto p7 = profile(kQuarter, 7);
    long k = 2187 - p7.k_star;  // 3^7 - k*
    auto rep7 = check_conditions(p7, k);
    CHECK(rep7.a1);
    CHECK(rep7.a2prime);
    CHECK(rep7.a3);
    CHECK(rep7.a4);
}

TEST_CASE("theorem 4.1 grid: r=1/3, m in 4..12") {
    for (long m = 4; m <= 12; ++m) {
        auto prof = profile(kThird, m);
        long k = (1L << m) - prof.k_star;
        auto rep = check_conditions(prof, k);
        CHECK(rep.a1);
        CHECK(rep.a2prime);
        CHECK(rep.a3);
        CHECK(rep.a4);
    }
}

TEST_CASE("theorem 4.2 grid: r=1/4, m in 7..12") {
    long p3 = 1;
    for (long i = 0; i < 7; ++i) p3 *= 3;
    for (long m = 7; m <= 12; ++m, p3 *= 3) {
        auto prof = profile(kQuarter, m);
        auto rep = check_conditions(prof, p3 - prof.k_star);
        CHECK(rep.a1);
        CHECK(rep.a2prime);
        CHECK(rep.a3);
        CHECK(rep.a4);
    }
}

TEST_CASE("A2' implies A2 on random parameters") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> rnum(1, 9), rden(19, 40), md(1, 10), kd(2, 4000);
    int tested = 0;
    while (tested < 1000) {
        Rational r(rnum(rng), rden(rng));
        if (r >= Rational(1, 2)) continue;
        auto prof = profile(CantorParams{r}, md(rng));
        auto rep = check_conditions(prof, kd(rng));
        if (rep.a2prime) CHECK(rep.a2);
        ++tested;
    }
}

TEST_CASE("k* never exceeds the exp bound") {
    for (Rational r : {Rational(1, 3), Rational(1, 4), Rational(1, 5), Rational(2, 5)}) {
        CantorParams P{r};
        CertifiedScalar cap = CertifiedScalar(P.lambda) *
                              CertifiedScalar::exp_of(Rational(1) / (Rational(1) - P.r));
        RationalInterval iv = cap.eval(40);
        mpz_class bound = iv.hi.floor() + 2;
        for (long m = 1; m <= 12; ++m) CHECK(mpz_class(profile(P, m).k_star) <= bound);
    }
}

TEST_CASE("upper_bound_M is finite and consistent") {
    auto u1 = upper_bound_M(kThird, 1);
    CHECK(u1.integer_bound >= 2);  // >= G(1) = 2
    auto u3 = upper_bound_M(kThird, 3);
    CHECK(u3.integer_bound >= 8);  // >= 2^3 from the lower bound
    CHECK(u3.bound.width() <= Rational(1, 1000));
    auto uq = upper_bound_M(kQuarter, 2);
    CHECK(uq.integer_bound >= 9);
}

TEST_CASE("theorem310_threshold") {
    auto t = theorem310_threshold(kQuarter, Rational(1, 1000));
    CHECK(t.enclosure.width() <= Rational(1, 1000));
    CHECK(t.enclosure.lo > Rational(6));
    CHECK(t.enclosure.hi < Rational(7));  // paper value 6.15233...
    CHECK(t.enclosure.lo < Rational(61524, 10000));
    CHECK(t.enclosure.hi > Rational(61523, 10000));
    CHECK(t.integer_threshold == 7);

    auto t3 = theorem310_threshold(kThird);
    CHECK(t3.enclosure.width() <= Rational(1, 1000000));  // finite, lambda = 1 case

    CHECK_THROWS_AS(theorem310_threshold(CantorParams{Rational(2, 5)}), std::domain_error);
}

TEST_CASE("g_alpha_1") {
    CHECK(g_alpha_1(kThird) == 2);
    CHECK(g_alpha_1(kQuarter) == 3);
    CHECK(g_alpha_1(CantorParams{Rational(2, 5)}) == 2);
}

TEST_CASE("lower_bound_gap") {
    auto p2 = profile(kThird, 2);
    auto g = lower_bound_gap(p2, 3);
    REQUIRE(g.has_value());
    CHECK(g->lo == Rational(1, 3));
    CHECK(g->hi == Rational(4, 9));
    CHECK_FALSE(lower_bound_gap(p2, 4).has_value());

    auto p4 = profile(kThird, 4);
    auto g15 = lower_bound_gap(p4, 15);
    REQUIRE(g15.has_value());
    CHECK(g15->lo == Rational(15, 81));
    CHECK(g15->hi == Rational(16, 81));

    // emptiness exactly when k < target_k (integral lower bound here)
    for (long k = 1; k <= 20; ++k)
        CHECK(lower_bound_gap(p4, k).has_value() == (k < 16));
}

TEST_CASE("min_certified_k") {
    CHECK(min_certified_k(kThird, 4) == 16);  // the tight value at m = 4
    CHECK(min_certified_k(kThird, 3) <= 16);  // certified chunk size for m = 3
    CHECK(min_certified_k(kThird, 3) >= 8);   // never below the lower bound
}
