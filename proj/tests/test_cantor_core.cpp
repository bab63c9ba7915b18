#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/cantor_core.hpp"

#include <set>

using namespace cantor;

TEST_CASE("params derive alpha and lambda") {
    CantorParams p{Rational(1, 3)};
    CHECK(p.alpha == Rational(3));
    CHECK(p.lambda == Rational(1));
    CantorParams q = CantorParams::from_alpha(Rational(2));
    CHECK(q.r == Rational(1, 4));
    CHECK(q.lambda == Rational(2));
    // round trip r = (1 - 1/alpha)/2
    CHECK((Rational(1) - Rational(1) / p.alpha) / Rational(2) == p.r);
    CHECK_THROWS(CantorParams{Rational(1, 2)});
    CHECK_THROWS(CantorParams{Rational(0)});
}

TEST_CASE("left endpoints at small depths") {
    CantorParams p{Rational(1, 3)};
    auto l0 = left_endpoints(p, 0);
    REQUIRE(l0.size() == 1);
    CHECK(l0[0] == Rational(0));

    auto l1 = left_endpoints(p, 1);
    REQUIRE(l1.size() == 2);
    CHECK(l1[0] == Rational(0));
    CHECK(l1[1] == Rational(2, 3));

    auto l2 = left_endpoints(p, 2);
    REQUIRE(l2.size() == 4);
    CHECK(l2[0] == Rational(0));
    CHECK(l2[1] == Rational(2, 9));
    CHECK(l2[2] == Rational(6, 9));
    CHECK(l2[3] == Rational(8, 9));

    CHECK_THROWS_AS(left_endpoints(p, 25), DepthCapExceeded);
}

TEST_CASE("eval_prefix") {
    CantorParams p{Rational(1, 3)};
    CHECK(eval_prefix(p, SymbolWord{}) == Rational(0));
    CHECK(eval_prefix(p, SymbolWord::parse("11")) == Rational(8, 9));
    CHECK(eval_prefix(p, SymbolWord::parse("01")) == Rational(2, 9));
    CHECK(eval_prefix(p, SymbolWord::parse("0101")) == Rational(20, 81));
    // appending 0 never moves the endpoint
    CHECK(eval_prefix(p, SymbolWord::parse("0100")) == Rational(2, 9));
}

TEST_CASE("eval_periodic hits 1/4") {
    CantorParams p{Rational(1, 3)};
    CHECK(eval_periodic(p, SymbolWord{}, SymbolWord::parse("01")) == Rational(1, 4));
    // 1 = all-ones tail
    CHECK(eval_periodic(p, SymbolWord{}, SymbolWord::parse("1")) == Rational(1));
}

TEST_CASE("truncation cover") {
    CantorParams p{Rational(1, 3)};
    auto c0 = truncation_cover(p, 0);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0].lo == Rational(0));
    CHECK(c0[0].hi == Rational(1));

    auto c1 = truncation_cover(p, 1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0].lo == Rational(0));
    CHECK(c1[0].hi == Rational(1, 3));
    CHECK(c1[1].lo == Rational(2, 3));
    CHECK(c1[1].hi == Rational(1));

    auto c2 = truncation_cover(p, 2);
    REQUIRE(c2.size() == 4);
    CHECK(c2[0].hi == Rational(1, 9));
    CHECK(c2[1].lo == Rational(2, 9));
    CHECK(c2[2].lo == Rational(2, 3));
    CHECK(c2[3].lo == Rational(8, 9));
}

TEST_CASE("words agree with endpoints and nesting holds") {
    for (Rational r : {Rational(1, 3), Rational(1, 4), Rational(2, 5)}) {
        CantorParams p{r};
        for (std::size_t n = 1; n <= 6; ++n) {
            auto cover = truncation_cover(p, n);
            auto ends = left_endpoints(p, n);
            REQUIRE(cover.size() == ends.size());
            std::set<std::string> words;
            for (std::size_t i = 0; i < cover.size(); ++i) {
                CHECK(cover[i].lo == ends[i]);
                CHECK(eval_prefix(p, cover[i].word) == cover[i].lo);
                CHECK(cover[i].hi - cover[i].lo == p.r_pow(static_cast<long>(n)));
                words.insert(cover[i].word.str());
            }
            CHECK(words.size() == cover.size());  // no duplicates

            // every level-n interval sits inside exactly one level-(n-1) interval
            auto parents = truncation_cover(p, n - 1);
            for (const auto& child : cover) {
                int count = 0;
                for (const auto& par : parents)
                    if (par.lo <= child.lo && child.hi <= par.hi) ++count;
                CHECK(count == 1);
            }
        }
    }
}

TEST_CASE("scaling closure and reflection symmetry of L_n") {
    CantorParams p{Rational(2, 5)};
    for (std::size_t n = 0; n <= 5; ++n) {
        auto ln = left_endpoints(p, n);
        auto ln1 = left_endpoints(p, n + 1);
        std::set<std::string> next;
        for (const auto& u : ln1) next.insert(u.str());
        Rational full = Rational(1) - p.r_pow(static_cast<long>(n));
        for (const auto& u : ln) {
            CHECK(next.count((p.r * u).str()) == 1);  // u in L_n => r u in L_{n+1}
            bool found = false;                       // reflection stays in L_n
            for (const auto& v : ln)
                if (v == full - u) { found = true; break; }
            CHECK(found);
        }
    }
}
