#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/serialize.hpp"

#include <random>

using namespace cantor;

namespace {
const CantorParams kThird{Rational(1, 3)};

Rational rand_target(std::mt19937& rng, long k) {
    std::uniform_int_distribution<long> den(1, 1000000L);
    long d = den(rng);
    std::uniform_int_distribution<long> num(0, k * d);
    return Rational(num(rng), d);
}
}  // namespace

TEST_CASE("real certificate round trip keeps verification") {
    std::mt19937 rng(123);
    PowerSumProblem prob{kThird, 2, 1};
    for (int i = 0; i < 100; ++i) {
        auto cert = decompose(prob, rand_target(rng, 2), 25);
        Json file = certificate_file("real", to_json(cert), cert.verify());
        std::string text = file.dump();
        Json parsed = Json::parse(text);
        auto res = verify_certificate_file(parsed);
        CHECK(res.ok);
        CHECK(res.kind == "real");
        auto back = real_certificate_from_json(parsed.at("payload"));
        CHECK(back.verify());
        CHECK(back.target == cert.target);
        CHECK(back.residual_bound == cert.residual_bound);
    }
}

TEST_CASE("dust certificate round trip") {
    std::mt19937 rng(321);
    std::uniform_int_distribution<long> pick(-2, 2);
    for (int i = 0; i < 40; ++i) {
        ComplexRational t{Rational(pick(rng), 3), Rational(pick(rng), 3)};
        auto cert = decompose_complex(kThird, 4, t, 20);
        Json file = certificate_file("dust", to_json(cert), cert.verify());
        auto res = verify_certificate_file(Json::parse(file.dump()));
        CHECK(res.ok);
        CHECK(res.kind == "dust");
    }
}

TEST_CASE("padic certificate round trip") {
    std::mt19937_64 rng(555);
    auto params = PadicCantorParams::make(3, Rational(3), 24);
    for (int i = 0; i < 100; ++i) {
        mpz_class v(static_cast<unsigned long>(rng()));
        auto cert = decompose_power(PadicInt(3, 24, v), 2, params);
        Json file = certificate_file("padic", to_json(cert), cert.verify());
        auto res = verify_certificate_file(Json::parse(file.dump()));
        CHECK(res.ok);
        CHECK(res.kind == "padic");
    }
}

TEST_CASE("coverage report round trip") {
    auto cov = enumerate_image({kThird, 2, 2}, 2);
    Json file = certificate_file("coverage", to_json(cov, gap_report(cov)), true);
    auto res = verify_certificate_file(Json::parse(file.dump()));
    CHECK(res.ok);
}

TEST_CASE("tampering is caught") {
    auto cert = decompose({kThird, 2, 1}, Rational(1, 2), 20);
    Json file = certificate_file("real", to_json(cert), true);
    file["payload"]["target"] = "3/2";  // same words cannot reach a distant target
    auto res = verify_certificate_file(file);
    CHECK_FALSE(res.ok);

    Json bad_schema = certificate_file("real", to_json(cert), true);
    bad_schema["schema_version"] = "999";
    CHECK_FALSE(verify_certificate_file(bad_schema).ok);

    Json bad_kind = certificate_file("nonsense", to_json(cert), true);
    CHECK_FALSE(verify_certificate_file(bad_kind).ok);
}

TEST_CASE("serialization is deterministic") {
    auto cert = decompose({kThird, 16, 4}, Rational(7), 25);
    Json a = certificate_file("real", to_json(cert), cert.verify());
    auto cert2 = decompose({kThird, 16, 4}, Rational(7), 25);
    Json b = certificate_file("real", to_json(cert2), cert2.verify());
    CHECK(a.dump() == b.dump());  // byte-identical output for identical inputs
}
