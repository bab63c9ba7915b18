#include "cantor/serialize.hpp"

namespace cantor {

namespace {

Json rat(const Rational& r) { return r.str(); }
Rational unrat(const Json& j) { return Rational::parse(j.get<std::string>()); }

std::vector<bool> bits_from_string(const std::string& s) {
    std::vector<bool> out;
    out.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bad selection word");
        out.push_back(c == '1');
    }
    return out;
}

std::string bits_to_string(const std::vector<bool>& w) {
    std::string s;
    s.reserve(w.size());
    for (bool b : w) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace

Json certificate_file(const std::string& kind, Json payload, bool verified) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    j["replay_status"] = verified ? "verified" : "unverified";
    j["payload"] = std::move(payload);
    return j;
}

Json to_json(const DecompositionCertificate& cert) {
    Json p;
    p["r"] = rat(cert.problem.params.r);
    p["k"] = cert.problem.k;
    p["m"] = cert.problem.m;
    p["target"] = rat(cert.target);
    p["digits"] = cert.depth;
    Json words = Json::array();
    for (const auto& w : cert.words) words.push_back(w.str());
    p["words"] = std::move(words);
    p["residual_bound"] = rat(cert.residual_bound);
    return p;
}

DecompositionCertificate real_certificate_from_json(const Json& p) {
    PowerSumProblem prob{CantorParams(unrat(p.at("r"))), p.at("k").get<long>(),
                         p.at("m").get<long>()};
    DecompositionCertificate cert{prob, unrat(p.at("target")), {}, p.at("digits").get<long>(),
                                  unrat(p.at("residual_bound"))};
    for (const auto& w : p.at("words")) cert.words.push_back(SymbolWord::parse(w.get<std::string>()));
    return cert;
}

Json to_json(const DustCertificate& cert) {
    Json p;
    p["r"] = rat(cert.params.r);
    p["m"] = cert.m;
    p["target"] = Json{{"re", rat(cert.target.re)}, {"im", rat(cert.target.im)}};
    Json s = Json::array();
    for (const auto& z : cert.summands) s.push_back(Json{{"x", z.x.str()}, {"y", z.y.str()}});
    p["summands"] = std::move(s);
    p["residual_bound"] = rat(cert.residual_bound);
    return p;
}

DustCertificate dust_certificate_from_json(const Json& p) {
    DustCertificate cert{CantorParams(unrat(p.at("r"))), p.at("m").get<long>(),
                         ComplexRational{unrat(p.at("target").at("re")),
                                         unrat(p.at("target").at("im"))},
                         {},
                         unrat(p.at("residual_bound"))};
    for (const auto& z : p.at("summands"))
        cert.summands.push_back({SymbolWord::parse(z.at("x").get<std::string>()),
                                 SymbolWord::parse(z.at("y").get<std::string>())});
    return cert;
}

Json to_json(const PadicCertificate& cert) {
    Json p;
    p["p"] = cert.params.p;
    p["gamma"] = cert.params.gamma.value().get_str();
    p["N"] = cert.params.N;
    p["m"] = cert.m;
    p["target"] = cert.target.value().get_str();
    p["congruence_depth"] = cert.congruence_depth;
    Json s = Json::array();
    for (const auto& w : cert.summands) s.push_back(bits_to_string(w));
    p["summands"] = std::move(s);
    return p;
}

PadicCertificate padic_certificate_from_json(const Json& p) {
    unsigned long prime = p.at("p").get<unsigned long>();
    unsigned long N = p.at("N").get<unsigned long>();
    PadicCantorParams params =
        PadicCantorParams::make(prime, Rational(mpz_class(p.at("gamma").get<std::string>())), N);
    PadicCertificate cert{params,
                          PadicInt(prime, N, mpz_class(p.at("target").get<std::string>())),
                          p.at("m").get<unsigned long>(),
                          {},
                          p.at("congruence_depth").get<unsigned long>()};
    for (const auto& w : p.at("summands"))
        cert.summands.push_back(bits_from_string(w.get<std::string>()));
    return cert;
}

Json to_json(const CoverageSet& cov, const GapReport& gaps) {
    Json p;
    p["r"] = rat(cov.params.r);
    p["k"] = cov.k;
    p["m"] = cov.m;
    p["n"] = cov.n;
    Json iv = Json::array();
    for (const auto& piece : cov.intervals) iv.push_back(Json::array({rat(piece.lo), rat(piece.hi)}));
    p["intervals"] = std::move(iv);
    Json gv = Json::array();
    for (const auto& g : gaps.gaps) gv.push_back(Json::array({rat(g.lo), rat(g.hi)}));
    p["gaps"] = std::move(gv);
    p["sup_gap"] = rat(gaps.sup_gap);
    return p;
}

VerifyResult verify_certificate_file(const Json& file) {
    if (!file.contains("schema_version") || file.at("schema_version") != kSchemaVersion)
        return {false, "", "unknown or missing schema_version"};
    std::string kind = file.value("kind", "");
    const Json& payload = file.at("payload");
    try {
        if (kind == "real") {
            auto cert = real_certificate_from_json(payload);
            bool ok = cert.verify();
            return {ok, kind, ok ? "replay within residual bound" : "replay exceeded residual bound"};
        }
        if (kind == "dust") {
            auto cert = dust_certificate_from_json(payload);
            bool ok = cert.verify();
            return {ok, kind, ok ? "replay within residual bound" : "replay exceeded residual bound"};
        }
        if (kind == "padic") {
            auto cert = padic_certificate_from_json(payload);
            bool ok = cert.verify();
            return {ok, kind,
                    ok ? "congruence holds at stated depth" : "congruence fails at stated depth"};
        }
        if (kind == "coverage") {
            CoverageSet cov{{}, CantorParams(unrat(payload.at("r"))),
                            payload.at("k").get<long>(), payload.at("m").get<long>(),
                            payload.at("n").get<std::size_t>()};
            for (const auto& iv : payload.at("intervals"))
                cov.intervals.push_back({unrat(iv.at(0)), unrat(iv.at(1))});
            CoverageSet fresh = enumerate_image({cov.params, cov.k, cov.m}, cov.n);
            bool ok = fresh.intervals.size() == cov.intervals.size();
            for (std::size_t i = 0; ok && i < fresh.intervals.size(); ++i)
                ok = fresh.intervals[i] == cov.intervals[i];
            return {ok, kind, ok ? "enumeration reproduced" : "enumeration mismatch"};
        }
        return {false, kind, "unknown certificate kind"};
    } catch (const std::exception& e) {
        return {false, kind, std::string("replay error: ") + e.what()};
    }
}

}  // namespace cantor
