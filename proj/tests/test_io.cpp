#include <doctest.h>


#include "fixtures.hpp"
#include "wps/corpus.hpp"
#include "wps/io.hpp"

using namespace wps;
using namespace wps::test;
using nlohmann::json;

TEST_CASE("system documents round trip canonically") {
    for (auto& entry : corpus()) {
        for (auto& [name, text] : entry.documents) {
            if (name != "a" && name != "b") continue;
            WPS sys = parse_system_text(text);
            json canon = serialize_system(sys);
            WPS again = parse_system(canon);
            CHECK(systems_equal(sys, again));
            // serialization of the reparse is identical
            CHECK(serialize_system(again) == canon);
        }
    }
}

TEST_CASE("matrix and graph shorthands desugar to the same systems") {
    WPS direct = wps_from_matrix({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    WPS viamat = parse_system_text(R"({"matrix": [["0","1"],["1","0"]]})");
    CHECK(graph(direct) == graph(viamat));
    CHECK(edge_weight(viamat, Edge::finite(0, 1)) == Rat(1));

    // multiplicities become counting weights
    WPS viagraph = parse_system_text(
        R"({"graph": {"vertices": ["u","v"], "edges": [["u","v"],["u","v"],["v","u"]]}})");
    CHECK(edge_weight(viagraph, Edge::finite(1, 0)) == Rat(2));  // two u -> v arrows
    CHECK(edge_weight(viagraph, Edge::finite(0, 1)) == Rat(1));
    CHECK(positive_operator(viagraph, {Rat(1), Rat(1)})[0] == Rat(2));
}

TEST_CASE("parse failures carry field-precise diagnostics") {
    CHECK_THROWS_WITH_AS(parse_system_text("{\"space\": {\"type\": \"circle\"}}"),
                         doctest::Contains("finite"), parse_error);
    CHECK_THROWS_WITH_AS(parse_system_text("not json"), doctest::Contains("invalid JSON"),
                         parse_error);
    CHECK_THROWS_WITH_AS(
        parse_system_text(
            R"({"space":{"type":"finite","points":["a"]},"branches":[{"domain":["b"],"map":{},"weight":{}}]})"),
        doctest::Contains("unknown atom"), parse_error);
    // weights must be positive: rejected by system validation
    CHECK_THROWS_AS(
        parse_system_text(
            R"({"space":{"type":"finite","points":["a"]},"branches":[{"domain":["a"],"map":{"a":"a"},"weight":{"a":"0"}}]})"),
        argument_error);
    // proper subintervals are not clopen: breakpoints must span the component
    CHECK_THROWS_AS(
        parse_system_text(
            R"({"space":{"type":"intervals","components":[["0","1"]]},"branches":[{"domain":[0],"map":{"breakpoints":["0","1/2"],"values":["0","0"]},"weight":{"const":"1"}}]})"),
        argument_error);
}

TEST_CASE("gamma and certificate documents") {
    WPS a = e1_system(Rat(1, 3), Rat(2, 3));
    WPS b = e1_system(Rat(1, 2), Rat(1, 2));
    Homeo id = parse_gamma(json{{"identity", true}}, a.space, b.space);
    CHECK(id.is_identity(a.space));
    Homeo flip = parse_gamma(
        json{{"breakpoints", json::array({"0", "1"})}, {"values", json::array({"1", "0"})}},
        a.space, b.space);
    CHECK(flip.valid(a.space, b.space));
    CHECK_THROWS_AS(parse_gamma(json{{"breakpoints", json::array({"0", "1"})},
                                     {"values", json::array({"0", "1/2"})}},
                                a.space, b.space),
                    parse_error);

    // certificate round trip on the finite decision output
    WPS ma = wps_from_matrix({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    WPS mb = wps_from_matrix({{Rat(0), Rat(2)}, {Rat(3), Rat(0)}});
    auto res = decide_weighted_orbit_finite(ma, mb);
    json doc = serialize_certificate(*res.certificate, ma, mb);
    ConjugacyCertificate back = parse_certificate(doc, ma, mb);
    CHECK(verify_weighted_orbit_certificate(ma, mb, back, 10).holds_());
}

TEST_CASE("element documents round trip bit-identically") {
    WPS m = wps_from_matrix({{Rat(1), Rat(1)}, {Rat(1), Rat(0)}});
    FockSpace fs = FockSpace::build(m, 4);
    std::mt19937 rng(191);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    FourierElement T;
    BaseFunc f;
    for (size_t i = 0; i < 2; ++i)
        f.push_back(RatComplex{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
    T.coeffs[0] = f;
    for (int n : {1, 3}) {
        std::vector<RatComplex> c;
        for (int i = 0; i < fs.path_count(n); ++i)
            c.push_back(RatComplex{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
        T.coeffs[n] = c;
    }
    json doc = serialize_element(T, fs);
    FourierElement back = parse_element(doc, fs);
    CHECK(back.coeffs == T.coeffs);
    CHECK(serialize_element(back, fs) == doc);
}

TEST_CASE("corpus entries are self-verifying") {
    std::ostringstream sink;
    for (auto& entry : corpus()) CHECK(entry.run(sink, 0));
    CHECK(corpus_find("different-invariants") != nullptr);
    CHECK(corpus_find("nope") == nullptr);
}

TEST_CASE("finite gamma documents use target labels") {
    WPS a = parse_system_text(
        R"({"space":{"type":"finite","points":["x","y"]},"branches":[{"domain":["x"],"map":{"x":"y"},"weight":{"x":"1"}}]})");
    WPS b = parse_system_text(
        R"({"space":{"type":"finite","points":["u","v"]},"branches":[{"domain":["v"],"map":{"v":"u"},"weight":{"v":"1"}}]})");
    Homeo g;
    g.is_finite = true;
    g.table = {1, 0};  // x -> v, y -> u
    CHECK(g.valid(a.space, b.space));
    json doc = serialize_gamma(g, a.space, b.space);
    CHECK(doc["map"]["x"] == "v");
    CHECK(doc["map"]["y"] == "u");
    Homeo back = parse_gamma(doc, a.space, b.space);
    CHECK(back.table == g.table);
    CHECK(check_graph_conjugacy(a, b, back).holds_());
}

TEST_CASE("interval certificates round trip through documents") {
    auto* entry = corpus_find("different-invariants");
    REQUIRE(entry != nullptr);
    WPS a, b;
    json cert_doc;
    for (auto& [name, text] : entry->documents) {
        if (name == "a") a = parse_system_text(text);
        if (name == "b") b = parse_system_text(text);
        if (name == "corrected-H") cert_doc = json::parse(text);
    }
    ConjugacyCertificate cert = parse_certificate(cert_doc, a, b);
    json out = serialize_certificate(cert, a, b);
    ConjugacyCertificate back = parse_certificate(out, a, b);
    CHECK(verify_weighted_orbit_certificate(a, b, back, 12).holds_());
    CHECK(serialize_certificate(back, a, b) == out);
}
