#include "wps/corpus.hpp"

#include "wps/io.hpp"


#include <random>
#include <sstream>

namespace wps {

using nlohmann::json;

namespace {

json unit_space() {
    return json{{"type", "intervals"},
                {"components", json::array({json::array({"0", "1"})})}};
}

json pl01(std::vector<std::string> xs, std::vector<std::string> ys) {
    json bx = json::array(), vy = json::array();
    for (auto& x : xs) bx.push_back(x);
    for (auto& y : ys) vy.push_back(y);
    return json{{"breakpoints", bx}, {"values", vy}};
}

json branch01(json map, const std::string& weight) {
    return json{{"domain", json::array({0})},
                {"map", std::move(map)},
                {"weight", json{{"const", weight}}}};
}

std::string e1_doc(const std::string& w1, const std::string& w2) {
    json doc = {{"space", unit_space()},
                {"branches", json::array({branch01(pl01({"0", "1"}, {"0", "1"}), w1),
                                          branch01(pl01({"0", "1"}, {"0", "0"}), w2)})}};
    return doc.dump(2);
}

// sigma1 = 1 on [0,1/2], 2(1-x) after; sigma2 = 0; weights 1
std::string di_doc(bool tau_variant) {
    json s1 = branch01(pl01({"0", "1/2", "1"}, {"1", "1", "0"}), "1");
    json s2 = branch01(pl01({"0", "1"}, {"0", "0"}), "1");
    json doc = {{"space", unit_space()},
                {"branches", tau_variant ? json::array({s1, s1, s2})
                                         : json::array({s1, s2, s2})}};
    return doc.dump(2);
}

json h_piece(std::vector<std::string> source, std::vector<std::string> range,
             std::vector<std::string> xs, std::vector<std::string> ys) {
    json src = json::array(), rng = json::array(), bx = json::array(), vy = json::array();
    for (auto& v : source) src.push_back(v);
    for (auto& v : range) rng.push_back(v);
    for (auto& v : xs) bx.push_back(v);
    for (auto& v : ys) vy.push_back(v);
    return json{{"source", src}, {"range", rng}, {"breakpoints", bx}, {"values", vy}};
}

std::string di_displayed_cert() {
    json doc = {{"gamma", json{{"identity", true}}},
                {"C", "16"},
                {"H",
                 json{{"pieces",
                       json::array(
                           {h_piece({"0", "1/2"}, {"1", "0"}, {"0", "1/2"}, {"1/2", "1/2"}),
                            h_piece({"1/2", "1"}, {"2", "-2"}, {"1/2", "1"}, {"1/2", "1"}),
                            h_piece({"0", "1"}, {"0", "0"}, {"0", "1/2", "1"},
                                    {"2", "2", "1"})})}}}};
    return doc.dump(2);
}

std::string di_corrected_cert() {
    json doc = {
        {"gamma", json{{"identity", true}}},
        {"C", "4"},
        {"H", json{{"pieces",
                    json::array({h_piece({"0", "1/2"}, {"1", "0"}, {"0", "1/2"},
                                         {"1/2", "1/2"}),
                                 h_piece({"1/2", "1"}, {"2", "-2"}, {"1/2", "3/4", "1"},
                                         {"1/2", "1/2", "1"}),
                                 h_piece({"0", "1"}, {"0", "0"}, {"0", "3/4", "1"},
                                         {"2", "2", "1"})})}}}};
    return doc.dump(2);
}

std::string single_map_doc(const std::string& v0, const std::string& v1) {
    json doc = {{"space", unit_space()},
                {"branches", json::array({branch01(pl01({"0", "1"}, {v0, v1}), "1")})}};
    return doc.dump(2);
}

std::string two_map_doc(const std::string& a0, const std::string& a1, const std::string& b0,
                        const std::string& b1) {
    json doc = {{"space", unit_space()},
                {"branches", json::array({branch01(pl01({"0", "1"}, {a0, a1}), "1"),
                                          branch01(pl01({"0", "1"}, {b0, b1}), "1")})}};
    return doc.dump(2);
}

std::string matrix_doc(std::vector<std::vector<std::string>> m) {
    json rows = json::array();
    for (auto& r : m) {
        json row = json::array();
        for (auto& v : r) row.push_back(v);
        rows.push_back(row);
    }
    return json{{"matrix", rows}}.dump(2);
}

bool expect(std::ostream& os, const std::string& what, bool ok) {
    os << (ok ? "  ok  " : "  FAIL") << "  " << what << "\n";
    return ok;
}

WPS sys_of(const CorpusEntry& e, const std::string& doc) {
    for (auto& [name, text] : e.documents)
        if (name == doc) return parse_system_text(text);
    throw argument_error("corpus entry lacks document " + doc);
}

json json_of(const CorpusEntry& e, const std::string& doc) {
    for (auto& [name, text] : e.documents)
        if (name == doc) return json::parse(text);
    throw argument_error("corpus entry lacks document " + doc);
}

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> out;

    {
        CorpusEntry e;
        e.name = "cpc-distinct-btc";
        e.summary =
            "identity/constant pair on [0,1]: graph conjugate but not "
            "branch-transition conjugate";
        e.documents = {{"a", e1_doc("1/3", "2/3")}, {"b", e1_doc("1/2", "1/2")}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            Homeo id = Homeo::identity(a.space);
            bool ok = expect(os, "graph conjugacy via id holds",
                             check_graph_conjugacy(a, b, id).holds_());
            Verdict btc = check_branch_transition(a, b, id);
            ok &= expect(os, "branch-transition fails", btc.fails_());
            ok &= expect(os, "witness edge (0, 0)", *btc.get("witness-edge") == "(0, 0)");
            std::string lims = *btc.get("witness-limits");
            ok &= expect(os, "one-sided limits {3/2, 3/4}",
                         lims == "3/2, 3/4" || lims == "3/4, 3/2");
            ok &= expect(os, "edge value 1", *btc.get("edge-value") == "1");
            Verdict woc = forced_H_values(a, b, id).verdict;
            ok &= expect(os, "weighted-orbit refuted via forced H", woc.fails_());
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "not-weighted-orbit-conj";
        e.summary = "the same pair: the forced gap function cannot be continuous";
        e.documents = {{"a", e1_doc("1/3", "2/3")}, {"b", e1_doc("1/2", "1/2")}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            ForcedH f = forced_H_values(a, b, Homeo::identity(a.space));
            bool ok = expect(os, "forced H fails to extend", f.verdict.fails_());
            ok &= expect(os, "forced limit 2/3 along the diagonal",
                         *f.verdict.get("forced-limit") == "2/3");
            ok &= expect(os, "forced value 1 at (0, 0)",
                         *f.verdict.get("forced-value") == "1");
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "different-invariants";
        e.summary =
            "three-branch pair: weighted-orbit conjugate via a corrected gap "
            "function, never branch-transition conjugate";
        e.documents = {{"a", di_doc(false)},
                       {"b", di_doc(true)},
                       {"displayed-H", di_displayed_cert()},
                       {"corrected-H", di_corrected_cert()}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            Homeo id = Homeo::identity(a.space);
            bool ok = expect(os, "graph conjugacy via id holds",
                             check_graph_conjugacy(a, b, id).holds_());
            Verdict btc = check_branch_transition(a, b, id);
            ok &= expect(os, "branch-transition fails at (0, 1)",
                         btc.fails_() && *btc.get("witness-edge") == "(0, 1)");
            std::string lims = *btc.get("witness-limits");
            ok &= expect(os, "one-sided limits {2, 1/2}",
                         lims == "2, 1/2" || lims == "1/2, 2");
            ConjugacyCertificate displayed = parse_certificate(json_of(e, "displayed-H"), a, b);
            Verdict vp = verify_weighted_orbit_certificate(a, b, displayed, 12);
            ok &= expect(os, "displayed H refuted", vp.fails_());
            ok &= expect(os, "witness: self-loop at 2/3 repeated 10 times",
                         *vp.get("witness-source") == "2/3" &&
                             *vp.get("witness-repetitions") == "10");
            ConjugacyCertificate good = parse_certificate(json_of(e, "corrected-H"), a, b);
            Verdict vg = verify_weighted_orbit_certificate(a, b, good, 12);
            ok &= expect(os, "corrected H certified with C = 4", vg.holds_());
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "different-invariants-paper-H";
        e.summary = "only the displayed-certificate refutation";
        e.documents = {{"a", di_doc(false)}, {"b", di_doc(true)}, {"cert", di_displayed_cert()}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            ConjugacyCertificate cert = parse_certificate(json_of(e, "cert"), a, b);
            Verdict v = verify_weighted_orbit_certificate(a, b, cert, 12);
            bool ok = expect(os, "certificate fails", v.fails_());
            ok &= expect(os, "pumping product (4/3)^10 escapes C = 16",
                         *v.get("cycle-product") == "4/3" &&
                             *v.get("witness-repetitions") == "10");
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "peters-conjugacy";
        e.summary = "two single-map systems conjugate through x -> 1-x";
        e.documents = {{"a", single_map_doc("0", "1/2")}, {"b", single_map_doc("1/2", "1")}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            bool found = false, btc_ok = false, woc_ok = false;
            for (auto& h : candidate_homeomorphisms(a, b)) {
                if (!check_graph_conjugacy(a, b, h).holds_()) continue;
                found = true;
                btc_ok = check_branch_transition(a, b, h).holds_();
                auto cert = unit_certificate(a, b, h);
                woc_ok = cert && verify_weighted_orbit_certificate(a, b, *cert, 10).holds_();
                break;
            }
            bool ok = expect(os, "a candidate homeomorphism realizes graph conjugacy", found);
            ok &= expect(os, "branch-transition holds (no branching points)", btc_ok);
            ok &= expect(os, "weighted-orbit holds with C = 1", woc_ok);
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "matrix-isomorphic";
        e.summary = "weights do not matter at graph level: [[0,1],[1,0]] vs [[0,2],[3,0]]";
        e.documents = {{"a", matrix_doc({{"0", "1"}, {"1", "0"}})},
                       {"b", matrix_doc({{"0", "2"}, {"3", "0"}})}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            auto iso = find_graph_conjugacy_finite(a, b);
            bool ok = expect(os, "directed graphs isomorphic", iso.has_value());
            auto res = decide_weighted_orbit_finite(a, b);
            ok &= expect(os, "weighted-orbit holds with C = 1", res.verdict.holds_());
            ok &= expect(os, "emitted certificate re-verifies",
                         res.certificate &&
                             verify_weighted_orbit_certificate(a, b, *res.certificate, 12)
                                 .holds_());
            Homeo g{true, *iso, {}};
            ok &= expect(os, "branch-transition holds",
                         check_branch_transition(a, b, g).holds_());
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "matrix-distinct";
        e.summary = "a 2-cycle against two self-loops: every relation fails";
        e.documents = {{"a", matrix_doc({{"0", "1"}, {"1", "0"}})},
                       {"b", matrix_doc({{"1", "0"}, {"0", "1"}})}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            bool ok = expect(os, "no graph isomorphism",
                             !find_graph_conjugacy_finite(a, b).has_value());
            ok &= expect(os, "weighted-orbit fails",
                         decide_weighted_orbit_finite(a, b).verdict.fails_());
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "no-coinciding-points";
        e.summary = "partial systems with disjoint graphs: graph conjugacy settles it all";
        e.documents = {{"a", two_map_doc("0", "1/3", "2/3", "1")},
                       {"b", two_map_doc("2/3", "1", "0", "1/3")}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a"), b = sys_of(e, "b");
            bool ok = expect(os, "no coinciding points",
                             coinciding_set(a, {0, 1}).empty() &&
                                 coinciding_set(b, {0, 1}).empty());
            ok &= expect(os, "no branching points", branching_points(a).empty());
            Homeo id = Homeo::identity(a.space);
            ok &= expect(os, "graph conjugacy via id holds",
                         check_graph_conjugacy(a, b, id).holds_());
            ok &= expect(os, "branch-transition holds regardless of weights",
                         check_branch_transition(a, b, id).holds_());
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "sink-not-well-supported";
        e.summary = "a matrix with a zero column leaves a vertex without outgoing edges";
        e.documents = {{"a", matrix_doc({{"1", "0"}, {"1", "0"}})}};
        e.run = [e](std::ostream& os, unsigned) {
            WPS a = sys_of(e, "a");
            bool ok = expect(os, "not well-supported", !is_well_supported(a));
            bool threw = false;
            try {
                normalize(a);
            } catch (const argument_error&) {
                threw = true;
            }
            ok &= expect(os, "normalize rejects the system", threw);
            return ok;
        };
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "random-finite-collapse";
        e.summary = "random matrices under relabeling: the three relations coincide";
        e.documents = {};
        e.run = [](std::ostream& os, unsigned seed) {
            std::mt19937 rng(seed == 0 ? 12345u : seed);
            std::uniform_int_distribution<int> entry(0, 3);
            bool ok = true;
            for (int t = 0; t < 5; ++t) {
                int n = 2 + static_cast<int>(rng() % 4);
                std::vector<std::vector<Rat>> A(static_cast<size_t>(n),
                                                std::vector<Rat>(static_cast<size_t>(n)));
                bool any = false;
                for (auto& row : A)
                    for (auto& v : row) {
                        v = entry(rng);
                        if (v > 0) any = true;
                    }
                if (!any) A[0][0] = 1;
                std::vector<int> perm(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
                std::shuffle(perm.begin(), perm.end(), rng);
                std::vector<std::vector<Rat>> B(static_cast<size_t>(n),
                                                std::vector<Rat>(static_cast<size_t>(n)));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        B[static_cast<size_t>(perm[static_cast<size_t>(i)])]
                         [static_cast<size_t>(perm[static_cast<size_t>(j)])] =
                             A[static_cast<size_t>(i)][static_cast<size_t>(j)];
                WPS wa = wps_from_matrix(A), wb = wps_from_matrix(B);
                auto iso = find_graph_conjugacy_finite(wa, wb);
                bool here = iso.has_value();
                if (here) {
                    Homeo g{true, *iso, {}};
                    here = check_graph_conjugacy(wa, wb, g).holds_() &&
                           check_branch_transition(wa, wb, g).holds_() &&
                           decide_weighted_orbit_finite(wa, wb).verdict.holds_();
                }
                ok &= expect(os, "relabeled matrix pair " + std::to_string(t), here);
            }
            return ok;
        };
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

const CorpusEntry* corpus_find(const std::string& name) {
    for (auto& e : corpus())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace wps
