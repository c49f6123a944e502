#include "wps/io.hpp"


namespace wps {

using nlohmann::json;

namespace {

Rat jrat(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_rat(v.get<std::string>());
        if (v.is_number_integer()) return Rat(v.get<long long>());
        if (v.is_number_float()) {
            double d = v.get<double>();
            if (d == static_cast<long long>(d)) return Rat(static_cast<long long>(d));
            throw parse_error("non-integer numeric literal");
        }
    } catch (const parse_error& e) {
        throw parse_error(where + ": " + e.what());
    }
    throw parse_error(where + ": expected a rational \"p/q\" string");
}

RatComplex jcomplex(const json& v, const std::string& where) {
    if (v.is_array()) {
        if (v.size() != 2) throw parse_error(where + ": complex value needs [re, im]");
        return {jrat(v[0], where + "[0]"), jrat(v[1], where + "[1]")};
    }
    return RatComplex{jrat(v, where)};
}

std::vector<Rat> jrats(const json& v, const std::string& where) {
    if (!v.is_array()) throw parse_error(where + ": expected an array");
    std::vector<Rat> out;
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(jrat(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Space parse_space(const json& doc) {
    if (!doc.contains("type")) throw parse_error("space: missing \"type\"");
    Space s;
    std::string type = doc["type"].get<std::string>();
    if (type == "finite") {
        s.kind = Space::Kind::Finite;
        if (!doc.contains("points")) throw parse_error("space: finite needs \"points\"");
        for (auto& p : doc["points"]) s.points.push_back(p.get<std::string>());
    } else if (type == "intervals") {
        s.kind = Space::Kind::Intervals;
        if (!doc.contains("components"))
            throw parse_error("space: intervals needs \"components\"");
        for (size_t i = 0; i < doc["components"].size(); ++i) {
            auto& c = doc["components"][i];
            std::string where = "space.components[" + std::to_string(i) + "]";
            if (!c.is_array() || c.size() != 2)
                throw parse_error(where + ": expected [lo, hi]");
            s.components.push_back(
                {jrat(c[0], where + "[0]"), jrat(c[1], where + "[1]"), true, true});
        }
    } else {
        throw parse_error("space: type must be \"finite\" or \"intervals\"");
    }
    s.validate();
    return s;
}

// PL data for one branch over an interval space
PLFunc parse_plfunc(const json& doc, const Space& s, const ClopenSubset& dom,
                    const std::string& where) {
    PLFunc f;
    f.domain = dom;
    if (doc.is_object() && doc.contains("const")) {
        return pl_constant(s, dom, jrat(doc["const"], where + ".const"));
    }
    if (doc.is_string()) {
        return pl_constant(s, dom, jrat(doc, where));
    }
    if (doc.is_object() && doc.contains("pieces")) {
        std::map<int, std::pair<std::vector<Rat>, std::vector<Rat>>> per;
        for (size_t i = 0; i < doc["pieces"].size(); ++i) {
            auto& p = doc["pieces"][i];
            std::string w = where + ".pieces[" + std::to_string(i) + "]";
            int comp = p.at("component").get<int>();
            per[comp] = {jrats(p.at("breakpoints"), w + ".breakpoints"),
                         jrats(p.at("values"), w + ".values")};
        }
        for (int ci : dom.indices) {
            auto it = per.find(ci);
            if (it == per.end())
                throw parse_error(where + ": missing piece for component " +
                                  std::to_string(ci));
            PLComponent c;
            c.component = ci;
            c.xs = it->second.first;
            c.ys = it->second.second;
            f.comps.push_back(std::move(c));
        }
        f.validate(s);
        return f;
    }
    if (doc.is_object() && doc.contains("breakpoints")) {
        if (dom.indices.size() != 1)
            throw parse_error(where + ": flat breakpoints need a single-component domain");
        PLComponent c;
        c.component = dom.indices[0];
        c.xs = jrats(doc["breakpoints"], where + ".breakpoints");
        c.ys = jrats(doc["values"], where + ".values");
        f.comps.push_back(std::move(c));
        f.validate(s);
        return f;
    }
    throw parse_error(where + ": expected PL data or a constant");
}

WPS desugar_matrix(const json& doc) {
    std::vector<std::vector<Rat>> A;
    for (size_t i = 0; i < doc.size(); ++i)
        A.push_back(jrats(doc[i], "matrix[" + std::to_string(i) + "]"));
    return wps_from_matrix(A);
}

WPS desugar_graph(const json& doc) {
    if (!doc.contains("vertices") || !doc.contains("edges"))
        throw parse_error("graph shorthand needs \"vertices\" and \"edges\"");
    std::vector<std::string> verts;
    for (auto& v : doc["vertices"]) verts.push_back(v.get<std::string>());
    size_t n = verts.size();
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
    auto idx = [&](const std::string& l) -> size_t {
        for (size_t i = 0; i < n; ++i)
            if (verts[i] == l) return i;
        throw parse_error("graph edge names unknown vertex '" + l + "'");
    };
    // edges are [from, to]; the cograph records (to, from) with counting weights
    for (auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2) throw parse_error("graph edge must be [from, to]");
        size_t from = idx(e[0].get<std::string>()), to = idx(e[1].get<std::string>());
        A[to][from] += 1;
    }
    return wps_from_matrix(A, verts);
}

}  // namespace

WPS parse_system(const json& doc) {
    if (doc.contains("matrix")) return desugar_matrix(doc["matrix"]);
    if (doc.contains("graph")) return desugar_graph(doc["graph"]);
    if (!doc.contains("space")) throw parse_error("system: missing \"space\"");
    WPS sys;
    sys.space = parse_space(doc["space"]);
    if (!doc.contains("branches") || !doc["branches"].is_array())
        throw parse_error("system: missing \"branches\" array");
    size_t bi = 0;
    for (auto& b : doc["branches"]) {
        std::string where = "branches[" + std::to_string(bi++) + "]";
        if (!b.contains("domain")) throw parse_error(where + ": missing \"domain\"");
        if (sys.space.finite()) {
            FiniteBranch fb;
            for (auto& d : b["domain"]) {
                int a = sys.space.atom_index(d.get<std::string>());
                if (a < 0)
                    throw parse_error(where + ".domain: unknown atom '" +
                                      d.get<std::string>() + "'");
                fb.domain.indices.push_back(a);
            }
            fb.domain.normalize();
            auto& mp = b.at("map");
            auto& wt = b.at("weight");
            for (int a : fb.domain.indices) {
                const std::string& label = sys.space.points[static_cast<size_t>(a)];
                if (!mp.contains(label))
                    throw parse_error(where + ".map: missing image of '" + label + "'");
                int img = sys.space.atom_index(mp[label].get<std::string>());
                if (img < 0)
                    throw parse_error(where + ".map: unknown image atom for '" + label + "'");
                fb.image.push_back(img);
                if (wt.is_object() && wt.contains("const"))
                    fb.weight.push_back(jrat(wt["const"], where + ".weight.const"));
                else if (wt.is_string())
                    fb.weight.push_back(jrat(wt, where + ".weight"));
                else {
                    if (!wt.contains(label))
                        throw parse_error(where + ".weight: missing weight of '" + label +
                                          "'");
                    fb.weight.push_back(jrat(wt[label], where + ".weight." + label));
                }
            }
            sys.fb.push_back(std::move(fb));
        } else {
            IntervalBranch ib;
            for (auto& d : b["domain"]) {
                if (!d.is_number_integer())
                    throw parse_error(where + ".domain: component indices expected");
                ib.domain.indices.push_back(d.get<int>());
            }
            ib.domain.normalize();
            for (int ci : ib.domain.indices)
                if (ci < 0 || ci >= static_cast<int>(sys.space.components.size()))
                    throw parse_error(where + ".domain: component index out of range");
            ib.map = parse_plfunc(b.at("map"), sys.space, ib.domain, where + ".map");
            ib.weight = parse_plfunc(b.at("weight"), sys.space, ib.domain, where + ".weight");
            sys.ib.push_back(std::move(ib));
        }
    }
    sys.validate();
    return sys;
}

WPS parse_system_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_system(doc);
}

static json pl_to_json(const PLFunc& f) {
    json pieces = json::array();
    for (auto& c : f.comps) {
        json p;
        p["component"] = c.component;
        json bx = json::array(), vy = json::array();
        for (auto& x : c.xs) bx.push_back(rat_str(x));
        for (auto& y : c.ys) vy.push_back(rat_str(y));
        p["breakpoints"] = bx;
        p["values"] = vy;
        pieces.push_back(p);
    }
    return json{{"pieces", pieces}};
}

json serialize_system(const WPS& sys) {
    json doc;
    if (sys.finite()) {
        doc["space"] = {{"type", "finite"}, {"points", sys.space.points}};
        json branches = json::array();
        for (auto& b : sys.fb) {
            json jb;
            json dom = json::array(), mp = json::object(), wt = json::object();
            for (size_t k = 0; k < b.domain.indices.size(); ++k) {
                const std::string& label =
                    sys.space.points[static_cast<size_t>(b.domain.indices[k])];
                dom.push_back(label);
                mp[label] = sys.space.points[static_cast<size_t>(b.image[k])];
                wt[label] = rat_str(b.weight[k]);
            }
            jb["domain"] = dom;
            jb["map"] = mp;
            jb["weight"] = wt;
            branches.push_back(jb);
        }
        doc["branches"] = branches;
        return doc;
    }
    json comps = json::array();
    for (auto& c : sys.space.components)
        comps.push_back(json::array({rat_str(c.lo), rat_str(c.hi)}));
    doc["space"] = {{"type", "intervals"}, {"components", comps}};
    json branches = json::array();
    for (auto& b : sys.ib) {
        json jb;
        jb["domain"] = b.domain.indices;
        jb["map"] = pl_to_json(b.map);
        jb["weight"] = pl_to_json(b.weight);
        branches.push_back(jb);
    }
    doc["branches"] = branches;
    return doc;
}

Homeo parse_gamma(const json& doc, const Space& from, const Space& to) {
    Homeo h;
    if (doc.is_string() && doc.get<std::string>() == "identity") {
        if (!(from == to)) throw parse_error("gamma: identity needs equal spaces");
        return Homeo::identity(from);
    }
    if (doc.contains("identity") && doc["identity"].get<bool>()) {
        if (!(from == to)) throw parse_error("gamma: identity needs equal spaces");
        return Homeo::identity(from);
    }
    if (from.finite()) {
        if (!doc.contains("map")) throw parse_error("gamma: finite case needs \"map\"");
        h.is_finite = true;
        h.table.assign(from.points.size(), -1);
        for (auto& [k, v] : doc["map"].items()) {
            int a = from.atom_index(k);
            int b = to.atom_index(v.get<std::string>());
            if (a < 0 || b < 0) throw parse_error("gamma.map: unknown atom '" + k + "'");
            h.table[static_cast<size_t>(a)] = b;
        }
        for (int t : h.table)
            if (t < 0) throw parse_error("gamma.map: not defined on every atom");
        if (!h.valid(from, to)) throw parse_error("gamma.map: not a bijection");
        return h;
    }
    h.is_finite = false;
    ClopenSubset all = ClopenSubset::all(from);
    h.pl = parse_plfunc(doc, from, all, "gamma");
    if (!h.valid(from, to)) throw parse_error("gamma: not a homeomorphism");
    return h;
}

json serialize_gamma(const Homeo& gamma, const Space& from, const Space& to) {
    if (from == to && gamma.is_identity(from)) return json{{"identity", true}};
    if (gamma.is_finite) {
        json mp = json::object();
        for (size_t i = 0; i < gamma.table.size(); ++i)
            mp[from.points[i]] = to.points[static_cast<size_t>(gamma.table[i])];
        return json{{"map", mp}};
    }
    return pl_to_json(gamma.pl);
}

ConjugacyCertificate parse_certificate(const json& doc, const WPS& a, const WPS& b) {
    ConjugacyCertificate cert;
    if (!doc.contains("gamma")) throw parse_error("certificate: missing \"gamma\"");
    cert.gamma = parse_gamma(doc["gamma"], a.space, b.space);
    if (!doc.contains("C")) throw parse_error("certificate: missing \"C\"");
    cert.C = jrat(doc["C"], "certificate.C");
    if (!doc.contains("H")) throw parse_error("certificate: missing \"H\"");
    auto& H = doc["H"];
    cert.H.is_finite = a.finite();
    if (a.finite()) {
        if (!H.contains("edges")) throw parse_error("certificate.H: finite case needs edges");
        for (auto& e : H["edges"]) {
            int r = a.space.atom_index(e.at("r").get<std::string>());
            int s = a.space.atom_index(e.at("s").get<std::string>());
            if (r < 0 || s < 0) throw parse_error("certificate.H: unknown atom in edge");
            cert.H.fvalues.push_back({{r, s}, jrat(e.at("value"), "certificate.H.value")});
        }
        return cert;
    }
    if (!H.contains("pieces")) throw parse_error("certificate.H: interval case needs pieces");
    for (size_t i = 0; i < H["pieces"].size(); ++i) {
        auto& p = H["pieces"][i];
        std::string where = "certificate.H.pieces[" + std::to_string(i) + "]";
        HFunc::Piece hp;
        auto src = jrats(p.at("source"), where + ".source");
        auto rng = jrats(p.at("range"), where + ".range");
        if (src.size() != 2 || rng.size() != 2)
            throw parse_error(where + ": source needs [lo, hi], range needs [c0, c1]");
        hp.on = GraphPiece{src[0], src[1], Affine{rng[0], rng[1]}};
        hp.xs = jrats(p.at("breakpoints"), where + ".breakpoints");
        hp.ys = jrats(p.at("values"), where + ".values");
        cert.H.pieces.push_back(std::move(hp));
    }
    if (H.contains("points"))
        for (auto& q : H["points"])
            cert.H.point_values.push_back(
                {{jrat(q.at("r"), "certificate.H.points.r"),
                  jrat(q.at("s"), "certificate.H.points.s")},
                 jrat(q.at("value"), "certificate.H.points.value")});
    return cert;
}

json serialize_certificate(const ConjugacyCertificate& cert, const WPS& a, const WPS& b) {
    json doc;
    doc["gamma"] = serialize_gamma(cert.gamma, a.space, b.space);
    doc["C"] = rat_str(cert.C);
    if (cert.H.is_finite) {
        json edges = json::array();
        for (auto& [k, v] : cert.H.fvalues)
            edges.push_back(json{{"r", a.space.points[static_cast<size_t>(k.first)]},
                                 {"s", a.space.points[static_cast<size_t>(k.second)]},
                                 {"value", rat_str(v)}});
        doc["H"] = json{{"edges", edges}};
        return doc;
    }
    json pieces = json::array();
    for (auto& p : cert.H.pieces) {
        json jp;
        jp["source"] = json::array({rat_str(p.on.s_lo), rat_str(p.on.s_hi)});
        jp["range"] = json::array({rat_str(p.on.range.a0), rat_str(p.on.range.a1)});
        json bx = json::array(), vy = json::array();
        for (auto& x : p.xs) bx.push_back(rat_str(x));
        for (auto& y : p.ys) vy.push_back(rat_str(y));
        jp["breakpoints"] = bx;
        jp["values"] = vy;
        pieces.push_back(jp);
    }
    doc["H"] = json{{"pieces", pieces}};
    if (!cert.H.point_values.empty()) {
        json pts = json::array();
        for (auto& [k, v] : cert.H.point_values)
            pts.push_back(json{{"r", rat_str(k.first)},
                               {"s", rat_str(k.second)},
                               {"value", rat_str(v)}});
        doc["H"]["points"] = pts;
    }
    return doc;
}

FourierElement parse_element(const json& doc, const FockSpace& fs) {
    FourierElement T;
    if (!doc.contains("coefficients"))
        throw parse_error("element: missing \"coefficients\"");
    const Space& sp = fs.system().space;
    for (auto& c : doc["coefficients"]) {
        int n = c.at("degree").get<int>();
        if (n < 0 || n > fs.truncation())
            throw parse_error("element: degree outside the truncation");
        if (n == 0) {
            std::vector<RatComplex> vals(sp.points.size());
            for (auto& [k, v] : c.at("values").items()) {
                int a = sp.atom_index(k);
                if (a < 0) throw parse_error("element: unknown atom '" + k + "'");
                vals[static_cast<size_t>(a)] = jcomplex(v, "element.degree0");
            }
            T.coeffs[0] = vals;
            continue;
        }
        std::vector<RatComplex> vals(static_cast<size_t>(fs.path_count(n)));
        for (auto& entry : c.at("values")) {
            std::vector<int> path;
            for (auto& ed : entry.at("path")) {
                int r = sp.atom_index(ed[0].get<std::string>());
                int s = sp.atom_index(ed[1].get<std::string>());
                int eid = -1;
                for (size_t i = 0; i < fs.edges().fedges.size(); ++i)
                    if (fs.edges().fedges[i] == std::make_pair(r, s))
                        eid = static_cast<int>(i);
                if (eid < 0) throw parse_error("element: path edge not in the graph");
                path.push_back(eid);
            }
            int idx = fs.path_index(n, path);
            if (idx < 0) throw parse_error("element: path edges do not concatenate");
            vals[static_cast<size_t>(idx)] = jcomplex(entry.at("value"), "element.value");
        }
        T.coeffs[n] = vals;
    }
    return T;
}

json serialize_element(const FourierElement& T, const FockSpace& fs) {
    const Space& sp = fs.system().space;
    json coeffs = json::array();
    for (auto& [n, vals] : T.coeffs) {
        json c;
        c["degree"] = n;
        if (n == 0) {
            json v = json::object();
            for (size_t a = 0; a < vals.size(); ++a)
                v[sp.points[a]] =
                    json::array({rat_str(vals[a].re), rat_str(vals[a].im)});
            c["values"] = v;
        } else {
            json v = json::array();
            for (size_t i = 0; i < vals.size(); ++i) {
                if (vals[i].is_zero()) continue;
                json path = json::array();
                for (int eid : fs.degree_paths(n)[i]) {
                    auto& e = fs.edges().fedges[static_cast<size_t>(eid)];
                    path.push_back(json::array({sp.points[static_cast<size_t>(e.first)],
                                                sp.points[static_cast<size_t>(e.second)]}));
                }
                v.push_back(json{
                    {"path", path},
                    {"value", json::array({rat_str(vals[i].re), rat_str(vals[i].im)})}});
            }
            c["values"] = v;
        }
        coeffs.push_back(c);
    }
    return json{{"coefficients", coeffs}};
}

bool systems_equal(const WPS& a, const WPS& b) {
    if (!(a.space == b.space)) return false;
    if (a.finite()) {
        if (a.fb.size() != b.fb.size()) return false;
        for (size_t i = 0; i < a.fb.size(); ++i)
            if (a.fb[i].domain.indices != b.fb[i].domain.indices ||
                a.fb[i].image != b.fb[i].image || a.fb[i].weight != b.fb[i].weight)
                return false;
        return true;
    }
    if (a.ib.size() != b.ib.size()) return false;
    for (size_t i = 0; i < a.ib.size(); ++i)
        if (!(a.ib[i].domain == b.ib[i].domain) || !(a.ib[i].map == b.ib[i].map) ||
            !(a.ib[i].weight == b.ib[i].weight))
            return false;
    return true;
}

}  // namespace wps
