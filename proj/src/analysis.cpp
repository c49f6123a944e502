#include "wps/analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wps {

std::string SubsetDesc::str(const Space& s) const {
    if (s.finite()) {
        if (atoms.empty()) return "{}";
        std::ostringstream os;
        os << "{";
        for (size_t i = 0; i < atoms.size(); ++i)
            os << (i ? ", " : "") << s.points[static_cast<size_t>(atoms[i])];
        os << "}";
        return os.str();
    }
    return set.str();
}

SubsetDesc coinciding_set(const WPS& sys, const std::vector<int>& I) {
    if (I.size() < 2) throw argument_error("coinciding set needs |I| >= 2");
    SubsetDesc out;
    if (sys.finite()) {
        for (size_t a = 0; a < sys.space.points.size(); ++a) {
            bool all_in = true, agree = true;
            std::optional<int> first;
            for (int i : I) {
                auto img = sys.fmap(i, static_cast<int>(a));
                if (!img) {
                    all_in = false;
                    break;
                }
                if (!first)
                    first = *img;
                else if (*first != *img)
                    agree = false;
            }
            if (all_in && agree) out.atoms.push_back(static_cast<int>(a));
        }
        return out;
    }
    // nested intersection of pairwise equality sets, within the common domain
    ClopenSubset common = sys.ib[static_cast<size_t>(I[0])].domain;
    for (int i : I) common = common.intersect(sys.ib[static_cast<size_t>(i)].domain);
    IntervalSet acc = common.as_set(sys.space);
    for (size_t k = 1; k < I.size(); ++k) {
        const auto& f = sys.ib[static_cast<size_t>(I[0])].map;
        const auto& g = sys.ib[static_cast<size_t>(I[k])].map;
        acc = acc.intersect(pl_solve_equal(f, g));
    }
    out.set = acc;
    return out;
}

SubsetDesc boundary(const WPS& sys, const std::vector<int>& I) {
    SubsetDesc out;
    if (sys.finite()) return out;  // discrete topology
    SubsetDesc c = coinciding_set(sys, I);
    std::vector<IvPiece> pts;
    for (auto& p : c.set.pieces()) {
        int ci = sys.space.component_of(p.lo);
        const auto& comp = sys.space.components.at(static_cast<size_t>(ci));
        if (p.degenerate()) {
            if (!(comp.lo == p.lo && comp.hi == p.lo)) pts.push_back({p.lo, p.lo, true, true});
            continue;
        }
        if (p.lo > comp.lo) pts.push_back({p.lo, p.lo, true, true});
        if (p.hi < comp.hi) pts.push_back({p.hi, p.hi, true, true});
    }
    out.set = IntervalSet::of(std::move(pts));
    return out;
}

SubsetDesc branching_points(const WPS& sys) {
    SubsetDesc out;
    if (sys.finite()) return out;
    // pairs suffice: the boundary of an intersection sits inside the union
    // of the boundaries
    for (int i = 0; i < sys.arity(); ++i)
        for (int j = i + 1; j < sys.arity(); ++j)
            out.set = out.set.unite(boundary(sys, {i, j}).set);
    return out;
}

std::vector<Edge> branching_edges(const WPS& sys) {
    std::vector<Edge> out;
    if (sys.finite()) return out;
    std::set<std::pair<Rat, Rat>> seen;
    for (int i = 0; i < sys.arity(); ++i)
        for (int j = i + 1; j < sys.arity(); ++j) {
            SubsetDesc b = boundary(sys, {i, j});
            for (auto& p : b.set.pieces()) {
                Rat r = sys.ib[static_cast<size_t>(i)].map.eval(p.lo);
                if (seen.insert({r, p.lo}).second) out.push_back(Edge::at(r, p.lo));
            }
        }
    return out;
}

SubsetDesc fixed_points(const WPS& sys) {
    SubsetDesc out;
    if (sys.finite()) {
        std::set<int> acc;
        for (int i = 0; i < sys.arity(); ++i)
            for (size_t k = 0; k < sys.fb[static_cast<size_t>(i)].domain.indices.size(); ++k)
                if (sys.fb[static_cast<size_t>(i)].image[k] ==
                    sys.fb[static_cast<size_t>(i)].domain.indices[k])
                    acc.insert(sys.fb[static_cast<size_t>(i)].image[k]);
        out.atoms.assign(acc.begin(), acc.end());
        return out;
    }
    for (auto& b : sys.ib) {
        PLFunc id = pl_identity(sys.space, b.domain);
        out.set = out.set.unite(pl_solve_equal(b.map, id));
    }
    return out;
}

std::vector<WeightJump> weight_discontinuities(const WPS& sys) {
    std::vector<WeightJump> out;
    if (sys.finite()) return out;
    for (const Edge& e : branching_edges(sys)) {
        auto I = index_set(sys, e);
        Rat value = edge_weight(sys, e);
        std::vector<Rat> limits;
        bool jump = false;
        for (Side side : {Side::Left, Side::Right}) {
            for (auto& g : germs_at(sys, e.s.coord, side)) {
                if (g.value != e.r.coord) continue;
                Rat lim = 0;
                for (int i : g.branches)
                    lim += sys.ib[static_cast<size_t>(i)].weight.eval(e.s.coord);
                limits.push_back(lim);
                if (lim != value) jump = true;
            }
        }
        if (jump) out.push_back({e, value, std::move(limits)});
    }
    return out;
}

std::pair<Rat, Rat> weight_bounds(const WPS& sys) {
    bool first = true;
    Rat lo, hi;
    auto consider = [&](const Rat& v) {
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
    };
    if (sys.finite()) {
        EdgeSet es = graph(sys);
        for (auto& e : es.fedges) consider(edge_weight(sys, Edge::finite(e.first, e.second)));
        if (first) throw argument_error("empty graph");
        return {lo, hi};
    }
    // On the interior of each graph piece the edge weight is the PL sum of
    // the weights of the branches following that curve; breakpoint values
    // plus the (finitely many) special points cover all extrema.
    EdgeSet es = graph(sys);
    std::set<Rat> samples;
    for (auto& p : es.pieces) {
        samples.insert(p.s_lo);
        samples.insert(p.s_hi);
        samples.insert((p.s_lo + p.s_hi) / 2);
    }
    for (auto& b : sys.ib)
        for (auto& c : b.weight.comps)
            for (auto& x : c.xs) samples.insert(x);
    for (auto& b : sys.ib)
        for (auto& c : b.map.comps)
            for (auto& x : c.xs) samples.insert(x);
    for (auto& p : es.pieces)
        for (auto& s : samples) {
            if (s < p.s_lo || s > p.s_hi) continue;
            consider(edge_weight(sys, Edge::at(p.range.eval(s), s)));
        }
    for (auto& q : es.iso_points) consider(edge_weight(sys, Edge::at(q.first, q.second)));
    // branching edges carry the jumps: both the limits and the (larger)
    // edge values are extrema candidates
    for (auto& j : weight_discontinuities(sys)) {
        consider(j.value);
        for (auto& lim : j.limits) consider(lim);
    }
    if (first) throw argument_error("empty graph");
    return {lo, hi};
}

bool is_well_supported(const WPS& sys) {
    std::set<int> covered;
    if (sys.finite()) {
        for (auto& b : sys.fb)
            for (int a : b.domain.indices) covered.insert(a);
        return covered.size() == sys.space.points.size();
    }
    for (auto& b : sys.ib)
        for (int c : b.domain.indices) covered.insert(c);
    return covered.size() == sys.space.components.size();
}

Rat weight_function(const WPS& sys, const Point& x) {
    Rat sum = 0;
    bool any = false;
    if (sys.finite()) {
        for (int i = 0; i < sys.arity(); ++i)
            if (auto w = sys.fweight(i, x.atom)) {
                sum += *w;
                any = true;
            }
    } else {
        for (auto& b : sys.ib)
            if (b.weight.defined_at(x.coord)) {
                sum += b.weight.eval(x.coord);
                any = true;
            }
    }
    if (!any) return Rat(0);
    return sum;
}

namespace {

// Exact PL quotient f / g on f's domain; domain error when the quotient
// is not PL on some refined piece.
PLFunc pl_quotient(const PLFunc& f, const PLFunc& g) {
    PLFunc out;
    out.domain = f.domain;
    for (auto& fc : f.comps) {
        const PLComponent* gc = nullptr;
        for (auto& c : g.comps)
            if (c.component == fc.component) gc = &c;
        if (!gc) throw domain_error("quotient: denominator missing on component");
        std::set<Rat> breaks(fc.xs.begin(), fc.xs.end());
        breaks.insert(gc->xs.begin(), gc->xs.end());
        PLComponent oc;
        oc.component = fc.component;
        oc.xs.assign(breaks.begin(), breaks.end());
        for (auto& x : oc.xs) oc.ys.push_back(fc.eval(x) / gc->eval(x));
        // verify the quotient is affine on each refined piece
        for (size_t i = 0; i + 1 < oc.xs.size(); ++i) {
            Rat mid = (oc.xs[i] + oc.xs[i + 1]) / 2;
            Rat expect = (oc.ys[i] + oc.ys[i + 1]) / 2;
            if (fc.eval(mid) / gc->eval(mid) != expect)
                throw domain_error(
                    "normalized weight is not piecewise-linear on this system");
        }
        out.comps.push_back(std::move(oc));
    }
    return out;
}

}  // namespace

WPS normalize(const WPS& sys) {
    if (!is_well_supported(sys))
        throw argument_error("normalize requires a well-supported system");
    WPS out = sys;
    if (sys.finite()) {
        for (auto& b : out.fb)
            for (size_t k = 0; k < b.domain.indices.size(); ++k)
                b.weight[k] /= weight_function(sys, Point::of_atom(b.domain.indices[k]));
        return out;
    }
    // w_sigma as an exact PL function on the whole space
    PLFunc total;
    bool have = false;
    for (auto& b : sys.ib) {
        if (!have) {
            total = b.weight;
            have = true;
            continue;
        }
        // extend by addition on overlaps, keep union of domains
        PLFunc overlap = pl_add(total, b.weight);
        PLFunc merged;
        ClopenSubset uni = total.domain;
        uni.indices.insert(uni.indices.end(), b.weight.domain.indices.begin(),
                           b.weight.domain.indices.end());
        uni.normalize();
        merged.domain = uni;
        for (int ci : uni.indices) {
            const PLComponent* oc = nullptr;
            for (auto& c : overlap.comps)
                if (c.component == ci) oc = &c;
            if (!oc)
                for (auto& c : total.comps)
                    if (c.component == ci) oc = &c;
            if (!oc)
                for (auto& c : b.weight.comps)
                    if (c.component == ci) oc = &c;
            merged.comps.push_back(*oc);
        }
        total = merged;
    }
    for (auto& b : out.ib) b.weight = pl_quotient(b.weight, pl_restrict(total, b.domain));
    return out;
}

std::vector<Rat> positive_operator(const WPS& sys, const std::vector<Rat>& f) {
    if (!sys.finite()) throw argument_error("table form requires a finite space");
    if (f.size() != sys.space.points.size())
        throw domain_error("function must be defined on the whole space");
    std::vector<Rat> out(f.size(), Rat(0));
    for (size_t a = 0; a < f.size(); ++a)
        for (int i = 0; i < sys.arity(); ++i)
            if (auto img = sys.fmap(i, static_cast<int>(a)))
                out[a] += *sys.fweight(i, static_cast<int>(a)) * f[static_cast<size_t>(*img)];
    return out;
}

std::function<Rat(const Rat&)> positive_operator(const WPS& sys, const PLFunc& f) {
    if (sys.finite()) throw argument_error("PL form requires an interval space");
    for (size_t ci = 0; ci < sys.space.components.size(); ++ci)
        if (!f.domain.contains(static_cast<int>(ci)))
            throw domain_error("function must be defined on the whole space");
    return [sys, f](const Rat& x) {
        Rat sum = 0;
        for (auto& b : sys.ib)
            if (b.map.defined_at(x)) sum += b.weight.eval(x) * f.eval(b.map.eval(x));
        return sum;
    };
}

}  // namespace wps
