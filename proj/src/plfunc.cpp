#include "wps/plfunc.hpp"

#include <algorithm>
#include <set>

namespace wps {

Rat PLComponent::eval(const Rat& x) const {
    if (!contains(x)) throw domain_error("point " + rat_str(x) + " outside component");
    if (xs.size() == 1) return ys[0];
    // binary search for the piece
    size_t lo = 0, hi = xs.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (xs[mid] <= x)
            lo = mid;
        else
            hi = mid;
    }
    const Rat &x0 = xs[lo], &x1 = xs[lo + 1];
    const Rat &y0 = ys[lo], &y1 = ys[lo + 1];
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

Affine PLComponent::piece(size_t i) const {
    const Rat &x0 = xs[i], &x1 = xs[i + 1];
    const Rat &y0 = ys[i], &y1 = ys[i + 1];
    Rat slope = (y1 - y0) / (x1 - x0);
    return Affine{y0 - slope * x0, slope};
}

void PLComponent::validate() const {
    if (xs.empty() || xs.size() != ys.size())
        throw argument_error("breakpoints/values size mismatch");
    for (size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i - 1] < xs[i])) throw argument_error("breakpoints must strictly increase");
}

Rat PLFunc::eval(const Rat& x) const {
    for (auto& c : comps)
        if (c.contains(x)) return c.eval(x);
    throw domain_error("point " + rat_str(x) + " outside function domain");
}

bool PLFunc::defined_at(const Rat& x) const {
    for (auto& c : comps)
        if (c.contains(x)) return true;
    return false;
}

const PLComponent* PLFunc::comp_at(const Rat& x) const {
    for (auto& c : comps)
        if (c.contains(x)) return &c;
    return nullptr;
}

void PLFunc::validate(const Space& s) const {
    if (s.finite()) throw argument_error("PL functions live on interval spaces");
    if (domain.indices.size() != comps.size())
        throw argument_error("domain/components mismatch");
    for (size_t k = 0; k < comps.size(); ++k) {
        const auto& c = comps[k];
        c.validate();
        if (c.component != domain.indices[k])
            throw argument_error("component index mismatch");
        const auto& ref = s.components.at(static_cast<size_t>(c.component));
        if (c.lo() != ref.lo || c.hi() != ref.hi)
            throw argument_error("breakpoints must span the whole component");
    }
}

Rat PLFunc::min_value() const {
    bool first = true;
    Rat m;
    for (auto& c : comps)
        for (auto& y : c.ys)
            if (first || y < m) {
                m = y;
                first = false;
            }
    if (first) throw argument_error("empty function");
    return m;
}

Rat PLFunc::max_value() const {
    bool first = true;
    Rat m;
    for (auto& c : comps)
        for (auto& y : c.ys)
            if (first || y > m) {
                m = y;
                first = false;
            }
    if (first) throw argument_error("empty function");
    return m;
}

PLFunc pl_identity(const Space& s, const ClopenSubset& dom) {
    PLFunc f;
    f.domain = dom;
    for (int ci : dom.indices) {
        const auto& comp = s.components.at(static_cast<size_t>(ci));
        PLComponent c;
        c.component = ci;
        if (comp.lo == comp.hi) {
            c.xs = {comp.lo};
            c.ys = {comp.lo};
        } else {
            c.xs = {comp.lo, comp.hi};
            c.ys = {comp.lo, comp.hi};
        }
        f.comps.push_back(std::move(c));
    }
    return f;
}

PLFunc pl_constant(const Space& s, const ClopenSubset& dom, const Rat& value) {
    PLFunc f = pl_identity(s, dom);
    for (auto& c : f.comps)
        for (auto& y : c.ys) y = value;
    return f;
}

PLFunc pl_from_points(const Space& s, int component, std::vector<Rat> xs, std::vector<Rat> ys) {
    PLFunc f;
    f.domain.indices = {component};
    PLComponent c;
    c.component = component;
    c.xs = std::move(xs);
    c.ys = std::move(ys);
    c.validate();
    f.comps.push_back(std::move(c));
    f.validate(s);
    return f;
}

namespace {

// Merge two sorted breakpoint lists.
std::vector<Rat> merge_breaks(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> out;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

PLFunc pl_compose(const PLFunc& f, const PLFunc& g) {
    PLFunc out;
    out.domain = g.domain;
    for (auto& gc : g.comps) {
        PLComponent oc;
        oc.component = gc.component;
        std::set<Rat> breaks(gc.xs.begin(), gc.xs.end());
        // add preimages of f's breakpoints under each affine piece of g
        for (size_t i = 0; i < gc.piece_count(); ++i) {
            Affine m = gc.piece(i);
            if (m.a1 == 0) continue;
            const Rat &a = gc.xs[i], &b = gc.xs[i + 1];
            for (auto& fc : f.comps)
                for (auto& bx : fc.xs) {
                    Rat pre = (bx - m.a0) / m.a1;
                    if (pre > a && pre < b) breaks.insert(pre);
                }
        }
        oc.xs.assign(breaks.begin(), breaks.end());
        for (auto& x : oc.xs) {
            Rat gx = gc.eval(x);
            if (!f.defined_at(gx))
                throw domain_error("composition escapes domain at x = " + rat_str(x) +
                                   " (g(x) = " + rat_str(gx) + ")");
            oc.ys.push_back(f.eval(gx));
        }
        // check midpoints too: range must not cross a domain gap inside a piece
        for (size_t i = 0; i + 1 < oc.xs.size(); ++i) {
            Rat mid = (oc.xs[i] + oc.xs[i + 1]) / 2;
            Rat gm = gc.eval(mid);
            if (!f.defined_at(gm))
                throw domain_error("composition escapes domain at x = " + rat_str(mid));
        }
        out.comps.push_back(std::move(oc));
    }
    return out;
}

PLFunc pl_add(const PLFunc& f, const PLFunc& g) {
    PLFunc out;
    out.domain = f.domain.intersect(g.domain);
    for (int ci : out.domain.indices) {
        const PLComponent *fc = nullptr, *gc = nullptr;
        for (auto& c : f.comps)
            if (c.component == ci) fc = &c;
        for (auto& c : g.comps)
            if (c.component == ci) gc = &c;
        PLComponent oc;
        oc.component = ci;
        oc.xs = merge_breaks(fc->xs, gc->xs);
        for (auto& x : oc.xs) oc.ys.push_back(fc->eval(x) + gc->eval(x));
        out.comps.push_back(std::move(oc));
    }
    return out;
}

PLFunc pl_scale(const PLFunc& f, const Rat& c) {
    PLFunc out = f;
    for (auto& comp : out.comps)
        for (auto& y : comp.ys) y *= c;
    return out;
}

IntervalSet pl_solve_equal(const PLFunc& f, const PLFunc& g) {
    std::vector<IvPiece> sol;
    ClopenSubset common = f.domain.intersect(g.domain);
    for (int ci : common.indices) {
        const PLComponent *fc = nullptr, *gc = nullptr;
        for (auto& c : f.comps)
            if (c.component == ci) fc = &c;
        for (auto& c : g.comps)
            if (c.component == ci) gc = &c;
        auto xs = merge_breaks(fc->xs, gc->xs);
        if (xs.size() == 1) {
            if (fc->eval(xs[0]) == gc->eval(xs[0])) sol.push_back({xs[0], xs[0], true, true});
            continue;
        }
        for (size_t i = 0; i + 1 < xs.size(); ++i) {
            const Rat &a = xs[i], &b = xs[i + 1];
            Rat fa = fc->eval(a), fb = fc->eval(b);
            Rat ga = gc->eval(a), gb = gc->eval(b);
            Rat da = fa - ga, db = fb - gb;
            if (da == 0 && db == 0) {
                sol.push_back({a, b, true, true});
            } else if (da == 0) {
                sol.push_back({a, a, true, true});
            } else if (db == 0) {
                sol.push_back({b, b, true, true});
            } else if ((da < 0) != (db < 0)) {
                // affine difference crosses zero once, at a rational point
                Rat t = da / (da - db);
                Rat x = a + t * (b - a);
                sol.push_back({x, x, true, true});
            }
        }
    }
    return IntervalSet::of(std::move(sol));
}

bool pl_is_homeomorphism(const PLFunc& f, const Space& from, const Space& to) {
    if (from.finite() || to.finite()) return false;
    if (f.domain.indices.size() != from.components.size()) return false;
    if (from.components.size() != to.components.size()) return false;
    for (size_t k = 0; k < f.domain.indices.size(); ++k)
        if (f.domain.indices[k] != static_cast<int>(k)) return false;
    std::vector<bool> hit(to.components.size(), false);
    for (auto& c : f.comps) {
        const auto& src = from.components.at(static_cast<size_t>(c.component));
        if (c.lo() != src.lo || c.hi() != src.hi) return false;
        bool degenerate = c.xs.size() == 1;
        bool increasing = true, decreasing = true;
        for (size_t i = 1; i < c.ys.size(); ++i) {
            if (!(c.ys[i - 1] < c.ys[i])) increasing = false;
            if (!(c.ys[i - 1] > c.ys[i])) decreasing = false;
        }
        if (!degenerate && !increasing && !decreasing) return false;
        Rat vlo = std::min(c.ys.front(), c.ys.back());
        Rat vhi = std::max(c.ys.front(), c.ys.back());
        int target = -1;
        for (size_t t = 0; t < to.components.size(); ++t)
            if (to.components[t].lo == vlo && to.components[t].hi == vhi) target = static_cast<int>(t);
        if (target < 0) return false;
        if (degenerate != (vlo == vhi)) return false;
        if (hit[static_cast<size_t>(target)]) return false;
        hit[static_cast<size_t>(target)] = true;
    }
    for (bool h : hit)
        if (!h) return false;
    return true;
}

PLFunc pl_invert(const PLFunc& f, const Space& from, const Space& to) {
    if (!pl_is_homeomorphism(f, from, to))
        throw argument_error("invert: not a homeomorphism");
    PLFunc out;
    std::vector<PLComponent> comps;
    for (auto& c : f.comps) {
        PLComponent ic;
        Rat vlo = std::min(c.ys.front(), c.ys.back());
        Rat vhi = std::max(c.ys.front(), c.ys.back());
        for (size_t t = 0; t < to.components.size(); ++t)
            if (to.components[t].lo == vlo && to.components[t].hi == vhi)
                ic.component = static_cast<int>(t);
        bool increasing = c.ys.size() < 2 || c.ys.front() < c.ys.back();
        ic.xs = c.ys;
        ic.ys = c.xs;
        if (!increasing) {
            std::reverse(ic.xs.begin(), ic.xs.end());
            std::reverse(ic.ys.begin(), ic.ys.end());
        }
        comps.push_back(std::move(ic));
    }
    std::sort(comps.begin(), comps.end(),
              [](const PLComponent& a, const PLComponent& b) { return a.component < b.component; });
    for (auto& c : comps) out.domain.indices.push_back(c.component);
    out.comps = std::move(comps);
    return out;
}

IntervalSet pl_image(const PLFunc& f, const IntervalSet& set) {
    IntervalSet out;
    for (auto& c : f.comps) {
        IntervalSet here = set.intersect(IntervalSet::closed(c.lo(), c.hi()));
        if (here.is_empty()) continue;
        if (c.xs.size() == 1) {
            out = out.unite(IntervalSet::point(c.ys[0]));
            continue;
        }
        for (size_t i = 0; i < c.piece_count(); ++i) {
            IntervalSet part = here.intersect(IntervalSet::closed(c.xs[i], c.xs[i + 1]));
            if (part.is_empty()) continue;
            Affine m = c.piece(i);
            out = out.unite(part.affine_image(m.a0, m.a1));
        }
    }
    return out;
}

PLFunc pl_restrict(const PLFunc& f, const ClopenSubset& dom) {
    PLFunc out;
    out.domain = dom;
    for (int ci : dom.indices) {
        bool found = false;
        for (auto& c : f.comps)
            if (c.component == ci) {
                out.comps.push_back(c);
                found = true;
            }
        if (!found) throw argument_error("restrict: component not in domain");
    }
    return out;
}

bool pl_equal_on_common(const PLFunc& f, const PLFunc& g) {
    ClopenSubset common = f.domain.intersect(g.domain);
    for (int ci : common.indices) {
        const PLComponent *fc = nullptr, *gc = nullptr;
        for (auto& c : f.comps)
            if (c.component == ci) fc = &c;
        for (auto& c : g.comps)
            if (c.component == ci) gc = &c;
        auto xs = merge_breaks(fc->xs, gc->xs);
        for (auto& x : xs)
            if (fc->eval(x) != gc->eval(x)) return false;
    }
    return true;
}

}  // namespace wps
