#include "wps/correspondence.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace wps {

RatComplex CorrElement::Piece::eval(const Rat& s) const {
    if (s < xs.front() || s > xs.back()) throw domain_error("element piece: out of range");
    if (xs.size() == 1) return ys[0];
    size_t lo = 0, hi = xs.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (xs[mid] <= s)
            lo = mid;
        else
            hi = mid;
    }
    Rat t = (s - xs[lo]) / (xs[lo + 1] - xs[lo]);
    return {ys[lo].re + t * (ys[lo + 1].re - ys[lo].re),
            ys[lo].im + t * (ys[lo + 1].im - ys[lo].im)};
}

RatComplex CorrElement::eval(const EdgeSet& es, const Edge& e) const {
    if (is_finite) {
        for (size_t i = 0; i < es.fedges.size(); ++i)
            if (es.fedges[i].first == e.r.atom && es.fedges[i].second == e.s.atom)
                return fvalues.at(i);
        throw domain_error("element undefined at edge");
    }
    for (auto& p : pieces)
        if (p.on.contains(e.r.coord, e.s.coord)) return p.eval(e.s.coord);
    for (auto& [k, v] : point_values)
        if (k.first == e.r.coord && k.second == e.s.coord) return v;
    throw domain_error("element undefined at edge");
}

CorrElement simple_tensor(const WPS& sys, const EdgeSet& es, const BaseFunc& f,
                          const BaseFunc& g) {
    if (!sys.finite()) throw argument_error("table form requires a finite space");
    CorrElement xi;
    xi.is_finite = true;
    for (auto& e : es.fedges)
        xi.fvalues.push_back(f.at(static_cast<size_t>(e.first)) *
                             g.at(static_cast<size_t>(e.second)));
    return xi;
}

CorrElement module_actions(const WPS& sys, const EdgeSet& es, const BaseFunc& f,
                           const CorrElement& xi, const BaseFunc& g) {
    if (!sys.finite()) throw argument_error("table form requires a finite space");
    CorrElement out;
    out.is_finite = true;
    for (size_t i = 0; i < es.fedges.size(); ++i)
        out.fvalues.push_back(f.at(static_cast<size_t>(es.fedges[i].first)) * xi.fvalues[i] *
                              g.at(static_cast<size_t>(es.fedges[i].second)));
    return out;
}

std::vector<RatComplex> inner_product(const WPS& sys, const EdgeSet& es,
                                      const CorrElement& xi, const CorrElement& eta) {
    if (!sys.finite()) throw argument_error("table form requires a finite space");
    if (xi.fvalues.size() != es.fedges.size() || eta.fvalues.size() != es.fedges.size())
        throw argument_error("elements attached to a different graph");
    std::vector<RatComplex> out(sys.space.points.size());
    for (size_t i = 0; i < es.fedges.size(); ++i) {
        Edge e = Edge::finite(es.fedges[i].first, es.fedges[i].second);
        Rat w = edge_weight(sys, e);
        out[static_cast<size_t>(e.s.atom)] += xi.fvalues[i].conj() * (w * eta.fvalues[i]);
    }
    return out;
}

std::function<RatComplex(const Rat&)> inner_product_fn(const WPS& sys, const EdgeSet& es,
                                                       const CorrElement& xi,
                                                       const CorrElement& eta) {
    return [&sys, es, xi, eta](const Rat& x) {
        RatComplex acc;
        std::set<Rat> ranges;
        for (auto& p : es.pieces)
            if (x >= p.s_lo && x <= p.s_hi) ranges.insert(p.range.eval(x));
        for (auto& q : es.iso_points)
            if (q.second == x) ranges.insert(q.first);
        for (auto& r : ranges) {
            Edge e = Edge::at(r, x);
            Rat w = edge_weight(sys, e);
            acc += xi.eval(es, e).conj() * (w * eta.eval(es, e));
        }
        return acc;
    };
}

namespace {

// exact extrema of a cubic on [a, b]; brackets irrational critical points
struct CubicMax {
    Rat lo, hi;
    bool exact;
};

CubicMax cubic_max(const Rat& c0, const Rat& c1, const Rat& c2, const Rat& c3, const Rat& a,
                   const Rat& b) {
    auto F = [&](const Rat& x) -> Rat { return c0 + x * (c1 + x * (c2 + x * c3)); };
    Rat best = std::max(F(a), F(b));
    bool exact = true;
    // F' = c1 + 2 c2 x + 3 c3 x^2
    Rat q0 = c1, q1 = 2 * c2, q2 = 3 * c3;
    std::vector<Rat> crit;
    std::vector<std::pair<Rat, Rat>> brackets;
    if (q2 == 0) {
        if (q1 != 0) crit.push_back(-q0 / q1);
    } else {
        Rat disc = q1 * q1 - 4 * q2 * q0;
        if (disc == 0) {
            crit.push_back(-q1 / (2 * q2));
        } else if (disc > 0) {
            Int nd = numerator(disc), dd = denominator(disc);
            Int ns = sqrt(nd), ds = sqrt(dd);
            if (ns * ns == nd && ds * ds == dd) {
                Rat sq(ns, ds);
                crit.push_back((-q1 + sq) / (2 * q2));
                crit.push_back((-q1 - sq) / (2 * q2));
            } else {
                // bracket the two roots by derivative sign bisection
                auto Fp = [&](const Rat& x) -> Rat { return q0 + x * (q1 + x * q2); };
                Rat width = b - a;
                Rat step = width / 64;
                Rat x = a;
                Rat prev = Fp(a), px = a;
                for (int i = 1; i <= 64; ++i) {
                    Rat nx = (i == 64) ? b : a + step * i;
                    Rat cur = Fp(nx);
                    if ((prev < 0) != (cur < 0)) {
                        Rat lo2 = px, hi2 = nx;
                        while (hi2 - lo2 > Rat(1, 1000000000000LL)) {
                            Rat mid = (lo2 + hi2) / 2;
                            if ((Fp(lo2) < 0) != (Fp(mid) < 0))
                                hi2 = mid;
                            else
                                lo2 = mid;
                        }
                        brackets.push_back({lo2, hi2});
                    }
                    prev = cur;
                    px = nx;
                }
                (void)x;
            }
        }
    }
    for (auto& x : crit)
        if (x > a && x < b) best = std::max(best, F(x));
    Rat slack = 0;
    for (auto& [lo2, hi2] : brackets) {
        if (hi2 <= a || lo2 >= b) continue;
        best = std::max(best, std::max(F(lo2), F(hi2)));
        // Lipschitz slack over the bracket
        Rat M = std::max(rat_abs(a), rat_abs(b));
        Rat L = rat_abs(c1) + 2 * rat_abs(c2) * M + 3 * rat_abs(c3) * M * M;
        slack = std::max(slack, Rat(L * (hi2 - lo2)));
        exact = false;
    }
    return {best, best + slack, exact};
}

}  // namespace

NormSqResult corr_norm_sq(const WPS& sys, const EdgeSet& es, const CorrElement& xi) {
    if (sys.finite()) {
        auto fiber = inner_product(sys, es, xi, xi);
        Rat best = 0;
        for (auto& v : fiber) best = std::max(best, v.re);
        return {best, best, true};
    }
    // refine the source axis at piece and element breakpoints
    std::set<Rat> cuts;
    for (auto& p : es.pieces) {
        cuts.insert(p.s_lo);
        cuts.insert(p.s_hi);
    }
    for (auto& p : xi.pieces)
        for (auto& x : p.xs) cuts.insert(x);
    for (auto& b : sys.ib)
        for (auto& c : b.weight.comps)
            for (auto& x : c.xs) cuts.insert(x);
    for (auto& b : sys.ib)
        for (auto& c : b.map.comps)
            for (auto& x : c.xs) cuts.insert(x);
    NormSqResult res{Rat(0), Rat(0), true};
    auto consider = [&](const CubicMax& cm) {
        res.lo = std::max(res.lo, cm.lo);
        res.hi = std::max(res.hi, cm.hi);
        res.exact = res.exact && cm.exact;
    };
    auto fiber = inner_product_fn(sys, es, xi, xi);
    std::vector<Rat> xs(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rat &a = xs[i], &b = xs[i + 1];
        if (sys.space.component_of((a + b) / 2) < 0) continue;
        // the fiber sum is a polynomial of degree <= 3 on (a, b): fit it
        // exactly from four samples
        Rat t[4], y[4];
        for (int k = 0; k < 4; ++k) {
            t[k] = a + (b - a) * Rat(k + 1, 6);
            y[k] = fiber(t[k]).re;
        }
        // Lagrange -> monomial coefficients
        Rat c[4] = {Rat(0), Rat(0), Rat(0), Rat(0)};
        for (int k = 0; k < 4; ++k) {
            // basis polynomial prod_{j != k} (x - t_j) / (t_k - t_j)
            Rat denom = 1;
            Rat poly[4] = {Rat(1), Rat(0), Rat(0), Rat(0)};  // coefficients, degree order
            int deg = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == k) continue;
                denom *= (t[k] - t[j]);
                for (int d = deg; d >= 0; --d) {
                    poly[d + 1] += poly[d];
                    poly[d] *= -t[j];
                }
                ++deg;
            }
            for (int d = 0; d < 4; ++d) c[d] += y[k] / denom * poly[d];
        }
        consider(cubic_max(c[0], c[1], c[2], c[3], a, b));
    }
    for (auto& x : xs) {
        if (sys.space.component_of(x) < 0) continue;
        Rat v = fiber(x).re;
        res.lo = std::max(res.lo, v);
        res.hi = std::max(res.hi, v);
    }
    return res;
}

PathSpace paths(const WPS& sys, int n, long long cap) {
    if (n < 1) throw argument_error("paths needs n >= 1");
    PathSpace ps;
    ps.is_finite = sys.finite();
    ps.length = n;
    if (sys.finite()) {
        EdgeSet es = graph(sys);
        FiniteEdgeGraph fg;
        fg.n = static_cast<int>(sys.space.points.size());
        fg.edges = es.fedges;
        fg.factor.assign(es.fedges.size(), Rat(1));
        fg.build_adjacency();
        long long count = 0;
        std::vector<int> stack;
        std::function<void(int)> dfs = [&](int v) {
            if (static_cast<int>(stack.size()) == n) {
                if (count >= cap)
                    throw resource_error("path enumeration cap exceeded", count);
                ps.fpaths.push_back(stack);
                ++count;
                return;
            }
            for (int e : fg.out[static_cast<size_t>(v)]) {
                stack.push_back(e);
                dfs(fg.edges[static_cast<size_t>(e)].first);
                stack.pop_back();
            }
        };
        for (int v = 0; v < fg.n; ++v) dfs(v);
        return ps;
    }
    // interval: piece-words with exact feasible source sets
    struct MapPiece {
        Rat lo, hi;
        Affine m;
    };
    std::vector<MapPiece> mps;
    for (auto& b : sys.ib)
        for (auto& c : b.map.comps) {
            if (c.xs.size() == 1) {
                mps.push_back({c.xs[0], c.xs[0], Affine{c.ys[0], Rat(0)}});
                continue;
            }
            for (size_t i = 0; i < c.piece_count(); ++i)
                mps.push_back({c.xs[i], c.xs[i + 1], c.piece(i)});
        }
    long long count = 0;
    std::vector<int> word;
    std::function<void(const IntervalSet&, const Affine&)> dfs =
        [&](const IntervalSet& F, const Affine& M) {
            if (static_cast<int>(word.size()) == n) {
                if (count >= cap)
                    throw resource_error("piece-word enumeration cap exceeded", count);
                ps.words.push_back({word, F});
                ++count;
                return;
            }
            for (size_t p = 0; p < mps.size(); ++p) {
                const auto& mp = mps[p];
                IntervalSet nf;
                Affine nM{Rat(0), Rat(1)};
                if (word.empty()) {
                    nf = IntervalSet::closed(mp.lo, mp.hi);
                    nM = mp.m;
                } else {
                    if (M.a1 == 0) {
                        nf = (M.a0 >= mp.lo && M.a0 <= mp.hi) ? F : IntervalSet::empty();
                    } else {
                        Rat plo = (mp.lo - M.a0) / M.a1, phi = (mp.hi - M.a0) / M.a1;
                        if (plo > phi) std::swap(plo, phi);
                        nf = F.intersect(IntervalSet::closed(plo, phi));
                    }
                    nM = Affine{mp.m.a0 + mp.m.a1 * M.a0, mp.m.a1 * M.a1};
                }
                if (nf.is_empty()) continue;
                word.push_back(static_cast<int>(p));
                dfs(nf, nM);
                word.pop_back();
            }
        };
    dfs(IntervalSet::empty(), Affine{Rat(0), Rat(1)});
    return ps;
}

Rat path_weight(const WPS& sys, const EdgeSet& es, const std::vector<int>& path) {
    Rat w = 1;
    for (int eid : path) {
        auto& e = es.fedges.at(static_cast<size_t>(eid));
        w *= edge_weight(sys, Edge::finite(e.first, e.second));
    }
    return w;
}

std::vector<RatComplex> tensor(const WPS& sys, const EdgeSet& es, const PathSpace& ps,
                               const std::vector<CorrElement>& factors) {
    (void)es;
    if (!sys.finite()) throw argument_error("tensor table form requires a finite space");
    if (static_cast<int>(factors.size()) != ps.length)
        throw argument_error("tensor needs one factor per step");
    std::vector<RatComplex> out;
    for (auto& path : ps.fpaths) {
        RatComplex v{Rat(1)};
        for (size_t k = 0; k < path.size(); ++k)
            v = v * factors[k].fvalues.at(static_cast<size_t>(path[k]));
        out.push_back(v);
    }
    return out;
}

std::vector<RatComplex> path_inner_product(const WPS& sys, const EdgeSet& es,
                                           const PathSpace& ps,
                                           const std::vector<RatComplex>& Xi,
                                           const std::vector<RatComplex>& Eta) {
    std::vector<RatComplex> out(sys.space.points.size());
    for (size_t i = 0; i < ps.fpaths.size(); ++i) {
        int src = es.fedges.at(static_cast<size_t>(ps.fpaths[i][0])).second;
        Rat w = path_weight(sys, es, ps.fpaths[i]);
        out[static_cast<size_t>(src)] += Xi[i].conj() * (w * Eta[i]);
    }
    return out;
}

RatComplex Multiplier::phase_at(const Edge& e) const {
    for (auto& [k, v] : phases)
        if (k.first == e.r.atom && k.second == e.s.atom) return v;
    return RatComplex{Rat(1)};
}

Multiplier multiplier_from_certificate(const ConjugacyCertificate& cert) {
    Multiplier V;
    V.H = cert.H;
    return V;
}

FiniteEdgeGraph multiplier_factor_graph(const Multiplier& V, const WPS& source,
                                        const WPS& target) {
    if (!source.finite() || !target.finite())
        throw argument_error("factor graph requires finite spaces");
    EdgeSet gs = graph(source);
    if (edge_set_mismatch(gs, graph(target)))
        throw argument_error("multiplier requires equal graphs");
    FiniteEdgeGraph fg;
    fg.n = static_cast<int>(source.space.points.size());
    fg.edges = gs.fedges;
    for (auto& e : gs.fedges) {
        Edge ed = Edge::finite(e.first, e.second);
        fg.factor.push_back(V.H.eval_edge(ed) * edge_weight(target, ed) /
                            edge_weight(source, ed));
    }
    fg.build_adjacency();
    return fg;
}

Rat tensor_power_norm_sq(const Multiplier& V, const WPS& source, const WPS& target, int n) {
    FiniteEdgeGraph fg = multiplier_factor_graph(V, source, target);
    Rat best = 0;
    for (auto& v : max_path_product(fg, n)) best = std::max(best, v);
    return best;
}

Rat tensor_power_norm_sq_serial(const Multiplier& V, const WPS& source, const WPS& target,
                                int n) {
    FiniteEdgeGraph fg = multiplier_factor_graph(V, source, target);
    Rat best = 0;
    for (auto& v : max_path_product_serial(fg, n)) best = std::max(best, v);
    return best;
}

Verdict is_tensor_power_bounded(const Multiplier& V, const WPS& source, const WPS& target) {
    FiniteEdgeGraph fg = multiplier_factor_graph(V, source, target);
    BoundednessResult br = analyze_boundedness(fg, /*one_sided=*/true);
    if (!br.bounded) {
        Verdict v = Verdict::fails("a cycle with factor product > 1 pumps the norms");
        std::string cyc;
        Rat p = 1;
        for (int eid : br.pumping->edges) {
            auto& e = fg.edges[static_cast<size_t>(eid)];
            cyc += "(" + source.space.points[static_cast<size_t>(e.first)] + ", " +
                   source.space.points[static_cast<size_t>(e.second)] + ") ";
            p *= fg.factor[static_cast<size_t>(eid)];
        }
        v.with("witness-cycle", cyc);
        v.with("cycle-product", rat_str(p));
        return v;
    }
    Verdict v = Verdict::holds("every cycle has factor product <= 1");
    v.with("sup-norm-sq", rat_str(br.sup));
    return v;
}

}  // namespace wps
