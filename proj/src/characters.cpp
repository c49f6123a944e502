#include "wps/characters.hpp"

#include <cmath>
#include <set>

namespace wps {

Rat disc_radius_sq(const WPS& sys, const Point& x) {
    bool fixed = false;
    if (sys.finite()) {
        for (int i = 0; i < sys.arity() && !fixed; ++i)
            if (auto img = sys.fmap(i, x.atom); img && *img == x.atom) fixed = true;
    } else {
        for (auto& b : sys.ib)
            if (b.map.defined_at(x.coord) && b.map.eval(x.coord) == x.coord) fixed = true;
    }
    if (!fixed) throw domain_error("disc data is defined only at fixed points");
    Edge e = sys.finite() ? Edge::finite(x.atom, x.atom) : Edge::at(x.coord, x.coord);
    return edge_weight(sys, e);
}

DiscData disc_data(const WPS& sys) {
    DiscData out;
    SubsetDesc fix = fixed_points(sys);
    if (sys.finite()) {
        for (int a : fix.atoms)
            out.points.push_back({Point::of_atom(a), disc_radius_sq(sys, Point::of_atom(a))});
        return out;
    }
    for (auto& piece : fix.set.pieces()) {
        if (piece.degenerate()) {
            out.points.push_back(
                {Point::of_coord(piece.lo), disc_radius_sq(sys, Point::of_coord(piece.lo))});
            continue;
        }
        // generic diagonal weight along the fixed interval
        std::set<Rat> cuts{piece.lo, piece.hi};
        for (auto& b : sys.ib) {
            for (auto& c : b.map.comps)
                for (auto& x : c.xs)
                    if (x > piece.lo && x < piece.hi) cuts.insert(x);
            for (auto& c : b.weight.comps)
                for (auto& x : c.xs)
                    if (x > piece.lo && x < piece.hi) cuts.insert(x);
        }
        std::vector<Rat> xs(cuts.begin(), cuts.end());
        // per-subinterval generic follower family, decided at the midpoint;
        // adjacent subintervals merge only when their values meet
        DiscData::Segment seg;
        auto flush = [&]() {
            if (!seg.xs.empty()) {
                seg.lo = seg.xs.front();
                seg.hi = seg.xs.back();
                out.segments.push_back(seg);
            }
            seg = DiscData::Segment{};
        };
        for (size_t i = 0; i + 1 < xs.size(); ++i) {
            Rat mid = (xs[i] + xs[i + 1]) / 2;
            Rat va = 0, vb = 0;
            for (auto& b : sys.ib)
                if (b.map.defined_at(mid) && b.map.eval(mid) == mid) {
                    va += b.weight.eval(xs[i]);
                    vb += b.weight.eval(xs[i + 1]);
                }
            if (!seg.xs.empty() && seg.ys.back() != va) flush();
            if (seg.xs.empty()) {
                seg.xs.push_back(xs[i]);
                seg.ys.push_back(va);
            }
            seg.xs.push_back(xs[i + 1]);
            seg.ys.push_back(vb);
        }
        flush();
        // special points where the exact self-loop weight differs from the
        // generic value (junctions, crossings, endpoints)
        std::set<Rat> special(xs.begin(), xs.end());
        for (auto& x : special) {
            Rat exact = disc_radius_sq(sys, Point::of_coord(x));
            bool matches = false;
            for (auto& sg : out.segments)
                for (size_t k = 0; k < sg.xs.size(); ++k)
                    if (sg.xs[k] == x && sg.ys[k] == exact) matches = true;
            if (!matches) out.points.push_back({Point::of_coord(x), exact});
        }
    }
    return out;
}

std::complex<double> eval_character(const FockSpace& fs, const FourierElement& T, int atom,
                                    std::complex<double> z) {
    const WPS& sys = fs.system();
    // locate the self-loop edge (if any)
    int loop = -1;
    for (size_t i = 0; i < fs.edges().fedges.size(); ++i)
        if (fs.edges().fedges[i] == std::make_pair(atom, atom)) loop = static_cast<int>(i);
    double rsq = 0.0;
    if (loop >= 0)
        rsq = to_double(edge_weight(sys, Edge::finite(atom, atom)));
    if (std::norm(z) > rsq + 1e-12)
        throw domain_error("character argument outside the closed disc");
    std::complex<double> acc = 0.0;
    for (auto& [n, vals] : T.coeffs) {
        if (n == 0) {
            const RatComplex& v = vals.at(static_cast<size_t>(atom));
            acc += std::complex<double>(to_double(v.re), to_double(v.im));
            continue;
        }
        if (loop < 0) continue;  // no constant path: the term vanishes
        std::vector<int> path(static_cast<size_t>(n), loop);
        int idx = fs.path_index(n, path);
        if (idx < 0) continue;
        const RatComplex& v = vals.at(static_cast<size_t>(idx));
        double sf = 1.0;
        if (T.sqrt_factor)
            sf = std::pow(std::sqrt(to_double(T.sqrt_factor->at(static_cast<size_t>(loop)))),
                          n);
        acc += std::complex<double>(to_double(v.re), to_double(v.im)) * sf * std::pow(z, n);
    }
    return acc;
}

std::complex<double> MobiusMap::apply(std::complex<double> z) const {
    std::complex<double> e(std::cos(theta), std::sin(theta));
    return e * (w - z) / (1.0 - std::conj(w) * z);
}

MobiusMap MobiusMap::rotation(std::complex<double> unit) {
    // z -> unit z equals e^{i theta}(0 - z) with e^{i theta} = -unit
    MobiusMap m;
    m.w = 0.0;
    m.theta = std::arg(-unit);
    return m;
}

namespace {

struct Mat2 {
    std::complex<double> a, b, c, d;
};

Mat2 as_matrix(const MobiusMap& m) {
    std::complex<double> e(std::cos(m.theta), std::sin(m.theta));
    return {-e, e * m.w, -std::conj(m.w), 1.0};
}

MobiusMap canonicalize(const Mat2& M) {
    // zero of the numerator is the new centre
    std::complex<double> w = -M.b / M.a;
    MobiusMap out;
    out.w = w;
    auto apply = [&](std::complex<double> z) { return (M.a * z + M.b) / (M.c * z + M.d); };
    std::complex<double> phase;
    if (std::abs(w) > 1e-14) {
        phase = apply(0.0) / w;
    } else {
        out.w = 0.0;
        phase = -apply(1.0);
    }
    out.theta = std::arg(phase);
    return out;
}

}  // namespace

MobiusMap mobius_compose(const MobiusMap& f2, const MobiusMap& f1) {
    Mat2 A = as_matrix(f2), B = as_matrix(f1);
    Mat2 P{A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d, A.c * B.a + A.d * B.c,
           A.c * B.b + A.d * B.d};
    return canonicalize(P);
}

MobiusMap mobius_invert(const MobiusMap& m) {
    Mat2 M = as_matrix(m);
    return canonicalize({M.d, -M.b, -M.c, M.a});
}

std::pair<std::complex<double>, std::complex<double>> solve_zeroing_pair(double h) {
    if (h < 0.0 || h >= 1.0) throw domain_error("zeroing pair needs h in [0, 1)");
    double re = (1.0 + h) / 2.0;
    std::complex<double> gamma(re, std::sqrt(1.0 - re * re));
    std::complex<double> lambda = (gamma - 1.0) / (gamma - h);
    return {lambda, gamma};
}

double verify_zeroing_composition(const MobiusMap& f, const MobiusMap& finv,
                                  std::complex<double> lambda, std::complex<double> gamma) {
    std::complex<double> z = f.apply(0.0);
    z = lambda * z;
    z = finv.apply(z);
    z = gamma * z;
    z = f.apply(z);
    return std::abs(z);
}

ZeroingReport semi_gradedness_probe(const std::vector<MobiusMap>& data, double tol) {
    ZeroingReport rep;
    for (size_t i = 0; i < data.size(); ++i) {
        double f0 = std::abs(data[i].apply(0.0));
        if (f0 <= tol) continue;
        double h = std::norm(data[i].w);
        auto [lambda, gamma] = solve_zeroing_pair(h);
        double res =
            verify_zeroing_composition(data[i], mobius_invert(data[i]), lambda, gamma);
        rep.nonzero.push_back({i, f0, lambda, gamma, res});
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

}  // namespace wps
