#include "wps/graph.hpp"

#include <algorithm>
#include <set>

namespace wps {

bool EdgeSet::member(const Edge& e) const {
    if (is_finite) {
        return std::binary_search(fedges.begin(), fedges.end(),
                                  std::make_pair(e.r.atom, e.s.atom));
    }
    for (auto& p : pieces)
        if (p.contains(e.r.coord, e.s.coord)) return true;
    for (auto& q : iso_points)
        if (q.first == e.r.coord && q.second == e.s.coord) return true;
    return false;
}

EdgeSet graph(const WPS& sys) {
    EdgeSet es;
    es.is_finite = sys.finite();
    if (sys.finite()) {
        std::set<std::pair<int, int>> acc;
        for (auto& b : sys.fb)
            for (size_t k = 0; k < b.domain.indices.size(); ++k)
                acc.insert({b.image[k], b.domain.indices[k]});
        es.fedges.assign(acc.begin(), acc.end());
        return es;
    }
    // group branch curve pieces by affine range formula
    std::map<std::pair<Rat, Rat>, IntervalSet> groups;  // (a0,a1) -> s-intervals
    std::set<std::pair<Rat, Rat>> deg_candidates;       // (r,s) from degenerate pieces
    for (auto& b : sys.ib) {
        for (auto& c : b.map.comps) {
            if (c.xs.size() == 1) {
                deg_candidates.insert({c.ys[0], c.xs[0]});
                continue;
            }
            for (size_t i = 0; i < c.piece_count(); ++i) {
                Affine m = c.piece(i);
                auto key = std::make_pair(m.a0, m.a1);
                groups[key] =
                    groups[key].unite(IntervalSet::closed(c.xs[i], c.xs[i + 1]));
            }
        }
    }
    for (auto& [key, set] : groups) {
        for (auto& p : set.pieces()) {
            if (p.degenerate()) {
                deg_candidates.insert({key.first + key.second * p.lo, p.lo});
            } else {
                es.pieces.push_back({p.lo, p.hi, Affine{key.first, key.second}});
            }
        }
    }
    std::sort(es.pieces.begin(), es.pieces.end(),
              [](const GraphPiece& a, const GraphPiece& b) {
                  if (a.range.a0 != b.range.a0) return a.range.a0 < b.range.a0;
                  if (a.range.a1 != b.range.a1) return a.range.a1 < b.range.a1;
                  return a.s_lo < b.s_lo;
              });
    for (auto& q : deg_candidates) {
        bool covered = false;
        for (auto& p : es.pieces)
            if (p.contains(q.first, q.second)) covered = true;
        if (!covered) es.iso_points.push_back(q);
    }
    std::sort(es.iso_points.begin(), es.iso_points.end());
    return es;
}

std::vector<int> index_set(const WPS& sys, const Edge& e) {
    std::vector<int> out;
    if (sys.finite()) {
        for (int i = 0; i < sys.arity(); ++i) {
            auto img = sys.fmap(i, e.s.atom);
            if (img && *img == e.r.atom) out.push_back(i);
        }
    } else {
        for (int i = 0; i < sys.arity(); ++i) {
            const auto& b = sys.ib[static_cast<size_t>(i)];
            if (b.map.defined_at(e.s.coord) && b.map.eval(e.s.coord) == e.r.coord)
                out.push_back(i);
        }
    }
    if (out.empty())
        throw domain_error("not an edge of the system graph: " + edge_str(sys.space, e));
    return out;
}

Rat edge_weight(const WPS& sys, const Edge& e) {
    Rat sum = 0;
    for (int i : index_set(sys, e)) {
        if (sys.finite())
            sum += *sys.fweight(i, e.s.atom);
        else
            sum += sys.ib[static_cast<size_t>(i)].weight.eval(e.s.coord);
    }
    return sum;
}

bool side_exists(const Space& s, const Rat& s0, Side side) {
    int ci = s.component_of(s0);
    if (ci < 0) return false;
    const auto& comp = s.components[static_cast<size_t>(ci)];
    return side == Side::Left ? s0 > comp.lo : s0 < comp.hi;
}

std::vector<Germ> germs_at(const WPS& sys, const Rat& s0, Side side) {
    std::vector<Germ> out;
    if (sys.finite() || !side_exists(sys.space, s0, side)) return out;
    for (int i = 0; i < sys.arity(); ++i) {
        const auto& b = sys.ib[static_cast<size_t>(i)];
        const PLComponent* c = b.map.comp_at(s0);
        if (!c) continue;
        // affine piece adjacent to s0 on the requested side
        Rat value = c->eval(s0);
        Rat slope = 0;
        bool found = false;
        for (size_t k = 0; k < c->piece_count(); ++k) {
            const Rat &a = c->xs[k], &bb = c->xs[k + 1];
            bool ok = side == Side::Left ? (a < s0 && s0 <= bb) : (a <= s0 && s0 < bb);
            if (ok) {
                slope = c->piece(k).a1;
                found = true;
                break;
            }
        }
        if (!found) continue;  // s0 at the component end on this side
        bool merged = false;
        for (auto& g : out)
            if (g.value == value && g.slope == slope) {
                g.branches.push_back(i);
                merged = true;
            }
        if (!merged) out.push_back({value, slope, {i}});
    }
    return out;
}

namespace {

// concrete sample from a nondegenerate leftover interval avoiding `avoid`
std::optional<Rat> pick_sample(const IvPiece& p, const EdgeSet& other, const Affine& range) {
    if (p.degenerate()) {
        Edge e = Edge::at(range.eval(p.lo), p.lo);
        if (!other.member(e)) return p.lo;
        return std::nullopt;
    }
    Rat w = p.hi - p.lo;
    for (int k = 1; k <= 16; ++k) {
        Rat x = p.lo + w * Rat(k, 17);
        if (!p.contains(x)) continue;
        if (!other.member(Edge::at(range.eval(x), x))) return x;
    }
    return std::nullopt;
}

std::optional<Edge> one_sided_mismatch(const EdgeSet& a, const EdgeSet& b) {
    std::map<std::pair<Rat, Rat>, IntervalSet> bcov;
    for (auto& p : b.pieces) {
        auto key = std::make_pair(p.range.a0, p.range.a1);
        bcov[key] = bcov[key].unite(IntervalSet::closed(p.s_lo, p.s_hi));
    }
    for (auto& p : a.pieces) {
        auto key = std::make_pair(p.range.a0, p.range.a1);
        IntervalSet left = IntervalSet::closed(p.s_lo, p.s_hi).subtract(bcov[key]);
        for (auto& piece : left.pieces()) {
            auto x = pick_sample(piece, b, p.range);
            if (x) return Edge::at(p.range.eval(*x), *x);
        }
    }
    for (auto& q : a.iso_points) {
        Edge e = Edge::at(q.first, q.second);
        if (!b.member(e)) return e;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Edge> edge_set_mismatch(const EdgeSet& a, const EdgeSet& b) {
    if (a == b) return std::nullopt;
    if (a.is_finite != b.is_finite)
        throw argument_error("cannot compare graphs over different space kinds");
    if (a.is_finite) {
        for (auto& e : a.fedges)
            if (!std::binary_search(b.fedges.begin(), b.fedges.end(), e))
                return Edge::finite(e.first, e.second);
        for (auto& e : b.fedges)
            if (!std::binary_search(a.fedges.begin(), a.fedges.end(), e))
                return Edge::finite(e.first, e.second);
        return std::nullopt;
    }
    if (auto m = one_sided_mismatch(a, b)) return m;
    return one_sided_mismatch(b, a);
}

std::string edge_str(const Space& sp, const Edge& e) {
    return "(" + point_str(sp, e.r) + ", " + point_str(sp, e.s) + ")";
}

}  // namespace wps
