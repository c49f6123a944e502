#include "wps/interval_set.hpp"

#include <algorithm>
#include <sstream>

namespace wps {

IntervalSet IntervalSet::of(std::vector<IvPiece> pieces) {
    IntervalSet s(std::move(pieces));
    s.normalize();
    return s;
}

void IntervalSet::normalize() {
    std::vector<IvPiece> in;
    for (auto& p : pieces_) {
        if (p.lo > p.hi) continue;
        if (p.lo == p.hi && !(p.lo_closed && p.hi_closed)) continue;  // empty
        in.push_back(p);
    }
    std::sort(in.begin(), in.end(), [](const IvPiece& a, const IvPiece& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<IvPiece> out;
    for (auto& p : in) {
        if (!out.empty()) {
            IvPiece& q = out.back();
            // merge when overlapping or touching with at least one closed end
            bool touch = p.lo < q.hi || (p.lo == q.hi && (p.lo_closed || q.hi_closed));
            if (touch) {
                if (p.hi > q.hi) {
                    q.hi = p.hi;
                    q.hi_closed = p.hi_closed;
                } else if (p.hi == q.hi) {
                    q.hi_closed = q.hi_closed || p.hi_closed;
                }
                continue;
            }
        }
        out.push_back(p);
    }
    pieces_ = std::move(out);
}

bool IntervalSet::contains(const Rat& x) const {
    for (auto& p : pieces_)
        if (p.contains(x)) return true;
    return false;
}

bool IntervalSet::is_closed() const {
    for (auto& p : pieces_)
        if (!p.lo_closed || !p.hi_closed) return false;
    return true;
}

std::vector<Rat> IntervalSet::endpoints() const {
    std::vector<Rat> out;
    for (auto& p : pieces_) {
        out.push_back(p.lo);
        if (p.hi != p.lo) out.push_back(p.hi);
    }
    return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    std::vector<IvPiece> all = pieces_;
    all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
    return of(std::move(all));
}

namespace {
// intersection of two single intervals; empty result encoded as lo>hi
IvPiece isect(const IvPiece& a, const IvPiece& b) {
    IvPiece r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    } else {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
    }
    if (r.lo > r.hi || (r.lo == r.hi && !(r.lo_closed && r.hi_closed))) {
        r.lo = 1;
        r.hi = 0;  // empty marker
    }
    return r;
}
}  // namespace

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    std::vector<IvPiece> out;
    for (auto& a : pieces_)
        for (auto& b : o.pieces_) {
            IvPiece r = isect(a, b);
            if (r.lo <= r.hi) out.push_back(r);
        }
    return of(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& o) const {
    std::vector<IvPiece> cur = pieces_;
    for (auto& b : o.pieces_) {
        std::vector<IvPiece> next;
        for (auto& a : cur) {
            IvPiece mid = isect(a, b);
            if (mid.lo > mid.hi) {
                next.push_back(a);
                continue;
            }
            // left remainder: [a.lo, mid.lo) possibly closed at mid.lo
            IvPiece left{a.lo, mid.lo, a.lo_closed, !mid.lo_closed};
            if (left.lo < left.hi || (left.lo == left.hi && left.lo_closed && left.hi_closed))
                next.push_back(left);
            IvPiece right{mid.hi, a.hi, !mid.hi_closed, a.hi_closed};
            if (right.lo < right.hi ||
                (right.lo == right.hi && right.lo_closed && right.hi_closed))
                next.push_back(right);
        }
        cur = std::move(next);
    }
    return of(std::move(cur));
}

IntervalSet IntervalSet::closure() const {
    std::vector<IvPiece> out;
    for (auto p : pieces_) {
        p.lo_closed = p.hi_closed = true;
        out.push_back(p);
    }
    return of(std::move(out));
}

IntervalSet IntervalSet::affine_image(const Rat& a, const Rat& b) const {
    std::vector<IvPiece> out;
    for (auto& p : pieces_) {
        Rat ylo = a + b * p.lo, yhi = a + b * p.hi;
        IvPiece q;
        if (b >= 0) {
            q = {ylo, yhi, p.lo_closed, p.hi_closed};
        } else {
            q = {yhi, ylo, p.hi_closed, p.lo_closed};
        }
        if (b == 0) q = {a, a, true, true};
        out.push_back(q);
    }
    return of(std::move(out));
}

std::string IntervalSet::str() const {
    if (pieces_.empty()) return "{}";
    std::ostringstream os;
    bool first = true;
    for (auto& p : pieces_) {
        if (!first) os << " u ";
        first = false;
        if (p.degenerate()) {
            os << "{" << rat_str(p.lo) << "}";
        } else {
            os << (p.lo_closed ? '[' : '(') << rat_str(p.lo) << ", " << rat_str(p.hi)
               << (p.hi_closed ? ']' : ')');
        }
    }
    return os.str();
}

}  // namespace wps
