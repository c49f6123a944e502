#pragma once

#include "wps/rational.hpp"

#include <string>
#include <vector>

namespace wps {

// One interval with endpoint flags. lo <= hi; a degenerate interval
// (lo == hi) must be closed on both sides.
struct IvPiece {
    Rat lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool degenerate() const { return lo == hi; }
    bool contains(const Rat& x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && !lo_closed) return false;
        if (x == hi && !hi_closed) return false;
        return true;
    }
    friend bool operator==(const IvPiece& a, const IvPiece& b) = default;
};

// Finite union of intervals over the rational line, kept sorted,
// disjoint and maximally merged. Closed instances double as the
// SubsetDescription type of the public API (intervals + isolated points).
class IntervalSet {
public:
    IntervalSet() = default;
    static IntervalSet empty() { return {}; }
    static IntervalSet point(const Rat& x) { return IntervalSet({{x, x, true, true}}); }
    static IntervalSet closed(const Rat& lo, const Rat& hi) {
        return IntervalSet({{lo, hi, true, true}});
    }
    static IntervalSet of(std::vector<IvPiece> pieces);

    bool is_empty() const { return pieces_.empty(); }
    bool contains(const Rat& x) const;
    bool is_closed() const;
    // All endpoints present in the set (degenerate points included once).
    std::vector<Rat> endpoints() const;

    const std::vector<IvPiece>& pieces() const { return pieces_; }

    IntervalSet unite(const IntervalSet& o) const;
    IntervalSet intersect(const IntervalSet& o) const;
    // Set difference this \ o.
    IntervalSet subtract(const IntervalSet& o) const;
    // Topological closure.
    IntervalSet closure() const;
    // Image under the affine map x -> a + b*x (exact; b may be 0 or negative).
    IntervalSet affine_image(const Rat& a, const Rat& b) const;

    bool operator==(const IntervalSet& o) const { return pieces_ == o.pieces_; }

    std::string str() const;

private:
    explicit IntervalSet(std::vector<IvPiece> p) : pieces_(std::move(p)) {}
    void normalize();
    std::vector<IvPiece> pieces_;
};

}  // namespace wps
