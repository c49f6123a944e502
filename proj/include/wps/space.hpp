#pragma once

#include "wps/interval_set.hpp"
#include "wps/rational.hpp"

#include <string>
#include <vector>

namespace wps {

// Compact base space: finite discrete set of labelled atoms, or a finite
// union of disjoint closed rational intervals (degenerate [a,a] allowed).
struct Space {
    enum class Kind { Finite, Intervals };
    Kind kind = Kind::Finite;
    std::vector<std::string> points;   // Finite
    std::vector<IvPiece> components;   // Intervals: closed, sorted, disjoint

    bool finite() const { return kind == Kind::Finite; }
    size_t size() const { return finite() ? points.size() : components.size(); }

    int atom_index(const std::string& label) const;
    // Component index containing x, or -1.
    int component_of(const Rat& x) const;
    IntervalSet as_set() const;

    void validate() const;
    bool operator==(const Space& o) const = default;
};

// A clopen subset: a set of atom indices (finite case) or whole-component
// indices (interval case). Always sorted and duplicate-free.
struct ClopenSubset {
    std::vector<int> indices;

    static ClopenSubset all(const Space& s);
    bool contains(int idx) const;
    bool empty() const { return indices.empty(); }
    ClopenSubset intersect(const ClopenSubset& o) const;
    void normalize();
    IntervalSet as_set(const Space& s) const;  // interval spaces
    bool operator==(const ClopenSubset& o) const = default;
};

// A point of a space: an atom index or an exact coordinate.
struct Point {
    int atom = -1;  // >= 0 for finite spaces
    Rat coord;      // interval spaces

    static Point of_atom(int a) { return Point{a, Rat(0)}; }
    static Point of_coord(Rat x) { return Point{-1, std::move(x)}; }
    bool operator==(const Point& o) const = default;
};

std::string point_str(const Space& s, const Point& p);

}  // namespace wps
