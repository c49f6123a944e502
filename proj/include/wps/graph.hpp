#pragma once

#include "wps/system.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wps {

struct Edge {
    Point r, s;
    static Edge finite(int r, int s) { return {Point::of_atom(r), Point::of_atom(s)}; }
    static Edge at(Rat r, Rat s) { return {Point::of_coord(std::move(r)), Point::of_coord(std::move(s))}; }
    bool operator==(const Edge& o) const = default;
};

// A maximal curve piece of the system graph: edges (range(s), s) for
// s in [s_lo, s_hi], range affine.
struct GraphPiece {
    Rat s_lo, s_hi;
    Affine range;
    bool operator==(const GraphPiece& o) const = default;
    bool contains(const Rat& r, const Rat& s) const {
        return s >= s_lo && s <= s_hi && range.eval(s) == r;
    }
};

// Canonical multiplicity-free edge set of Gr(sigma), comparable with ==.
struct EdgeSet {
    bool is_finite = true;
    std::vector<std::pair<int, int>> fedges;       // sorted (r,s) atom pairs
    std::vector<GraphPiece> pieces;                // canonical, sorted
    std::vector<std::pair<Rat, Rat>> iso_points;   // isolated edges (r,s), sorted

    bool member(const Edge& e) const;
    size_t piece_count() const { return pieces.size(); }
    bool operator==(const EdgeSet& o) const = default;
};

// Gr(sigma): deduplicated union of the branch cographs.
EdgeSet graph(const WPS& sys);

// I(e, sigma) = { i : s(e) in X_i, sigma_i(s(e)) = r(e) }; domain error if
// e is not an edge.
std::vector<int> index_set(const WPS& sys, const Edge& e);

// w(e) = sum of w_i(s(e)) over the index set.
Rat edge_weight(const WPS& sys, const Edge& e);

// One-sided germ of the branch family at a point: branches grouped by the
// affine germ (value, slope) of their map on the given side. Only germs
// with the stated value at s0 are of interest to callers.
struct Germ {
    Rat value;               // sigma_i(s0)
    Rat slope;               // one-sided derivative
    std::vector<int> branches;
};
enum class Side { Left, Right };

// All germs at s0 on the given side, over branches whose domain contains
// s0 (empty when s0 is at the corresponding component end).
std::vector<Germ> germs_at(const WPS& sys, const Rat& s0, Side side);

// Which sides are available at s0 within its component.
bool side_exists(const Space& s, const Rat& s0, Side side);

// A point of one graph that is not in the other (first explores a's
// pieces against b, then the converse). nullopt iff the sets are equal.
std::optional<Edge> edge_set_mismatch(const EdgeSet& a, const EdgeSet& b);

std::string edge_str(const Space& sp, const Edge& e);

}  // namespace wps
