#pragma once

#include "wps/space.hpp"

#include <optional>
#include <vector>

namespace wps {

struct Affine {
    Rat a0, a1;  // x -> a0 + a1*x
    Rat eval(const Rat& x) const { return a0 + a1 * x; }
    bool operator==(const Affine& o) const = default;
};

// Restriction of a piecewise-linear function to one space component:
// strictly increasing breakpoints spanning the component, values at the
// breakpoints, affine interpolation in between. A degenerate component
// is a single breakpoint.
struct PLComponent {
    int component = -1;  // index into the space's components
    std::vector<Rat> xs;
    std::vector<Rat> ys;

    Rat lo() const { return xs.front(); }
    Rat hi() const { return xs.back(); }
    bool contains(const Rat& x) const { return x >= lo() && x <= hi(); }
    Rat eval(const Rat& x) const;
    size_t piece_count() const { return xs.size() > 1 ? xs.size() - 1 : 0; }
    Affine piece(size_t i) const;  // affine map on [xs[i], xs[i+1]]
    void validate() const;
    bool operator==(const PLComponent& o) const = default;
};

struct PLFunc {
    ClopenSubset domain;              // component indices
    std::vector<PLComponent> comps;   // parallel to domain.indices

    Rat eval(const Rat& x) const;     // domain error if x outside
    bool defined_at(const Rat& x) const;
    const PLComponent* comp_at(const Rat& x) const;
    void validate(const Space& s) const;

    Rat min_value() const;
    Rat max_value() const;
    bool operator==(const PLFunc& o) const = default;
};

PLFunc pl_identity(const Space& s, const ClopenSubset& dom);
PLFunc pl_constant(const Space& s, const ClopenSubset& dom, const Rat& value);
// Single-component helper for [a,b]-style spaces.
PLFunc pl_from_points(const Space& s, int component, std::vector<Rat> xs, std::vector<Rat> ys);

// f after g (exact). Breakpoints of the result refine g's with the
// g-preimages of f's. Domain error when range(g) escapes domain(f).
PLFunc pl_compose(const PLFunc& f, const PLFunc& g);

// Exact pointwise sum on the common domain (breakpoint refinement).
PLFunc pl_add(const PLFunc& f, const PLFunc& g);
PLFunc pl_scale(const PLFunc& f, const Rat& c);

// Exact {x : f(x) = g(x)} on the common domain, as a closed set.
IntervalSet pl_solve_equal(const PLFunc& f, const PLFunc& g);

// Continuous bijection with PL inverse, from `from` onto `to`.
bool pl_is_homeomorphism(const PLFunc& f, const Space& from, const Space& to);
// Precondition: pl_is_homeomorphism(f, from, to).
PLFunc pl_invert(const PLFunc& f, const Space& from, const Space& to);

// Exact image of a set under f (pieces of `set` outside dom(f) are ignored).
IntervalSet pl_image(const PLFunc& f, const IntervalSet& set);

// Restriction of f to the components listed in `dom` (must be a subset).
PLFunc pl_restrict(const PLFunc& f, const ClopenSubset& dom);

// Exact function equality on the common domain.
bool pl_equal_on_common(const PLFunc& f, const PLFunc& g);

}  // namespace wps
