#pragma once

#include "wps/graph.hpp"

#include <functional>

namespace wps {

// Exact subset of the base space: atoms for finite spaces, an interval
// union (possibly with isolated points) otherwise.
struct SubsetDesc {
    std::vector<int> atoms;
    IntervalSet set;
    bool empty() const { return atoms.empty() && set.is_empty(); }
    std::string str(const Space& s) const;
};

// C(I): points of the common domain where all maps indexed by I agree.
// Argument error when |I| < 2.
SubsetDesc coinciding_set(const WPS& sys, const std::vector<int>& I);

// B(I): topological boundary of C(I) within the space (empty for finite
// spaces; a finite point set otherwise).
SubsetDesc boundary(const WPS& sys, const std::vector<int>& I);

SubsetDesc branching_points(const WPS& sys);
std::vector<Edge> branching_edges(const WPS& sys);

// Fix(sigma) = union over i of { x in X_i : sigma_i(x) = x }.
SubsetDesc fixed_points(const WPS& sys);

// An edge where the induced weight is discontinuous, with its one-sided
// limits along the approaching graph pieces.
struct WeightJump {
    Edge edge;
    Rat value;
    std::vector<Rat> limits;
};
std::vector<WeightJump> weight_discontinuities(const WPS& sys);

// Exact global bounds of the induced edge weight.
std::pair<Rat, Rat> weight_bounds(const WPS& sys);

bool is_well_supported(const WPS& sys);

// Divides each weight by w_sigma. Precondition error when not
// well-supported; domain error when a normalized weight fails to stay
// piecewise-linear (interval spaces only; cannot happen on finite spaces).
WPS normalize(const WPS& sys);

// w_sigma(x) = sum of w_i(x) over branches whose domain contains x.
Rat weight_function(const WPS& sys, const Point& x);

// P(sigma,w)(f)(x) = sum_i w_i(x) f(sigma_i(x)). The finite overload maps
// tables to tables; the interval overload returns an exact evaluator
// (the result need not be piecewise-linear).
std::vector<Rat> positive_operator(const WPS& sys, const std::vector<Rat>& f);
std::function<Rat(const Rat&)> positive_operator(const WPS& sys, const PLFunc& f);

}  // namespace wps
