#pragma once

#include "wps/conjugacy.hpp"

#include <functional>

namespace wps {

// Element of the quiver correspondence C(sigma,w): a complex-valued
// function on the edge set. Exact rational real/imaginary parts; interval
// graphs carry PL data per graph piece.
struct CorrElement {
    bool is_finite = true;
    std::vector<RatComplex> fvalues;  // aligned with EdgeSet::fedges
    struct Piece {
        GraphPiece on;
        std::vector<Rat> xs;
        std::vector<RatComplex> ys;
        RatComplex eval(const Rat& s) const;
    };
    std::vector<Piece> pieces;
    std::vector<std::pair<std::pair<Rat, Rat>, RatComplex>> point_values;

    RatComplex eval(const EdgeSet& es, const Edge& e) const;
};

// (f . xi . g)(e) = f(r(e)) xi(e) g(s(e)) for functions on the base space.
using BaseFunc = std::vector<RatComplex>;  // finite: indexed by atom

// f (.) g, the generator with (f (.) g)(e) = f(r(e)) g(s(e)).
CorrElement simple_tensor(const WPS& sys, const EdgeSet& es, const BaseFunc& f,
                          const BaseFunc& g);
CorrElement module_actions(const WPS& sys, const EdgeSet& es, const BaseFunc& f,
                           const CorrElement& xi, const BaseFunc& g);

// <xi, eta>_w(x) = sum over edges with source x of conj(xi) w eta.
std::vector<RatComplex> inner_product(const WPS& sys, const EdgeSet& es,
                                      const CorrElement& xi, const CorrElement& eta);
// Interval overload: exact pointwise evaluator.
std::function<RatComplex(const Rat&)> inner_product_fn(const WPS& sys, const EdgeSet& es,
                                                       const CorrElement& xi,
                                                       const CorrElement& eta);

// ||xi||^2 = sup_x <xi,xi>(x). Exact on finite spaces; on interval spaces
// exact unless an extremum sits at an irrational critical point, in which
// case the value is bracketed to width <= 1e-12 and flagged.
struct NormSqResult {
    Rat lo, hi;
    bool exact = true;
};
NormSqResult corr_norm_sq(const WPS& sys, const EdgeSet& es, const CorrElement& xi);

// Length-n path space. Finite: explicit enumeration (resource error past
// `cap` with the partial count). Interval: piece-words with exact feasible
// source sets.
struct PathSpace {
    bool is_finite = true;
    int length = 0;
    std::vector<std::vector<int>> fpaths;  // edge-id sequences, source-first
    struct Word {
        std::vector<int> pieces;  // branch-piece ids, source-first
        IntervalSet feasible;
    };
    std::vector<Word> words;
};
PathSpace paths(const WPS& sys, int n, long long cap = 2'000'000);

Rat path_weight(const WPS& sys, const EdgeSet& es, const std::vector<int>& path);

// Simple tensors on the path space: factors are listed source-first, so
// value(mu) = prod_k factors[k](mu_k).
std::vector<RatComplex> tensor(const WPS& sys, const EdgeSet& es, const PathSpace& ps,
                               const std::vector<CorrElement>& factors);
// Fiberwise inner product on the path space.
std::vector<RatComplex> path_inner_product(const WPS& sys, const EdgeSet& es,
                                           const PathSpace& ps,
                                           const std::vector<RatComplex>& Xi,
                                           const std::vector<RatComplex>& Eta);

// Multiplier V(xi)(e) = zeta(e) xi(e), stored via |zeta|^2 = H plus an
// exact unit phase (so norms never need square roots).
struct Multiplier {
    HFunc H;
    std::vector<std::pair<std::pair<int, int>, RatComplex>> phases;  // finite edges
    RatComplex phase_at(const Edge& e) const;
};
Multiplier multiplier_from_certificate(const ConjugacyCertificate& cert);

// ||V^{(x)n}||^2 = max over length-n paths of prod |zeta|^2 u/w, by
// dynamic programming on the graph. Exact.
Rat tensor_power_norm_sq(const Multiplier& V, const WPS& source, const WPS& target, int n);
Rat tensor_power_norm_sq_serial(const Multiplier& V, const WPS& source, const WPS& target,
                                int n);

// sup_n ||V^{(x)n}||^2, decided by cycle analysis: bounded iff every cycle
// has product <= 1; the sup is attained on simple paths.
Verdict is_tensor_power_bounded(const Multiplier& V, const WPS& source, const WPS& target);

// Factor graph used by the analyses above (finite spaces).
FiniteEdgeGraph multiplier_factor_graph(const Multiplier& V, const WPS& source,
                                        const WPS& target);

}  // namespace wps
