#pragma once

#include "wps/analysis.hpp"
#include "wps/pathprod.hpp"
#include "wps/verdict.hpp"

namespace wps {

// Homeomorphism gamma : X -> Y, as an atom bijection or a PL map.
struct Homeo {
    bool is_finite = true;
    std::vector<int> table;  // X atom -> Y atom
    PLFunc pl;

    static Homeo identity(const Space& s);
    bool is_identity(const Space& s) const;
    Homeo inverted(const Space& from, const Space& to) const;
    bool valid(const Space& from, const Space& to) const;
};

// Continuous positive gap function on Gr(sigma): a value per edge
// (finite case) or PL data per graph piece (interval case).
struct HFunc {
    bool is_finite = true;
    std::vector<std::pair<std::pair<int, int>, Rat>> fvalues;  // ((r,s), H)
    struct Piece {
        GraphPiece on;
        std::vector<Rat> xs, ys;  // PL in the source coordinate, spanning [s_lo, s_hi]
        Rat eval(const Rat& s) const;
    };
    std::vector<Piece> pieces;
    std::vector<std::pair<std::pair<Rat, Rat>, Rat>> point_values;  // isolated edges

    // H(e); domain error when e is uncovered.
    Rat eval_edge(const Edge& e) const;
};

struct ConjugacyCertificate {
    Homeo gamma;
    HFunc H;
    Rat C = 1;
};

// tau^gamma = gamma^-1 tau gamma on gamma^-1(Y_i), weights u_i . gamma.
// sys lives over Y, gamma : X -> Y; the result lives over X.
WPS conjugate_system(const WPS& sys, const Homeo& gamma, const Space& xspace);

Verdict check_graph_conjugacy(const WPS& a, const WPS& b, const Homeo& gamma);

// Digraph isomorphism by backtracking with degree pruning; exhaustive, so
// nullopt means no isomorphism exists.
std::optional<std::vector<int>> find_graph_conjugacy_finite(const WPS& a, const WPS& b);

// The weighted transition function u^gamma / w on Gr(a), exact per piece,
// with one-sided limits at the branching edges and global bounds.
struct RatioPiece {
    GraphPiece on;
    Affine num, den;  // generic u^gamma- and w-weight along the piece
};
struct BranchingLimits {
    Edge edge;
    Rat value;                // u^gamma(e) / w(e)
    std::vector<Rat> limits;  // one-sided limits along each approaching piece
};
struct TransitionRatio {
    bool is_finite = true;
    std::vector<std::pair<std::pair<int, int>, Rat>> fvalues;
    std::vector<RatioPiece> pieces;
    std::vector<BranchingLimits> at_branching;
    Rat lo = 1, hi = 1;  // global bounds (Cor: 1/K <= u^gamma/w <= K)

    Rat value_at(const WPS& a, const WPS& bgamma, const Edge& e) const;
};
TransitionRatio transition_ratio(const WPS& a, const WPS& b, const Homeo& gamma);

Verdict check_branch_transition(const WPS& a, const WPS& b, const Homeo& gamma);

// Constraints forced on any continuous H by boundedness of repeated
// cycles. Fails refutes weighted-orbit conjugacy via gamma.
struct ForcedH {
    struct Locus {
        GraphPiece on;    // self-loop locus (range = id)
        Affine num, den;  // forced H = num/den = w/u^gamma generically
    };
    std::vector<Locus> loci;
    std::vector<std::pair<Edge, Rat>> values;  // isolated self-loops
    struct Cycle {
        std::vector<Edge> edges;
        Rat required_H_product;  // prod H(e_k) must equal this
    };
    std::vector<Cycle> cycles;
    Verdict verdict;
};
ForcedH forced_H_values(const WPS& a, const WPS& b, const Homeo& gamma);

// Exact certificate verification: product bound over all paths of length
// <= depth, plus an all-lengths decision when available (always on finite
// spaces; on interval spaces via periodic-piece-word scan and transient
// charged-region analysis).
Verdict verify_weighted_orbit_certificate(const WPS& a, const WPS& b,
                                          const ConjugacyCertificate& cert, int depth);

// Finite-space decision: Holds with explicit certificate (gamma, H = w/u^gamma,
// C = 1) iff the graphs are isomorphic.
struct FiniteWocResult {
    Verdict verdict;
    std::optional<ConjugacyCertificate> certificate;
};
FiniteWocResult decide_weighted_orbit_finite(const WPS& a, const WPS& b);

// Heuristic candidate homeomorphisms: branching points, fixed-set piece
// endpoints and component endpoints matched in order, both orientations.
std::vector<Homeo> candidate_homeomorphisms(const WPS& a, const WPS& b);

// When branch-transition conjugacy holds via gamma, H = w/u^gamma is
// continuous and realizes weighted-orbit conjugacy with C = 1. Returns
// nullopt when that H is not piecewise-linear (interval spaces only).
std::optional<ConjugacyCertificate> unit_certificate(const WPS& a, const WPS& b,
                                                     const Homeo& gamma);

// Exact factor g(e) = (u^gamma/w)(e) * H(e) at a concrete edge.
Rat certificate_factor(const WPS& a, const WPS& bgamma, const HFunc& H, const Edge& e);

}  // namespace wps
