#pragma once

#include "wps/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace wps {

// Finite multiplicity-free digraph with one positive factor per edge.
// Shared substrate for path-product analysis: certificate checks, cycle
// boundedness and tensor-power norms all reduce to it.
struct FiniteEdgeGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // (r, s)
    std::vector<Rat> factor;                 // per edge, > 0
    std::vector<std::vector<int>> out;       // out[v] = edge ids with s(e) = v

    void build_adjacency();
};

// Maximum product over length-n paths starting at each vertex.
// The parallel kernel splits fibers across threads; results are identical
// to the serial reference.
std::vector<Rat> max_path_product(const FiniteEdgeGraph& g, int n);
std::vector<Rat> max_path_product_serial(const FiniteEdgeGraph& g, int n);

struct PumpingCycle {
    std::vector<int> edges;  // edge ids around the cycle
    Rat product;
};

struct BoundednessResult {
    bool bounded = false;
    Rat sup = 1;  // attained sup over length >= 1 paths (1 when no edges)
    Rat inf = 1;
    std::vector<int> sup_path, inf_path;  // witnessing edge-id paths
    std::optional<PumpingCycle> pumping;
};

// One-sided mode: bounded above for all n iff every simple cycle has
// product <= 1; sup attained on vertex-simple paths.  Two-sided mode:
// bounded within [1/C, C] for all n iff every simple cycle has product
// exactly 1; sup and inf attained on vertex-simple paths.
BoundednessResult analyze_boundedness(const FiniteEdgeGraph& g, bool one_sided);

struct PathViolation {
    std::vector<int> edges;
    Rat product;
};

// Exhaustively checks all path products of length <= depth against
// [lo, hi]; deterministic first-found-by-source order. Parallel across
// source vertices with an index-ordered merge; serial reference kept.
std::optional<PathViolation> check_products_in_range(const FiniteEdgeGraph& g, int depth,
                                                     const Rat& lo, const Rat& hi);
std::optional<PathViolation> check_products_in_range_serial(const FiniteEdgeGraph& g,
                                                            int depth, const Rat& lo,
                                                            const Rat& hi);

// All vertex-simple cycles (as edge-id lists), deterministic order.
std::vector<std::vector<int>> simple_cycles(const FiniteEdgeGraph& g);

}  // namespace wps
