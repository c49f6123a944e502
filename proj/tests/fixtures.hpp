#pragma once

#include "wps/analysis.hpp"
#include "wps/system.hpp"

#include <random>

namespace wps::test {

inline Space unit_interval() {
    Space s;
    s.kind = Space::Kind::Intervals;
    s.components = {{Rat(0), Rat(1), true, true}};
    return s;
}

// X = [0,1], sigma1 = id, sigma2 = 0, with the given constant weights.
inline WPS e1_system(const Rat& w1, const Rat& w2) {
    WPS sys;
    sys.space = unit_interval();
    ClopenSubset all = ClopenSubset::all(sys.space);
    IntervalBranch b1{all, pl_identity(sys.space, all), pl_constant(sys.space, all, w1)};
    IntervalBranch b2{all, pl_constant(sys.space, all, Rat(0)),
                      pl_constant(sys.space, all, w2)};
    sys.ib = {b1, b2};
    sys.validate();
    return sys;
}

// sigma1 = 1 on [0,1/2], 2(1-x) on [1/2,1]; sigma2 = 0.
inline PLFunc di_sigma1(const Space& s) {
    return pl_from_points(s, 0, {Rat(0), Rat(1, 2), Rat(1)}, {Rat(1), Rat(1), Rat(0)});
}

// sigma = (s1, s2, s2) when tau_variant = false, tau = (s1, s1, s2) otherwise;
// all weights 1.
inline WPS different_invariants(bool tau_variant) {
    WPS sys;
    sys.space = unit_interval();
    ClopenSubset all = ClopenSubset::all(sys.space);
    PLFunc one = pl_constant(sys.space, all, Rat(1));
    IntervalBranch bs1{all, di_sigma1(sys.space), one};
    IntervalBranch bs2{all, pl_constant(sys.space, all, Rat(0)), one};
    if (tau_variant)
        sys.ib = {bs1, bs1, bs2};
    else
        sys.ib = {bs1, bs2, bs2};
    sys.validate();
    return sys;
}

// Deterministic random finite WPS: n atoms, d branches, small rational
// weights. Every branch domain is nonempty.
inline WPS random_finite_wps(std::mt19937& rng, int n_max = 6, int d_max = 4) {
    std::uniform_int_distribution<int> npts(2, n_max), nbr(1, d_max);
    int n = npts(rng), d = nbr(rng);
    WPS sys;
    sys.space.kind = Space::Kind::Finite;
    for (int i = 0; i < n; ++i) sys.space.points.push_back("p" + std::to_string(i));
    std::uniform_int_distribution<int> coin(0, 1), atom(0, n - 1), num(1, 6), den(1, 6);
    for (int i = 0; i < d; ++i) {
        FiniteBranch b;
        for (int a = 0; a < n; ++a) {
            if (coin(rng) == 0) continue;
            b.domain.indices.push_back(a);
            b.image.push_back(atom(rng));
            b.weight.push_back(Rat(num(rng), den(rng)));
        }
        if (b.domain.indices.empty()) {
            int a = atom(rng);
            b.domain.indices.push_back(a);
            b.image.push_back(atom(rng));
            b.weight.push_back(Rat(num(rng), den(rng)));
        }
        sys.fb.push_back(std::move(b));
    }
    sys.validate();
    return sys;
}

// Sparse finite system for Fock-space tests: small out-degrees keep the
// truncated fibers small.
inline WPS random_sparse_wps(std::mt19937& rng, int n_max = 4, int outdeg_max = 2) {
    std::uniform_int_distribution<int> npts(2, n_max);
    int n = npts(rng);
    std::uniform_int_distribution<int> atom(0, n - 1), num(1, 4), den(1, 4),
        deg(1, outdeg_max);
    WPS sys;
    sys.space.kind = Space::Kind::Finite;
    for (int i = 0; i < n; ++i) sys.space.points.push_back("q" + std::to_string(i));
    sys.fb.resize(static_cast<size_t>(outdeg_max));
    for (int a = 0; a < n; ++a) {
        int k = deg(rng);
        for (int i = 0; i < k; ++i) {
            auto& b = sys.fb[static_cast<size_t>(i)];
            b.domain.indices.push_back(a);
            b.image.push_back(atom(rng));
            b.weight.push_back(Rat(num(rng), den(rng)));
        }
    }
    sys.fb.erase(std::remove_if(sys.fb.begin(), sys.fb.end(),
                                [](const FiniteBranch& b) { return b.domain.empty(); }),
                 sys.fb.end());
    sys.validate();
    return sys;
}

// Random non-negative matrix with at least one positive entry per row
// pattern left unconstrained; entries in {0,...,4}.
inline std::vector<std::vector<Rat>> random_matrix(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> entry(0, 4);
    std::vector<std::vector<Rat>> A(static_cast<size_t>(n),
                                    std::vector<Rat>(static_cast<size_t>(n)));
    bool any = false;
    for (auto& row : A)
        for (auto& v : row) {
            v = entry(rng);
            if (v > 0) any = true;
        }
    if (!any) A[0][0] = 1;
    return A;
}

// Random increasing PL homeomorphism of [0,1] (identity endpoints).
inline PLFunc random_homeo01(std::mt19937& rng, const Space& s) {
    std::uniform_int_distribution<int> steps(1, 3), num(1, 9);
    int k = steps(rng);
    std::vector<Rat> xs{Rat(0)}, ys{Rat(0)};
    std::vector<Rat> innerx, innery;
    for (int i = 0; i < k; ++i) {
        innerx.push_back(Rat(num(rng), 10));
        innery.push_back(Rat(num(rng), 10));
    }
    std::sort(innerx.begin(), innerx.end());
    std::sort(innery.begin(), innery.end());
    innerx.erase(std::unique(innerx.begin(), innerx.end()), innerx.end());
    innery.erase(std::unique(innery.begin(), innery.end()), innery.end());
    size_t m = std::min(innerx.size(), innery.size());
    for (size_t i = 0; i < m; ++i) {
        xs.push_back(innerx[i]);
        ys.push_back(innery[i]);
    }
    xs.push_back(Rat(1));
    ys.push_back(Rat(1));
    return pl_from_points(s, 0, xs, ys);
}

}  // namespace wps::test
