#pragma once

#include "wps/correspondence.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>

namespace wps {

// Truncated Fock structure of a finite-space system: per-degree path
// enumeration and the per-source fibers on which shifts act as block
// matrices. Paths are stored source-first.
class FockSpace {
public:
    static FockSpace build(const WPS& sys, int N);

    const WPS& system() const { return sys_; }
    const EdgeSet& edges() const { return es_; }
    int truncation() const { return N_; }

    int path_count(int degree) const;
    const std::vector<std::vector<int>>& degree_paths(int degree) const;
    // index of an edge sequence within its degree, -1 if absent
    int path_index(int degree, const std::vector<int>& path) const;
    Rat path_weight_of(int degree, int index) const;
    int path_source(int degree, int index) const;
    int path_range(int degree, int index) const;

    struct Fiber {
        int source;
        // basis elements in degree-major order
        std::vector<std::pair<int, int>> basis;  // (degree, path index)
        std::map<std::pair<int, int>, int> local;
    };
    const std::vector<Fiber>& fibers() const { return fibers_; }

private:
    WPS sys_;
    EdgeSet es_;
    int N_ = 0;
    std::vector<std::vector<std::vector<int>>> paths_;  // [degree][i] = edge ids
    std::vector<std::map<std::vector<int>, int>> index_;
    std::vector<std::vector<Rat>> weights_;
    std::vector<Fiber> fibers_;
};

// Truncated element of the tensor algebra as its Fourier coefficients:
// degree 0 holds one value per atom, degree n one value per length-n path.
// `sqrt_factor` carries an exact per-edge radicand so multiplier images
// stay exact: the true coefficient at mu is value(mu) * sqrt(prod sf(mu_k)).
struct FourierElement {
    std::map<int, std::vector<RatComplex>> coeffs;
    std::optional<std::vector<Rat>> sqrt_factor;  // aligned with EdgeSet::fedges

    bool is_zero() const;
};

FourierElement fe_constant(const FockSpace& fs, const BaseFunc& f);
FourierElement fe_shift(const FockSpace& fs, int degree,
                        const std::vector<RatComplex>& coeff);
// W = S^{(1)} of the constant function 1 (.) 1.
FourierElement fe_unit_shift(const FockSpace& fs);

// Per-fiber block matrices in the orthonormalized weighted basis.
using FockMatrix = std::vector<Eigen::MatrixXcd>;
FockMatrix to_matrices(const FockSpace& fs, const FourierElement& T);

// Spectral norm: max over fibers of the largest singular value, power
// iteration with the all-ones start, convergence threshold 1e-12.
// Parallel across fibers; serial reference kept for the tests.
double op_norm(const FockSpace& fs, const FourierElement& T);
double op_norm_serial(const FockSpace& fs, const FourierElement& T);
double matrix_op_norm(const Eigen::MatrixXcd& m);

// Direct coefficient lookup (exact).
std::vector<RatComplex> fourier_coeff(const FourierElement& T, int n);
// Discrete gauge average over 2N+1 roots of unity applied to matrices;
// exact for band-limited truncations up to floating-point roundoff.
FockMatrix fourier_coeff_matrix(const FockSpace& fs, const FockMatrix& M, int n);

// Gauge action: coefficientwise lambda^n scaling. The exact overload
// requires |lambda|^2 = 1 with rational parts; the matrix overload rotates
// by a complex unit.
FourierElement gauge(const FourierElement& T, const RatComplex& lambda);
FockMatrix gauge_matrix(const FockSpace& fs, const FockMatrix& M, std::complex<double> lambda);

std::complex<double> fejer_kernel(int n, std::complex<double> lambda);
// Cesaro sum sigma_N: coefficient n scaled by (1 - n/(N+1)).
FourierElement cesaro(const FourierElement& T, int N);

int min_degree(const FourierElement& T);

// Exact coefficient convolution, truncated at the space's N.
FourierElement series_product(const FockSpace& fs, const FourierElement& T,
                              const FourierElement& U);

// Graded isomorphism on coefficients: xi_n -> V^{(x)n} xi_n. The result
// lives on the target system's Fock space over the same graph; values
// pick up the phases and the sqrt_factor picks up H.
FourierElement ad_multiplier(const FockSpace& fs, const FourierElement& T,
                             const Multiplier& V);

}  // namespace wps
