#pragma once

#include "wps/fock.hpp"

#include <complex>

namespace wps {

// Fiber data of the character space: at each fixed point a closed disc of
// radius sqrt(w(x,x)). Radii are carried squared and exact. On fixed
// intervals the generic radius function is piecewise linear; points where
// the exact self-loop weight jumps are listed separately.
struct DiscData {
    std::vector<std::pair<Point, Rat>> points;  // (fixed point, radius^2)
    struct Segment {
        Rat lo, hi;
        std::vector<Rat> xs, ys;  // generic radius^2 along the fixed interval
    };
    std::vector<Segment> segments;
};
DiscData disc_data(const WPS& sys);
// radius^2 at a concrete fixed point (domain error otherwise)
Rat disc_radius_sq(const WPS& sys, const Point& x);

// theta_{x,z}(T) = sum_n xi_n(x,...,x) z^n over the truncation; the closed
// disc |z|^2 <= w(x,x) is enforced.
std::complex<double> eval_character(const FockSpace& fs, const FourierElement& T, int atom,
                                    std::complex<double> z);

// Disc automorphism f(z) = e^{i theta} (w - z) / (1 - conj(w) z).
struct MobiusMap {
    double theta = 0.0;
    std::complex<double> w{0.0, 0.0};

    std::complex<double> apply(std::complex<double> z) const;
    static MobiusMap rotation(std::complex<double> unit);  // z -> unit * z
};
MobiusMap mobius_compose(const MobiusMap& f2, const MobiusMap& f1);  // f2 after f1
MobiusMap mobius_invert(const MobiusMap& m);

// lambda = (gamma - 1)/(gamma - h) with gamma on the upper unit circle at
// real part (1+h)/2; both come out unimodular for h in [0, 1).
std::pair<std::complex<double>, std::complex<double>> solve_zeroing_pair(double h);

// |(f . rot_gamma . f^{-1} . rot_lambda . f)(0)|.
double verify_zeroing_composition(const MobiusMap& f, const MobiusMap& finv,
                                  std::complex<double> lambda, std::complex<double> gamma);

// Per-fixed-point semi-gradedness probe: which Moebius data move the
// origin, and the correcting unimodular pair for each of them.
struct ZeroingReport {
    struct Entry {
        size_t index;
        double f0_abs;
        std::complex<double> lambda, gamma;
        double residual;
    };
    std::vector<Entry> nonzero;
    double max_residual = 0.0;
};
ZeroingReport semi_gradedness_probe(const std::vector<MobiusMap>& data, double tol = 1e-12);

}  // namespace wps
