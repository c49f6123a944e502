#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace wps {

// Exact scalar used throughout the library. Every geometric or
// combinatorial decision is made on these; doubles appear only in the
// spectral/Moebius layers.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct argument_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
    resource_error(const std::string& msg, long long partial)
        : std::runtime_error(msg), partial_count(partial) {}
    long long partial_count;
};

// Parses "p/q", "p", or a decimal like "0.25" (exact).
Rat parse_rat(const std::string& s);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string rat_str(const Rat& r);

double to_double(const Rat& r);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Complex number with exact rational real/imaginary parts.
struct RatComplex {
    Rat re;
    Rat im;

    RatComplex() = default;
    RatComplex(Rat r) : re(std::move(r)) {}
    RatComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    RatComplex conj() const { return {re, -im}; }
    Rat abs2() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RatComplex operator*(const Rat& a, const RatComplex& b) {
        return {a * b.re, a * b.im};
    }
    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    RatComplex& operator+=(const RatComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
};

std::string rat_complex_str(const RatComplex& z);

}  // namespace wps
