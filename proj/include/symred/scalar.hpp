// Uniform hooks over the scalar types (exactness, conjugation, conversions)
// so polynomials and matrices can be written once and instantiated per field.
#pragma once

#include <cmath>

#include "symred/rational.hpp"

namespace symred {

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational conj(const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static double abs2(const Rational& x) { double d = symred::to_double(x); return d * d; }
    static Rational from_rational(const Rational& q) { return q; }
    static Complex to_complex(const Rational& x) { return {symred::to_double(x), 0.0}; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double conj(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static double abs2(double x) { return x * x; }
    static double from_rational(const Rational& q) { return symred::to_double(q); }
    static Complex to_complex(double x) { return {x, 0.0}; }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    static Complex conj(const Complex& x) { return std::conj(x); }
    static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
    static double abs2(const Complex& x) { return std::norm(x); }
    static Complex from_rational(const Rational& q) { return {symred::to_double(q), 0.0}; }
    static Complex to_complex(const Complex& x) { return x; }
};

template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
    static bool is_zero(const GaussianRational& x) { return x.re == 0 && x.im == 0; }
    static double abs2(const GaussianRational& x) {
        return symred::to_double(x.re * x.re + x.im * x.im);
    }
    static GaussianRational from_rational(const Rational& q) { return GaussianRational(q); }
    static Complex to_complex(const GaussianRational& x) {
        return {symred::to_double(x.re), symred::to_double(x.im)};
    }
};

}  // namespace symred
