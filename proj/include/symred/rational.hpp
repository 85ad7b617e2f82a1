// Exact scalar types: arbitrary-precision rationals, Gaussian rationals and the
// float/complex aliases used by the numeric pipelines. Rationals are backed by
// boost::multiprecision, which keeps values in lowest terms automatically.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symred {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline Rational rational_pow(Rational base, long e) {
    if (e < 0) { base = Rational(1) / base; e = -e; }
    Rational r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Parses "num", "num/den" or a decimal like "-1.25".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Integer num(digits);
        Integer den(1);
        for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(Integer(s));
}

inline std::string rational_str(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

// Best rational approximation of x with denominator <= max_den (continued fractions).
inline Rational rationalize(double x, std::int64_t max_den = 1000000) {
    if (max_den < 1) throw std::invalid_argument("rationalize: max_den < 1");
    bool neg = x < 0;
    if (neg) x = -x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double y = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(y);
        if (fl > 9.0e17) break;
        std::int64_t a = static_cast<std::int64_t>(fl);
        if (q0 + a * q1 > max_den && q1 > 0) break;
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1 > max_den) break;
        double rem = y - fl;
        if (rem < 1e-15 * std::max(1.0, y)) break;
        y = 1.0 / rem;
    }
    Rational r(p1, q1 == 0 ? 1 : q1);
    return neg ? Rational(-r) : r;
}

// Element of Q(i); used for exact dihedral averaging in complex coordinates.
struct GaussianRational {
    Rational re, im;
    GaussianRational() : re(0), im(0) {}
    GaussianRational(int v) : re(v), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero Gaussian rational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    GaussianRational conj() const { return {re, -im}; }
};

}  // namespace symred
