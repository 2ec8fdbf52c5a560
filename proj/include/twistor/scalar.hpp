#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace twistor {

using Rational = boost::multiprecision::cpp_rational;

// Complex number with exact rational real and imaginary parts. Supports the
// field operations; no square roots, so it stays closed under +,-,*,/.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(int r) : re(r), im(0) {}
    GaussianRational(int r, int i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero GaussianRational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

using Complex = std::complex<double>;

// Scalar concept used by the templated operators: either GaussianRational
// (exact lane) or std::complex<double> (floating lane).
template <class C>
inline constexpr bool is_exact_v = std::is_same_v<C, GaussianRational>;

inline bool scalar_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool scalar_is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }

inline double scalar_abs(const GaussianRational& c) { return std::abs(c.to_complex()); }
inline double scalar_abs(const Complex& c) { return std::abs(c); }

inline Complex to_floating(const GaussianRational& c) { return c.to_complex(); }
inline Complex to_floating(const Complex& c) { return c; }

inline GaussianRational imaginary_unit(const GaussianRational&) { return {0, 1}; }
inline Complex imaginary_unit(const Complex&) { return {0.0, 1.0}; }

} // namespace twistor
