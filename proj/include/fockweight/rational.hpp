#pragma once

// Exact scalars: rationals backed by GMP and Gaussian rationals built on them.

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace fockweight {

using Rational = mpq_class;

/// Renders `p/q`, or `p` when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts `p`, `-p`, `p/q`. Throws std::invalid_argument on malformed input
/// or zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Integer power with a signed exponent; base must be non-zero when exp < 0.
Rational pow(const Rational& base, long exponent);

/// Exact square root if q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

/// re + i*im with exact rational parts.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() : re(0), im(0) {}
  Gaussian(Rational r) : re(std::move(r)), im(0) {}  // NOLINT: intended
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  /// Throws std::domain_error on division by zero.
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

std::string to_string(const Gaussian& z);
std::complex<double> to_complex(const Gaussian& z);

// Uniform zero tests for the scalar modes an operator may carry.
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Gaussian& z) { return z.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }

inline Rational conj(const Rational& q) { return q; }
inline Gaussian conj(const Gaussian& z) { return z.conj(); }
inline double conj(double x) { return x; }
inline std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }

}  // namespace fockweight
