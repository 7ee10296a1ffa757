#pragma once

// Exact scalars: arbitrary-precision integers and rationals (GMP backed)
// and Gaussian rationals for complex matrix entries.

#include <boost/multiprecision/gmp.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace pardyn {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);
/// Parses "p", "-p", "p/q". Throws ValidationError on malformed input or q = 0.
Rational parse_rational(std::string_view text);

/// Complex number with exact rational real and imaginary parts.
class Complex {
public:
  Complex() = default;
  Complex(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Complex(long long re) : re_(re) {}            // NOLINT(google-explicit-constructor)
  Complex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  /// |z|^2, always a nonnegative rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Complex conj() const { return {re_, -im_}; }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Rational& s) {
    re_ *= s;
    im_ *= s;
    return *this;
  }
  /// Throws std::domain_error on division by zero.
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace pardyn
