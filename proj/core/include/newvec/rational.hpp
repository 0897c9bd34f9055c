#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "newvec/errors.hpp"

namespace newvec {

using Integer = mpz_class;

/// Exact rational number.  Always stored in lowest terms with positive
/// denominator; all arithmetic is exact.  Division by zero throws
/// errc::division_by_zero instead of invoking GMP's abort path.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den);

  /// Parses "a" or "a/b".
  static Rational parse(std::string_view text);

  const Integer numerator() const { return v_.get_num(); }
  const Integer denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational abs() const;

  /// base^e for integer e (e < 0 requires a nonzero base).
  static Rational pow(const Rational& base, long e);

  /// Canonical exact rendering: "n" when integral, otherwise "a/b".
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) > 0;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) >= 0;
  }

 private:
  mpq_class v_;
};

/// p-adic valuation of a nonzero rational at a rational prime p.
long valuation(const Rational& x, std::uint64_t p);
long valuation(const Integer& x, std::uint64_t p);

/// Canonical exact rendering of an integer.
std::string integer_str(const Integer& n);

}  // namespace newvec
