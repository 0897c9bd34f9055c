#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "newvec/rational.hpp"

namespace newvec {

/// A finite place, modeled by its residue norm q = p^f (a prime power) plus
/// an opaque label distinguishing places of equal norm.  All local formulas
/// in this library depend on the place only through q.
class PrimePlace {
 public:
  /// Validates that norm is a prime power and derives (p, f).
  explicit PrimePlace(std::uint64_t norm, std::string label = {});

  /// A degree-1 place of the rationals (norm = p, p prime).
  static PrimePlace rational_prime(std::uint64_t p, std::string label = {});

  std::uint64_t norm() const { return norm_; }
  std::uint64_t prime() const { return prime_; }
  unsigned degree() const { return degree_; }
  const std::string& label() const { return label_; }
  bool is_rational() const { return degree_ == 1; }

  /// "p" for degree 1, "p:f" otherwise, with "#label" appended when labeled.
  std::string str() const;
  static PrimePlace parse(std::string_view text);

  friend bool operator==(const PrimePlace& a, const PrimePlace& b) {
    return a.norm_ == b.norm_ && a.label_ == b.label_;
  }
  friend bool operator<(const PrimePlace& a, const PrimePlace& b) {
    return a.norm_ != b.norm_ ? a.norm_ < b.norm_ : a.label_ < b.label_;
  }

 private:
  std::uint64_t norm_;
  std::uint64_t prime_;
  unsigned degree_;
  std::string label_;
};

/// An integral ideal of the ring of S-integers: a finite factorization over
/// places with strictly positive exponents.  The empty factorization is the
/// unit ideal.  Immutable value type.
class Ideal {
 public:
  Ideal() = default;  // unit ideal

  /// Zero exponents are dropped; repeated places have exponents added.
  static Ideal from_factors(std::vector<std::pair<PrimePlace, unsigned>> factors);
  static Ideal power(const PrimePlace& place, unsigned exponent);

  const std::vector<std::pair<PrimePlace, unsigned>>& factors() const {
    return factors_;
  }
  bool is_unit() const { return factors_.empty(); }

  Integer norm() const;
  std::size_t prime_count() const { return factors_.size(); }
  unsigned exponent_at(const PrimePlace& place) const;
  bool contains_place(const PrimePlace& place) const;

  /// True iff this divides other (exponent-wise <= at every place).
  bool divides(const Ideal& other) const;

  /// All divisors; count = prod (r_p + 1).  Canonically ordered: ascending
  /// mixed-radix over the sorted place list.
  std::vector<Ideal> divisors() const;

  Ideal operator*(const Ideal& other) const;
  Ideal gcd(const Ideal& other) const;
  bool coprime_to(const Ideal& other) const;

  /// For F = Q: the part of the factorization of m supported on the listed
  /// places (which must be rational primes).  v_p(m) < 0 at a listed place
  /// throws errc::not_s_integral; m = 0 throws errc::degenerate_ideal.
  static Ideal principal(const Rational& m, const std::vector<PrimePlace>& places);

  /// "2^2*3" style literal; the unit ideal renders as "1".
  std::string str() const;
  static Ideal parse(std::string_view text);

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

 private:
  std::vector<std::pair<PrimePlace, unsigned>> factors_;  // sorted by place
};

/// Canonical total order for report rows: by norm, then by literal.
bool ideal_less(const Ideal& a, const Ideal& b);

}  // namespace newvec
