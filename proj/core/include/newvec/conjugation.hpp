#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "newvec/local.hpp"
#include "newvec/rational.hpp"

namespace newvec {

/// Square integer matrix of rank >= 2 with nonzero determinant.
class IntegralMatrix {
 public:
  IntegralMatrix(unsigned dim, std::vector<Integer> row_major);
  static IntegralMatrix identity(unsigned dim);
  /// I + a E_{ij}, i != j.
  static IntegralMatrix elementary(unsigned dim, unsigned i, unsigned j,
                                   const Integer& a);
  /// Row-major comma/space separated integers; the length must be a square.
  static IntegralMatrix parse(std::string_view text);

  unsigned dim() const { return dim_; }
  const Integer& at(unsigned i, unsigned j) const {
    return entries_[i * dim_ + j];
  }

  const Integer& determinant() const { return det_; }
  bool is_scalar() const;
  IntegralMatrix mul(const IntegralMatrix& other) const;
  std::string str() const;

  friend bool operator==(const IntegralMatrix& a, const IntegralMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  unsigned dim_;
  std::vector<Integer> entries_;
  Integer det_;
};

/// Dense matrix over the rationals (used for the conjugation operator).
class RationalMatrix {
 public:
  RationalMatrix(unsigned rows, unsigned cols);
  static RationalMatrix identity(unsigned dim);

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  const Rational& at(unsigned i, unsigned j) const {
    return entries_[i * cols_ + j];
  }
  Rational& at(unsigned i, unsigned j) { return entries_[i * cols_ + j]; }

  RationalMatrix mul(const RationalMatrix& other) const;
  bool is_identity() const;
  bool is_zero() const;

 private:
  unsigned rows_, cols_;
  std::vector<Rational> entries_;
};

/// The conjugation operator M -> x M x^{-1} on the full matrix algebra, in
/// the elementary-matrix basis: an n^2 x n^2 rational matrix with entry
/// A[(i,j),(k,l)] = x[i][k] * x^{-1}[l][j].  Equals the identity iff x is
/// scalar.  Throws errc::singular_matrix for singular x.
RationalMatrix adjoint_operator(const IntegralMatrix& x);

/// Monic characteristic polynomial of a square rational matrix, ascending
/// coefficients (Faddeev-LeVerrier, exact).
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);

/// Depth of congruence of the conjugation operator to the identity at p:
/// min over entries of v_p(Ad(x) - I); infinite iff x is scalar.  Requires
/// v_p(det x) = 0 (errc::not_integral_at_p).
Depth adjoint_depth(const IntegralMatrix& x, std::uint64_t p);

/// The positive generator of the content ideal of f(t) - (t-1)^{n^2}, where
/// f is the characteristic polynomial of the conjugation operator.  Throws
/// errc::central_element for scalar input, errc::not_semisimple when the
/// operator is not semisimple over Q, and errc::not_integral_at_p when the
/// difference polynomial has non-integral coefficients.
Integer obstruction_ideal(const IntegralMatrix& gamma);

/// One sampled conjugate in the divisibility test.
struct ConjugateSample {
  IntegralMatrix conjugate;
  std::vector<std::pair<std::uint64_t, Depth>> depths;  // at obstruction primes
  bool divisibility_ok = false;
  bool control_ok = false;
};

struct ConjugationReport {
  Integer obstruction = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> obstruction_factors;
  std::vector<std::uint64_t> control_primes;  // primes away from obstruction
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned word_length = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok = false;
};

/// Conjugates gamma by `samples` seeded random unimodular matrices (bounded
/// words in elementary matrices) and checks that p^{depth} divides the
/// obstruction ideal at every obstruction prime, and that the depth is 0 at
/// the control primes.
ConjugationReport conjugation_divisibility_test(const IntegralMatrix& gamma,
                                                std::size_t samples,
                                                std::uint64_t seed,
                                                unsigned word_length = 16);

}  // namespace newvec
