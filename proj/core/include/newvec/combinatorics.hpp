#pragma once

#include <cstdint>
#include <map>

#include "newvec/rational.hpp"

namespace newvec {

/// Binomial coefficient with the vanishing convention: C(m, k) = 0 whenever
/// m < 0, k < 0 or k > m.  (Not the generalized negative-argument binomial;
/// the alternating-sum identity below is false under that extension.)
Integer binomial(long m, long k);

/// The literal sum  sum_{i=0}^{n} (-1)^i C(n,i) C(k-i+n-1, n-1).
/// Evaluates to 1 when k = 0 and to 0 otherwise; callers assert that.
/// Requires n >= 1.
Integer alternating_sum(long n, long k);

/// Number of positive divisors of |m|.  m = 0 throws errc::degenerate_ideal.
Integer divisor_count(const Integer& m);

/// Prime factorization of |m| by trial division (m != 0).
std::map<std::uint64_t, unsigned> factorize(const Integer& m);

/// sum over odd i in [1, n] of C(n, i) * q^{-i*(n-shift)}, exact.
/// shift selects the exponent base: 0 -> -n, 1 -> 1-n.  Requires n, q >= 2.
Rational odd_binomial_tail(long n, long q, int shift);

/// Closed form (1/2)((1 + q^{shift-n})^n - (1 - q^{shift-n})^n); agrees with
/// the direct sum and is kept as an independent evaluation route.
Rational odd_binomial_tail_closed(long n, long q, int shift);

}  // namespace newvec
