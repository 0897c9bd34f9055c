#include "newvec/combinatorics.hpp"

namespace newvec {

Integer binomial(long m, long k) {
  if (m < 0 || k < 0 || k > m) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m),
               static_cast<unsigned long>(k));
  return r;
}

Integer alternating_sum(long n, long k) {
  if (n < 1) fail(errc::invalid_argument, "alternating_sum requires n >= 1");
  Integer total = 0;
  for (long i = 0; i <= n; ++i) {
    Integer term = binomial(n, i) * binomial(k - i + n - 1, n - 1);
    if (i % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

std::map<std::uint64_t, unsigned> factorize(const Integer& m) {
  if (sgn(m) == 0) fail(errc::invalid_argument, "factorize(0)");
  Integer rest = ::abs(m);
  std::map<std::uint64_t, unsigned> factors;
  auto strip = [&](std::uint64_t p) {
    Integer prime(static_cast<unsigned long>(p));
    Integer out;
    const unsigned e = static_cast<unsigned>(
        mpz_remove(out.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t()));
    if (e > 0) factors[p] = e;
    rest = out;
  };
  strip(2);
  strip(3);
  Integer p = 5;
  // 6k +- 1 wheel; sufficient for the small inputs this library meets.
  while (p * p <= rest) {
    if (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      strip(p.get_ui());
    }
    p += (p % 6 == 5) ? 2 : 4;
  }
  if (rest > 1) {
    if (!rest.fits_ulong_p()) {
      fail(errc::invalid_argument, "factorize: cofactor too large");
    }
    factors[static_cast<std::uint64_t>(rest.get_ui())] += 1;
  }
  return factors;
}

Integer divisor_count(const Integer& m) {
  if (sgn(m) == 0) fail(errc::degenerate_ideal, "divisor_count(0)");
  Integer count = 1;
  for (const auto& [p, e] : factorize(m)) {
    count *= Integer(e + 1);
  }
  return count;
}

namespace {

void require_tail_args(long n, long q, int shift) {
  if (n < 2 || q < 2) {
    fail(errc::invalid_argument, "odd_binomial_tail requires n, q >= 2");
  }
  if (shift != 0 && shift != 1) {
    fail(errc::invalid_argument, "odd_binomial_tail shift must be 0 or 1");
  }
}

}  // namespace

Rational odd_binomial_tail(long n, long q, int shift) {
  require_tail_args(n, q, shift);
  const Rational base = Rational::pow(Rational(Integer(1), Integer(q)), n - shift);
  Rational total = 0;
  for (long i = 1; i <= n; i += 2) {
    total += Rational(binomial(n, i)) * Rational::pow(base, i);
  }
  return total;
}

Rational odd_binomial_tail_closed(long n, long q, int shift) {
  require_tail_args(n, q, shift);
  const Rational x = Rational::pow(Rational(Integer(1), Integer(q)), n - shift);
  const Rational plus = Rational::pow(Rational(1) + x, n);
  const Rational minus = Rational::pow(Rational(1) - x, n);
  return (plus - minus) * Rational(Integer(1), Integer(2));
}

}  // namespace newvec
