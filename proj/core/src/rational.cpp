#include "newvec/rational.hpp"

namespace newvec {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::parse_error: return "ParseError";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::degenerate_ideal: return "DegenerateIdeal";
    case errc::not_s_integral: return "NotSIntegral";
    case errc::not_rational_place: return "NotRationalPlace";
    case errc::level_out_of_range: return "LevelOutOfRange";
    case errc::unsupported_basis: return "UnsupportedBasis";
    case errc::conductor_exceeds_level: return "ConductorExceedsLevel";
    case errc::conductor_does_not_divide: return "ConductorDoesNotDivide";
    case errc::missing_level: return "MissingLevel";
    case errc::central_identity: return "CentralIdentity";
    case errc::not_s_unit: return "NotSUnit";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::not_integral_at_p: return "NotIntegralAtP";
    case errc::central_element: return "CentralElement";
    case errc::not_semisimple: return "NotSemisimple";
  }
  return "UnknownError";
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) {
    fail(errc::division_by_zero, "rational with zero denominator");
  }
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(Integer(std::string(text)));
    }
    Integer num{std::string(text.substr(0, slash))};
    Integer den{std::string(text.substr(slash + 1))};
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "malformed rational literal '" + std::string(text) + "'");
  }
}

Rational Rational::abs() const {
  Rational r = *this;
  r.v_ = ::abs(r.v_);
  return r;
}

Rational Rational::pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base.is_zero() && e < 0) {
    fail(errc::division_by_zero, "negative power of zero");
  }
  Integer num, den;
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), mag);
  return e > 0 ? Rational(num, den) : Rational(den, num);
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(errc::division_by_zero, "division by zero");
  v_ /= o.v_;
  return *this;
}

long valuation(const Integer& x, std::uint64_t p) {
  if (sgn(x) == 0) fail(errc::invalid_argument, "valuation of zero");
  if (p < 2) fail(errc::invalid_argument, "valuation at p < 2");
  Integer rem;
  Integer prime(static_cast<unsigned long>(p));
  return static_cast<long>(
      mpz_remove(rem.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(const Rational& x, std::uint64_t p) {
  if (x.is_zero()) fail(errc::invalid_argument, "valuation of zero");
  return valuation(x.numerator(), p) - valuation(x.denominator(), p);
}

std::string integer_str(const Integer& n) { return n.get_str(); }

}  // namespace newvec
