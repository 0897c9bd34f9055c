#include "newvec/ideal.hpp"

#include <algorithm>
#include <charconv>

#include "newvec/combinatorics.hpp"

namespace newvec {

namespace {

std::uint64_t parse_u64(std::string_view text, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(errc::parse_error, std::string("malformed ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

namespace {

bool is_prime_u64(std::uint64_t n) {
  const Integer value(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(value.get_mpz_t(), 40) != 0;
}

}  // namespace

PrimePlace::PrimePlace(std::uint64_t norm, std::string label)
    : norm_(norm), label_(std::move(label)) {
  if (norm < 2) fail(errc::invalid_argument, "place norm must be >= 2");
  // q = p^f has a unique such representation; find it by integer roots.
  const Integer value(static_cast<unsigned long>(norm));
  prime_ = 0;
  for (unsigned f = 1; f <= 63; ++f) {
    Integer root;
    const bool exact = mpz_root(root.get_mpz_t(), value.get_mpz_t(), f) != 0;
    if (root < 2) break;
    if (exact && is_prime_u64(root.get_ui())) {
      prime_ = root.get_ui();
      degree_ = f;
      break;
    }
  }
  if (prime_ == 0) {
    fail(errc::invalid_argument,
         "place norm " + std::to_string(norm) + " is not a prime power");
  }
}

PrimePlace PrimePlace::rational_prime(std::uint64_t p, std::string label) {
  PrimePlace place(p, std::move(label));
  if (place.degree() != 1) {
    fail(errc::not_rational_place,
         std::to_string(p) + " is not a rational prime");
  }
  return place;
}

std::string PrimePlace::str() const {
  std::string out = std::to_string(prime_);
  if (degree_ > 1) out += ":" + std::to_string(degree_);
  if (!label_.empty()) out += "#" + label_;
  return out;
}

PrimePlace PrimePlace::parse(std::string_view text) {
  std::string label;
  if (const auto hash = text.find('#'); hash != std::string_view::npos) {
    label = std::string(text.substr(hash + 1));
    text = text.substr(0, hash);
  }
  std::uint64_t p = 0;
  unsigned f = 1;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    p = parse_u64(text.substr(0, colon), "place");
    f = static_cast<unsigned>(parse_u64(text.substr(colon + 1), "residue degree"));
    if (f == 0) fail(errc::parse_error, "residue degree must be >= 1");
  } else {
    p = parse_u64(text, "place");
  }
  Integer norm;
  mpz_ui_pow_ui(norm.get_mpz_t(), static_cast<unsigned long>(p), f);
  if (!norm.fits_ulong_p()) fail(errc::parse_error, "place norm overflows");
  PrimePlace place(norm.get_ui(), std::move(label));
  if (place.prime() != p) {
    fail(errc::parse_error,
         "'" + std::string(text) + "' must be written as p or p:f with p prime");
  }
  return place;
}

Ideal Ideal::from_factors(std::vector<std::pair<PrimePlace, unsigned>> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Ideal ideal;
  for (auto& [place, exponent] : factors) {
    if (exponent == 0) continue;
    if (!ideal.factors_.empty() && ideal.factors_.back().first == place) {
      ideal.factors_.back().second += exponent;
    } else {
      ideal.factors_.emplace_back(place, exponent);
    }
  }
  return ideal;
}

Ideal Ideal::power(const PrimePlace& place, unsigned exponent) {
  return from_factors({{place, exponent}});
}

Integer Ideal::norm() const {
  Integer total = 1;
  for (const auto& [place, exponent] : factors_) {
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(),
                  static_cast<unsigned long>(place.norm()), exponent);
    total *= power;
  }
  return total;
}

unsigned Ideal::exponent_at(const PrimePlace& place) const {
  for (const auto& [p, e] : factors_) {
    if (p == place) return e;
  }
  return 0;
}

bool Ideal::contains_place(const PrimePlace& place) const {
  return exponent_at(place) > 0;
}

bool Ideal::divides(const Ideal& other) const {
  for (const auto& [place, exponent] : factors_) {
    if (other.exponent_at(place) < exponent) return false;
  }
  return true;
}

std::vector<Ideal> Ideal::divisors() const {
  std::vector<Ideal> out;
  std::vector<unsigned> exps(factors_.size(), 0);
  while (true) {
    std::vector<std::pair<PrimePlace, unsigned>> current;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (exps[i] > 0) current.emplace_back(factors_[i].first, exps[i]);
    }
    out.push_back(from_factors(std::move(current)));
    std::size_t i = 0;
    for (; i < exps.size(); ++i) {
      if (exps[i] < factors_[i].second) {
        ++exps[i];
        std::fill(exps.begin(), exps.begin() + static_cast<long>(i), 0u);
        break;
      }
    }
    if (i == exps.size()) break;
  }
  return out;
}

Ideal Ideal::operator*(const Ideal& other) const {
  auto factors = factors_;
  factors.insert(factors.end(), other.factors_.begin(), other.factors_.end());
  return from_factors(std::move(factors));
}

Ideal Ideal::gcd(const Ideal& other) const {
  std::vector<std::pair<PrimePlace, unsigned>> factors;
  for (const auto& [place, exponent] : factors_) {
    factors.emplace_back(place, std::min(exponent, other.exponent_at(place)));
  }
  return from_factors(std::move(factors));
}

bool Ideal::coprime_to(const Ideal& other) const {
  return gcd(other).is_unit();
}

Ideal Ideal::principal(const Rational& m, const std::vector<PrimePlace>& places) {
  if (m.is_zero()) fail(errc::degenerate_ideal, "principal ideal of zero");
  std::vector<std::pair<PrimePlace, unsigned>> factors;
  for (const auto& place : places) {
    if (!place.is_rational()) {
      fail(errc::not_rational_place,
           "principal ideal needs rational primes, got " + place.str());
    }
    const long v = valuation(m, place.prime());
    if (v < 0) {
      fail(errc::not_s_integral,
           m.str() + " has negative valuation at " + place.str());
    }
    if (v > 0) factors.emplace_back(place, static_cast<unsigned>(v));
  }
  return from_factors(std::move(factors));
}

std::string Ideal::str() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [place, exponent] : factors_) {
    if (!out.empty()) out += "*";
    out += place.str();
    if (exponent > 1) out += "^" + std::to_string(exponent);
  }
  return out;
}

Ideal Ideal::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  std::string_view body = trim(text);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    body = trim(body.substr(1, body.size() - 2));
  }
  if (body.empty()) fail(errc::parse_error, "empty ideal literal");
  if (body == "1") return Ideal{};
  std::vector<std::pair<PrimePlace, unsigned>> factors;
  while (!body.empty()) {
    auto star = body.find('*');
    std::string_view part = trim(body.substr(0, star));
    body = star == std::string_view::npos ? std::string_view{}
                                          : body.substr(star + 1);
    if (part.empty()) fail(errc::parse_error, "empty factor in ideal literal");
    unsigned exponent = 1;
    if (const auto caret = part.find('^'); caret != std::string_view::npos) {
      exponent = static_cast<unsigned>(
          parse_u64(trim(part.substr(caret + 1)), "exponent"));
      part = trim(part.substr(0, caret));
      if (exponent == 0) fail(errc::parse_error, "exponent must be >= 1");
    }
    factors.emplace_back(PrimePlace::parse(part), exponent);
  }
  return from_factors(std::move(factors));
}

bool ideal_less(const Ideal& a, const Ideal& b) {
  const Integer na = a.norm();
  const Integer nb = b.norm();
  if (na != nb) return na < nb;
  return a.str() < b.str();
}

}  // namespace newvec
