#include "newvec/global.hpp"

#include <algorithm>

#include "newvec/combinatorics.hpp"

namespace newvec {

void MembershipProfile::set(const PrimePlace& place, Depth depth) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), place,
      [](const auto& entry, const PrimePlace& p) { return entry.first < p; });
  if (it != entries_.end() && it->first == place) {
    it->second = depth;
  } else {
    entries_.insert(it, {place, depth});
  }
}

std::optional<Depth> MembershipProfile::find(const PrimePlace& place) const {
  for (const auto& [p, depth] : entries_) {
    if (p == place) return depth;
  }
  return std::nullopt;
}

Depth MembershipProfile::at(const PrimePlace& place) const {
  const auto found = find(place);
  return found ? *found : Depth::infinite();
}

std::string MembershipProfile::str() const {
  std::string out = "{";
  for (const auto& [place, depth] : entries_) {
    if (out.size() > 1) out += ",";
    out += place.str() + ":" + depth.str();
  }
  return out + "}";
}

GlobalNewVector GlobalNewVector::assemble(Ideal ideal, unsigned rank,
                                          std::optional<Ideal> chi_conductor) {
  if (rank < 1) fail(errc::invalid_argument, "rank must be >= 1");
  if (chi_conductor && !chi_conductor->divides(ideal)) {
    fail(errc::conductor_does_not_divide,
         "character conductor " + chi_conductor->str() +
             " does not divide " + ideal.str());
  }
  GlobalNewVector global;
  global.ideal_ = std::move(ideal);
  global.rank_ = rank;
  global.chi_conductor_ = std::move(chi_conductor);
  for (const auto& [place, exponent] : global.ideal_.factors()) {
    auto plain = LocalHeckeElement::new_vector(place, rank, exponent);
    if (global.chi_conductor_) {
      const unsigned f = global.chi_conductor_->exponent_at(place);
      global.locals_.emplace_back(
          place, LocalHeckeElement::averaged_new_vector(place, rank, exponent, f));
    } else {
      global.locals_.emplace_back(place, plain);
    }
    global.trace_locals_.emplace_back(place, std::move(plain));
  }
  return global;
}

Rational GlobalNewVector::eval_at_one() const {
  Rational product = 1;
  for (const auto& [place, local] : locals_) {
    product *= local.eval_at_one();
  }
  return product;
}

Rational GlobalNewVector::trace(const SpectrumEntry& entry) const {
  Rational product = 1;
  // Places dividing the ideal use the assembled local elements.
  for (const auto& [place, local] : trace_locals_) {
    const RepModel rep =
        entry.generic
            ? RepModel(GenericLocalRep{entry.conductor.exponent_at(place)})
            : RepModel(TrivialRep{});
    product *= local.trace(rep);
    if (product.is_zero()) return product;
  }
  // Places in the entry's conductor away from the ideal contribute the
  // level-0 fixed-space dimension of the maximal compact idempotent.
  for (const auto& [place, exponent] : entry.conductor.factors()) {
    if (ideal_.contains_place(place)) continue;
    const RepModel rep = entry.generic ? RepModel(GenericLocalRep{exponent})
                                       : RepModel(TrivialRep{});
    product *= Rational(fixed_space_dimension(rep, rank_, 0));
    if (product.is_zero()) return product;
  }
  return product;
}

Rational GlobalNewVector::eval_h_at_profile(const MembershipProfile& profile) const {
  Rational product = 1;
  for (const auto& [place, local] : locals_) {
    const auto depth = profile.find(place);
    if (!depth) {
      fail(errc::missing_level, "profile has no depth at place " + place.str());
    }
    product *= local.eval_at_central(*depth);
  }
  return product / eval_at_one();
}

std::vector<std::pair<Rational, Ideal>> GlobalNewVector::dominating_expansion() const {
  const auto& factors = ideal_.factors();
  std::vector<std::vector<std::pair<Rational, unsigned>>> locals;
  locals.reserve(factors.size());
  for (const auto& [place, exponent] : factors) {
    std::vector<std::pair<Rational, unsigned>> terms;
    for (const auto& [coeff, descriptor] :
         dominating_bound_local(place, rank_, exponent, fixed_character())) {
      terms.emplace_back(coeff, descriptor.level);
    }
    locals.push_back(std::move(terms));
  }
  std::vector<std::pair<Rational, Ideal>> expansion;
  std::vector<std::size_t> choice(locals.size(), 0);
  while (true) {
    Rational coeff = 1;
    std::vector<std::pair<PrimePlace, unsigned>> divisor_factors;
    for (std::size_t i = 0; i < locals.size(); ++i) {
      const auto& [c, level] = locals[i][choice[i]];
      coeff *= c;
      if (level > 0) divisor_factors.emplace_back(factors[i].first, level);
    }
    expansion.emplace_back(std::move(coeff),
                           Ideal::from_factors(std::move(divisor_factors)));
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (choice[i] + 1 < locals[i].size()) {
        ++choice[i];
        std::fill(choice.begin(), choice.begin() + static_cast<long>(i), 0u);
        break;
      }
    }
    if (i == choice.size()) break;
  }
  return expansion;
}

Rational GlobalNewVector::bound_at_profile(const MembershipProfile& profile) const {
  for (const auto& [place, exponent] : ideal_.factors()) {
    if (!profile.find(place)) {
      fail(errc::missing_level, "profile has no depth at place " + place.str());
    }
  }
  Rational total = 0;
  for (const auto& [coeff, divisor] : dominating_expansion()) {
    bool visible = true;
    for (const auto& [place, exponent] : divisor.factors()) {
      if (!profile.at(place).covers(exponent)) {
        visible = false;
        break;
      }
    }
    if (visible) total += coeff;
  }
  return total;
}

CentralDecay GlobalNewVector::central_decay(
    const Rational& z, const std::vector<std::uint64_t>& s_primes) const {
  if (z == Rational(1)) {
    fail(errc::central_identity, "z = 1 is the identity central term");
  }
  if (z.is_zero()) fail(errc::invalid_argument, "z must be nonzero");
  auto in_s = [&](std::uint64_t p) {
    return std::find(s_primes.begin(), s_primes.end(), p) != s_primes.end();
  };
  // The ideal must be coprime to S and supported on rational places.
  for (const auto& [place, exponent] : ideal_.factors()) {
    if (!place.is_rational()) {
      fail(errc::not_rational_place,
           "central decay needs rational places, got " + place.str());
    }
    if (in_s(place.prime())) {
      fail(errc::invalid_argument,
           "ideal is not coprime to S at " + place.str());
    }
  }
  // z must be an S-unit: every prime of its numerator and denominator in S.
  for (const auto& [p, e] : factorize(z.numerator())) {
    if (!in_s(p)) {
      fail(errc::not_s_unit,
           z.str() + " is not a unit at " + std::to_string(p));
    }
  }
  for (const auto& [p, e] : factorize(z.denominator())) {
    if (!in_s(p)) {
      fail(errc::not_s_unit,
           z.str() + " is not a unit at " + std::to_string(p));
    }
  }

  const Rational w = z - Rational(1);
  MembershipProfile profile;
  for (const auto& [place, exponent] : ideal_.factors()) {
    profile.set(place,
                Depth::at(static_cast<std::uint64_t>(valuation(w, place.prime()))));
  }

  CentralDecay decay;
  decay.lhs = eval_h_at_profile(profile).abs();
  decay.restricted_divisors = 1;
  decay.restricted_norm = 1;
  for (const auto& [p, e] : factorize(w.numerator())) {
    if (in_s(p)) continue;
    decay.restricted_divisors *= Integer(e + 1);
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(p), e);
    decay.restricted_norm *= power;
  }
  decay.divisor_bound = Rational(decay.restricted_divisors) *
                        Rational(decay.restricted_norm, ideal_.norm());
  decay.scaled_bound =
      Rational::pow(Rational(3), static_cast<long>(ideal_.prime_count())) *
      decay.divisor_bound;
  decay.holds_divisor_bound = decay.lhs <= decay.divisor_bound;
  decay.holds_scaled_bound = decay.lhs <= decay.scaled_bound;
  return decay;
}

}  // namespace newvec
