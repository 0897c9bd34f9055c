#include "newvec/local.hpp"

#include <algorithm>

#include "newvec/combinatorics.hpp"

namespace newvec {

namespace {

SubgroupDescriptor make_descriptor(SubgroupKind kind, unsigned m) {
  if (m == 0) {
    fail(errc::level_out_of_range, "level 0 requires the full subgroup kind");
  }
  return {kind, m};
}

Integer power_of_norm(const PrimePlace& place, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(place.norm()), e);
  return out;
}

}  // namespace

SubgroupDescriptor SubgroupDescriptor::K1(unsigned m) {
  return make_descriptor(SubgroupKind::k1, m);
}
SubgroupDescriptor SubgroupDescriptor::KPrime(unsigned m) {
  return make_descriptor(SubgroupKind::k_prime, m);
}
SubgroupDescriptor SubgroupDescriptor::ZKPrime(unsigned m) {
  return make_descriptor(SubgroupKind::zk_prime, m);
}

std::string SubgroupDescriptor::str() const {
  switch (kind) {
    case SubgroupKind::full_k: return "K";
    case SubgroupKind::k1: return "K1(" + std::to_string(level) + ")";
    case SubgroupKind::k_prime: return "K'(" + std::to_string(level) + ")";
    case SubgroupKind::zk_prime: return "Z*K'(" + std::to_string(level) + ")";
  }
  return "?";
}

Rational subgroup_index(const PrimePlace& place, unsigned rank,
                        SubgroupDescriptor descriptor) {
  if (rank < 1) fail(errc::invalid_argument, "rank must be >= 1");
  const unsigned m = descriptor.level;
  switch (descriptor.kind) {
    case SubgroupKind::full_k:
      if (m != 0) fail(errc::level_out_of_range, "full subgroup has level 0");
      return Rational(1);
    case SubgroupKind::k1: {
      if (m == 0) fail(errc::level_out_of_range, "k1 level must be >= 1");
      // q^{n(m-1)} (q^n - 1)
      Integer idx = power_of_norm(place, static_cast<unsigned long>(rank) * (m - 1));
      idx *= power_of_norm(place, rank) - 1;
      return Rational(idx);
    }
    case SubgroupKind::k_prime:
    case SubgroupKind::zk_prime: {
      if (m == 0) fail(errc::level_out_of_range, "k' level must be >= 1");
      // ((q^n - 1)/(q - 1)) q^{(m-1)(n-1)}
      const Integer q(static_cast<unsigned long>(place.norm()));
      Integer idx = (power_of_norm(place, rank) - 1) / (q - 1);
      idx *= power_of_norm(place, static_cast<unsigned long>(m - 1) * (rank - 1));
      return Rational(idx);
    }
  }
  fail(errc::invalid_argument, "unknown subgroup kind");
}

Rational subgroup_volume(const PrimePlace& place, unsigned rank,
                         SubgroupDescriptor descriptor) {
  return Rational(1) / subgroup_index(place, rank, descriptor);
}

Integer fixed_space_dimension(const RepModel& rep, unsigned rank, long level) {
  if (level < 0) fail(errc::invalid_argument, "level must be >= 0");
  if (std::holds_alternative<TrivialRep>(rep)) return 1;
  const auto& generic = std::get<GenericLocalRep>(rep);
  return binomial(level - static_cast<long>(generic.conductor) +
                      static_cast<long>(rank) - 1,
                  static_cast<long>(rank) - 1);
}

std::uint64_t Depth::value() const {
  if (infinite_) fail(errc::invalid_argument, "infinite depth has no value");
  return value_;
}

std::string Depth::str() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

LocalHeckeElement LocalHeckeElement::new_vector(const PrimePlace& place,
                                                unsigned rank, unsigned r) {
  if (rank < 1) fail(errc::invalid_argument, "rank must be >= 1");
  LocalHeckeElement element(place, rank, r, /*averaged=*/false);
  for (unsigned i = 0; i <= rank && i <= r; ++i) {
    const unsigned level = r - i;
    Rational coeff{binomial(rank, i)};
    if (i % 2 == 1) coeff = -coeff;
    element.terms_.emplace_back(
        std::move(coeff), level == 0 ? SubgroupDescriptor::full()
                                     : SubgroupDescriptor::K1(level));
  }
  return element;
}

LocalHeckeElement LocalHeckeElement::averaged_new_vector(const PrimePlace& place,
                                                         unsigned rank, unsigned r,
                                                         unsigned chi_conductor) {
  if (rank < 1) fail(errc::invalid_argument, "rank must be >= 1");
  if (chi_conductor > r) {
    fail(errc::conductor_exceeds_level,
         "character conductor " + std::to_string(chi_conductor) +
             " exceeds level " + std::to_string(r));
  }
  LocalHeckeElement element(place, rank, r, /*averaged=*/true);
  for (unsigned i = 0; i <= rank && i <= r; ++i) {
    const unsigned level = r - i;
    Rational coeff{binomial(rank, i)};
    if (i % 2 == 1) coeff = -coeff;
    element.terms_.emplace_back(
        std::move(coeff), level == 0 ? SubgroupDescriptor::full()
                                     : SubgroupDescriptor::ZKPrime(level));
  }
  return element;
}

Rational LocalHeckeElement::eval_at_one() const {
  Rational total = 0;
  for (const auto& [coeff, descriptor] : terms_) {
    total += coeff * subgroup_index(place_, rank_, descriptor);
  }
  return total;
}

Rational LocalHeckeElement::eval_at_central(Depth v) const {
  if (averaged_) {
    fail(errc::unsupported_basis,
         "central evaluation is not defined for averaged elements");
  }
  Rational total = 0;
  for (const auto& [coeff, descriptor] : terms_) {
    if (v.covers(descriptor.level)) {
      total += coeff * subgroup_index(place_, rank_, descriptor);
    }
  }
  return total;
}

Rational LocalHeckeElement::trace(const RepModel& rep) const {
  if (averaged_) {
    fail(errc::unsupported_basis,
         "trace of an averaged element reduces to the unaveraged trace");
  }
  Rational total = 0;
  for (const auto& [coeff, descriptor] : terms_) {
    total += coeff * Rational(fixed_space_dimension(rep, rank_, descriptor.level));
  }
  return total;
}

namespace {

BoundCheck make_bound_check(const Rational& lhs, const Rational& rhs) {
  BoundCheck check;
  check.lhs = lhs;
  check.rhs = rhs;
  check.ratio = lhs / rhs;
  check.holds = lhs >= rhs;
  return check;
}

}  // namespace

BoundCheck check_bound_unfixed(const PrimePlace& place, unsigned rank, unsigned r) {
  if (rank < 2) fail(errc::invalid_argument, "bound checks require rank >= 2");
  const Rational lhs =
      LocalHeckeElement::new_vector(place, rank, r).eval_at_one();
  const Rational third(Integer(1), Integer(3));
  const Rational rhs =
      r == 0 ? third
             : third * subgroup_index(place, rank, SubgroupDescriptor::K1(r));
  return make_bound_check(lhs, rhs);
}

BoundCheck check_bound_fixed(const PrimePlace& place, unsigned rank, unsigned r) {
  if (rank < 2) fail(errc::invalid_argument, "bound checks require rank >= 2");
  const Rational lhs =
      LocalHeckeElement::averaged_new_vector(place, rank, r, 0).eval_at_one();
  const Rational sixth(Integer(1), Integer(6));
  const Rational rhs =
      r == 0 ? sixth
             : sixth * subgroup_index(place, rank, SubgroupDescriptor::ZKPrime(r));
  return make_bound_check(lhs, rhs);
}

std::vector<std::pair<Rational, SubgroupDescriptor>> dominating_bound_local(
    const PrimePlace& place, unsigned rank, unsigned r, bool fixed) {
  if (rank < 2) fail(errc::invalid_argument, "dominating bound requires rank >= 2");
  const unsigned weight_exp = fixed ? rank - 1 : rank;
  const Rational constant = fixed ? Rational(6) : Rational(3);
  const Rational decay =
      Rational(Integer(1), Integer(static_cast<unsigned long>(place.norm())));
  std::vector<std::pair<Rational, SubgroupDescriptor>> terms;
  for (unsigned i = 0; i <= rank && i <= r; ++i) {
    const unsigned level = r - i;
    Rational coeff =
        constant * Rational::pow(decay, static_cast<long>(weight_exp) * i);
    SubgroupDescriptor descriptor =
        level == 0 ? SubgroupDescriptor::full()
                   : (fixed ? SubgroupDescriptor::ZKPrime(level)
                            : SubgroupDescriptor::K1(level));
    terms.emplace_back(std::move(coeff), descriptor);
  }
  return terms;
}

}  // namespace newvec
