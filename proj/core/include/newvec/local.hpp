#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "newvec/ideal.hpp"
#include "newvec/rational.hpp"

namespace newvec {

/// Congruence-subgroup descriptors at one place, identified by (kind, level).
/// full_k is the maximal compact subgroup (level 0); k1(m) fixes the last row
/// to (0,...,0,1) mod p^m; k_prime(m) relaxes the corner entry to a unit;
/// zk_prime(m) is the center-extended variant used by the averaged basis.
enum class SubgroupKind { full_k, k1, k_prime, zk_prime };

struct SubgroupDescriptor {
  SubgroupKind kind = SubgroupKind::full_k;
  unsigned level = 0;

  static SubgroupDescriptor full() { return {SubgroupKind::full_k, 0}; }
  static SubgroupDescriptor K1(unsigned m);
  static SubgroupDescriptor KPrime(unsigned m);
  static SubgroupDescriptor ZKPrime(unsigned m);

  std::string str() const;

  friend bool operator==(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
    return a.kind == b.kind && a.level == b.level;
  }
};

/// Haar volume under vol(full_k) = 1:
///   k1(m)                 -> 1 / (q^{n(m-1)} (q^n - 1))
///   k_prime(m), zk_prime(m)-> (q-1) / ((q^n - 1) q^{(m-1)(n-1)})
/// Level 0 with a non-full kind throws errc::level_out_of_range.
Rational subgroup_volume(const PrimePlace& place, unsigned rank,
                         SubgroupDescriptor descriptor);

/// 1 / subgroup_volume: the index in the maximal compact subgroup.
Rational subgroup_index(const PrimePlace& place, unsigned rank,
                        SubgroupDescriptor descriptor);

/// Local representation model: either generic with a conductor exponent, or
/// the trivial model whose fixed-space dimension is 1 at every level.
struct GenericLocalRep {
  unsigned conductor = 0;
};
struct TrivialRep {};
using RepModel = std::variant<GenericLocalRep, TrivialRep>;

/// Dimension of the level-m fixed space: C(m - c + n - 1, n - 1) for
/// Generic(c); 1 for Trivial.  Requires level >= 0.
Integer fixed_space_dimension(const RepModel& rep, unsigned rank, long level);

/// A congruence depth: a nonnegative level or infinity.
class Depth {
 public:
  static Depth infinite() { return Depth(true, 0); }
  static Depth at(std::uint64_t level) { return Depth(false, level); }

  bool is_infinite() const { return infinite_; }
  std::uint64_t value() const;
  bool covers(unsigned level) const {
    return infinite_ || level <= value_;
  }
  std::string str() const;

  friend bool operator==(const Depth& a, const Depth& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Depth(bool infinite, std::uint64_t value) : infinite_(infinite), value_(value) {}
  bool infinite_;
  std::uint64_t value_;
};

/// A formal finite linear combination, with exact rational coefficients, of
/// subgroup idempotents at a single place.  Canonicalized: terms are merged
/// by descriptor and zero coefficients dropped.
class LocalHeckeElement {
 public:
  /// sum_{i=0}^{n} (-1)^i C(n,i) e_{K1(r-i)}, dropping terms with r - i < 0
  /// and identifying level 0 with the full maximal compact subgroup.
  static LocalHeckeElement new_vector(const PrimePlace& place, unsigned rank,
                                      unsigned r);

  /// Magnitude profile of the averaged element at character conductor f:
  /// the same coefficients on zk_prime(r-i) descriptors (level 0 -> full).
  /// Requires f <= r (errc::conductor_exceeds_level).
  static LocalHeckeElement averaged_new_vector(const PrimePlace& place,
                                               unsigned rank, unsigned r,
                                               unsigned chi_conductor);

  const PrimePlace& place() const { return place_; }
  unsigned rank() const { return rank_; }
  unsigned level() const { return level_; }
  bool averaged() const { return averaged_; }
  const std::vector<std::pair<Rational, SubgroupDescriptor>>& terms() const {
    return terms_;
  }

  /// sum coefficient / volume(descriptor).
  Rational eval_at_one() const;

  /// Value at a central point of congruence depth v: the sub-sum over terms
  /// with level <= v.  Depth::infinite() reproduces eval_at_one.  Averaged
  /// elements throw errc::unsupported_basis.
  Rational eval_at_central(Depth v) const;

  /// sum coefficient * fixed_space_dimension(rep, rank, level).  Averaged
  /// elements throw errc::unsupported_basis; their trace against a matching
  /// central character equals the unaveraged trace by definition.
  Rational trace(const RepModel& rep) const;

 private:
  LocalHeckeElement(PrimePlace place, unsigned rank, unsigned level, bool averaged)
      : place_(std::move(place)), rank_(rank), level_(level), averaged_(averaged) {}

  PrimePlace place_;
  unsigned rank_;
  unsigned level_;
  bool averaged_;
  std::vector<std::pair<Rational, SubgroupDescriptor>> terms_;
};

/// Result of one normalization-bound check; ratio = lhs / rhs, exact.
struct BoundCheck {
  bool holds = false;
  Rational lhs;
  Rational rhs;
  Rational ratio;
};

/// e_new(1) >= (1/3) q^{n(r-1)} (q^n - 1) for r >= 1, and >= 1/3 for r = 0.
/// Requires rank >= 2.
BoundCheck check_bound_unfixed(const PrimePlace& place, unsigned rank, unsigned r);

/// averaged e_new(1) >= (1/6) ((q^n-1)/(q-1)) q^{(n-1)(r-1)} for r >= 1, and
/// >= 1/6 for r = 0.  Requires rank >= 2.
BoundCheck check_bound_fixed(const PrimePlace& place, unsigned rank, unsigned r);

/// The explicit dominating combination: coefficients 3 q^{-ni} on k1(r-i)
/// (unfixed) or 6 q^{-(n-1)i} on zk_prime(r-i) (fixed), i = 0..n with
/// negative levels dropped; at most n+1 terms.  Requires rank >= 2.
std::vector<std::pair<Rational, SubgroupDescriptor>> dominating_bound_local(
    const PrimePlace& place, unsigned rank, unsigned r, bool fixed);

}  // namespace newvec
