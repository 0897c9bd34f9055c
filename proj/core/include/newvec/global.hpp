#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newvec/ideal.hpp"
#include "newvec/local.hpp"

namespace newvec {

/// A synthetic automorphic representation as the counting measures see it:
/// a conductor ideal, a genericity flag, an opaque S-component label, and a
/// multiplicity (1 under multiplicity one).
struct SpectrumEntry {
  Ideal conductor;
  bool generic = true;
  std::uint64_t multiplicity = 1;
  std::string s_label;
};

/// Per-place congruence depths of a group element: the largest m with the
/// element in K(p^m).  Unlisted places default to infinite depth; evaluation
/// against a global element requires explicit depths at its dividing places.
class MembershipProfile {
 public:
  MembershipProfile() = default;

  void set(const PrimePlace& place, Depth depth);
  std::optional<Depth> find(const PrimePlace& place) const;
  Depth at(const PrimePlace& place) const;  // infinite when unset

  const std::vector<std::pair<PrimePlace, Depth>>& entries() const {
    return entries_;
  }
  std::string str() const;

 private:
  std::vector<std::pair<PrimePlace, Depth>> entries_;  // sorted by place
};

/// Exact data of one central-decay comparison.  divisor_bound is
/// d(z-1) * N(z-1) / N(ideal) with d and N taken over places outside S;
/// scaled_bound multiplies in 3^{P(ideal)}.
struct CentralDecay {
  Rational lhs;
  Rational divisor_bound;
  Rational scaled_bound;
  bool holds_divisor_bound = false;
  bool holds_scaled_bound = false;
  Integer restricted_divisors;  // d(z-1) outside S
  Integer restricted_norm;      // N(z-1) outside S
};

/// The global test element over an ideal: one local component per dividing
/// place, built at the place's exponent (averaged magnitude profiles when a
/// fixed character conductor is supplied), implicitly extended by maximal
/// compact idempotents elsewhere.
class GlobalNewVector {
 public:
  /// chi_conductor, when present, must divide the ideal
  /// (errc::conductor_does_not_divide).
  static GlobalNewVector assemble(Ideal ideal, unsigned rank,
                                  std::optional<Ideal> chi_conductor = {});

  const Ideal& ideal() const { return ideal_; }
  unsigned rank() const { return rank_; }
  bool fixed_character() const { return chi_conductor_.has_value(); }
  const std::optional<Ideal>& chi_conductor() const { return chi_conductor_; }
  const std::vector<std::pair<PrimePlace, LocalHeckeElement>>& locals() const {
    return locals_;
  }

  /// Product of local eval_at_one values; 1 for the unit ideal.
  Rational eval_at_one() const;

  /// Product over all places of local traces; places away from the ideal
  /// contribute the level-0 fixed-space dimension.  For a generic entry this
  /// is 1 iff the entry's conductor equals the ideal, else 0.  In fixed mode
  /// the trace equals the unaveraged trace (matching central character).
  Rational trace(const SpectrumEntry& entry) const;

  /// Product of local central evaluations at the profile's depths, divided
  /// by eval_at_one.  Throws errc::missing_level when the profile has no
  /// explicit depth at a dividing place.
  Rational eval_h_at_profile(const MembershipProfile& profile) const;

  /// The dominating function evaluated at the profile: the sum of expansion
  /// coefficients over divisors d visible at the profile (depth >= exponent
  /// of d at every place).
  Rational bound_at_profile(const MembershipProfile& profile) const;

  /// The product expansion of the dominating combination as (coefficient,
  /// divisor) pairs: coefficient 3^{P} prod q^{-n i_p} (unfixed) or
  /// 6^{P} prod q^{-(n-1) i_p} (fixed); at most (rank+1)^{P} terms.
  std::vector<std::pair<Rational, Ideal>> dominating_expansion() const;

  /// Central-term decay data for a rational S-unit z != 1 (F = Q): compares
  /// |h(z)| against the divisor bound with and without the 3^{P} factor.
  /// s_primes lists the rational primes in S; the ideal must avoid them.
  CentralDecay central_decay(const Rational& z,
                             const std::vector<std::uint64_t>& s_primes) const;

 private:
  GlobalNewVector() = default;

  Ideal ideal_;
  unsigned rank_ = 1;
  std::optional<Ideal> chi_conductor_;
  std::vector<std::pair<PrimePlace, LocalHeckeElement>> locals_;
  // Unaveraged companions, used for traces in fixed mode.
  std::vector<std::pair<PrimePlace, LocalHeckeElement>> trace_locals_;
};

}  // namespace newvec
