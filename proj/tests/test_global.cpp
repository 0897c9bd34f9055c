#include <doctest.h>

#include "newvec/global.hpp"
#include "newvec/rng.hpp"

using namespace newvec;

namespace {

Ideal make(std::vector<std::pair<std::uint64_t, unsigned>> factors) {
  std::vector<std::pair<PrimePlace, unsigned>> out;
  for (const auto& [q, e] : factors) out.emplace_back(PrimePlace(q), e);
  return Ideal::from_factors(std::move(out));
}

Rational rat(long num, long den) { return Rational(Integer(num), Integer(den)); }

SpectrumEntry generic_entry(Ideal conductor) {
  SpectrumEntry entry;
  entry.conductor = std::move(conductor);
  entry.generic = true;
  return entry;
}

}  // namespace

TEST_CASE("assembly") {
  const auto single = GlobalNewVector::assemble(make({{2, 2}}), 2);
  REQUIRE(single.locals().size() == 1);
  CHECK(single.locals()[0].second.level() == 2);

  const auto empty = GlobalNewVector::assemble(Ideal{}, 3);
  CHECK(empty.locals().empty());
  CHECK(empty.eval_at_one() == Rational(1));

  const auto pair = GlobalNewVector::assemble(make({{2, 1}, {3, 2}}), 2);
  REQUIRE(pair.locals().size() == 2);
  CHECK(pair.locals()[0].second.level() == 1);
  CHECK(pair.locals()[1].second.level() == 2);

  CHECK_THROWS_AS(
      GlobalNewVector::assemble(make({{2, 1}}), 2, make({{2, 2}})), Error);
  CHECK_THROWS_AS(
      GlobalNewVector::assemble(make({{2, 1}}), 2, make({{3, 1}})), Error);
}

TEST_CASE("global evaluation at the identity") {
  CHECK(GlobalNewVector::assemble(make({{2, 1}}), 2).eval_at_one() == Rational(1));
  CHECK(GlobalNewVector::assemble(make({{2, 2}}), 2).eval_at_one() == Rational(7));
  CHECK(GlobalNewVector::assemble(make({{2, 1}, {3, 1}}), 2).eval_at_one() ==
        Rational(6));
  // Multiplicativity over coprime ideals.
  const Ideal a = make({{2, 2}});
  const Ideal b = make({{3, 1}, {5, 2}});
  CHECK(GlobalNewVector::assemble(a * b, 3).eval_at_one() ==
        GlobalNewVector::assemble(a, 3).eval_at_one() *
            GlobalNewVector::assemble(b, 3).eval_at_one());
}

TEST_CASE("global traces project onto the exact conductor") {
  const auto g = GlobalNewVector::assemble(make({{2, 2}}), 2);
  CHECK(g.trace(generic_entry(make({{2, 2}}))) == Rational(1));
  CHECK(g.trace(generic_entry(make({{2, 1}}))) == Rational(0));
  CHECK(g.trace(generic_entry(make({{5, 1}}))) == Rational(0));

  // Exhaustively over a divisor lattice.
  const Ideal cap = make({{2, 2}, {3, 1}});
  for (const auto& ideal : cap.divisors()) {
    const auto global = GlobalNewVector::assemble(ideal, 2);
    for (const auto& conductor : cap.divisors()) {
      CHECK(global.trace(generic_entry(conductor)) ==
            (conductor == ideal ? Rational(1) : Rational(0)));
    }
  }

  // Non-generic entries leak through the trivial dimension law.
  SpectrumEntry trivial;
  trivial.conductor = Ideal{};
  trivial.generic = false;
  CHECK(GlobalNewVector::assemble(make({{2, 1}}), 2).trace(trivial) ==
        Rational(-1));
  CHECK(GlobalNewVector::assemble(make({{2, 1}, {3, 1}}), 2).trace(trivial) ==
        Rational(1));  // (-1) * (-1)
}

TEST_CASE("traces factor over coprime supports") {
  const Ideal a = make({{2, 2}});
  const Ideal b = make({{3, 1}, {5, 1}});
  const auto joint = GlobalNewVector::assemble(a * b, 2);
  const auto left = GlobalNewVector::assemble(a, 2);
  const auto right = GlobalNewVector::assemble(b, 2);
  for (const auto& ca : a.divisors()) {
    for (const auto& cb : b.divisors()) {
      CHECK(joint.trace(generic_entry(ca * cb)) ==
            left.trace(generic_entry(ca)) * right.trace(generic_entry(cb)));
    }
  }
}

TEST_CASE("fixed-character assembly reuses magnitude profiles") {
  const auto fixed =
      GlobalNewVector::assemble(make({{2, 2}}), 2, make({{2, 1}}));
  CHECK(fixed.fixed_character());
  CHECK(fixed.eval_at_one() == Rational(1));
  // Traces match the unaveraged ones (matching central character).
  CHECK(fixed.trace(generic_entry(make({{2, 2}}))) == Rational(1));
  CHECK(fixed.trace(generic_entry(make({{2, 1}}))) == Rational(0));
  // Central profile evaluation is undefined for the averaged basis.
  MembershipProfile profile;
  profile.set(PrimePlace(2), Depth::at(1));
  CHECK_THROWS_AS(fixed.eval_h_at_profile(profile), Error);
}

TEST_CASE("profile evaluation and the dominating bound") {
  const auto g = GlobalNewVector::assemble(make({{2, 2}}), 2);
  MembershipProfile profile;
  profile.set(PrimePlace(2), Depth::infinite());
  CHECK(g.eval_h_at_profile(profile) == Rational(1));

  profile.set(PrimePlace(2), Depth::at(1));
  CHECK(g.eval_h_at_profile(profile) == rat(-5, 7));
  CHECK(g.bound_at_profile(profile) == rat(15, 16));
  CHECK(g.eval_h_at_profile(profile).abs() <= g.bound_at_profile(profile));

  MembershipProfile missing;
  CHECK_THROWS_AS(g.eval_h_at_profile(missing), Error);
  CHECK_THROWS_AS(g.bound_at_profile(missing), Error);
}

TEST_CASE("dominating expansion term structure") {
  const auto two = GlobalNewVector::assemble(make({{2, 1}}), 2).dominating_expansion();
  REQUIRE(two.size() == 2);
  CHECK(two.size() <= 3);

  const auto four =
      GlobalNewVector::assemble(make({{2, 1}, {3, 1}}), 2).dominating_expansion();
  CHECK(four.size() == 4);
  CHECK(four.size() <= 9);

  const auto unit = GlobalNewVector::assemble(Ideal{}, 2).dominating_expansion();
  REQUIRE(unit.size() == 1);
  CHECK(unit[0].first == Rational(1));
  CHECK(unit[0].second.is_unit());

  // Every divisor in the expansion divides the ideal; the weight of divisor d
  // is 3^P (N(d)/N(n))^rank.
  const Ideal ideal = make({{2, 2}, {3, 1}});
  const auto g = GlobalNewVector::assemble(ideal, 2);
  for (const auto& [coeff, divisor] : g.dominating_expansion()) {
    CHECK(divisor.divides(ideal));
    const Rational expected =
        Rational(9) *
        Rational::pow(Rational(divisor.norm(), ideal.norm()), 2);
    CHECK(coeff == expected);
  }
}

TEST_CASE("central decay comparisons") {
  SUBCASE("ideal 2^2, z = -1, S = {3}") {
    const auto g = GlobalNewVector::assemble(make({{2, 2}}), 2);
    const auto decay = g.central_decay(Rational(-1), {3});
    CHECK(decay.lhs == rat(5, 7));
    CHECK(decay.divisor_bound == Rational(1));
    CHECK(decay.holds_divisor_bound);
    CHECK(decay.holds_scaled_bound);
    CHECK(decay.restricted_divisors == 2);
    CHECK(decay.restricted_norm == 2);
  }
  SUBCASE("ideal 2^2, z = 3, S = {3}") {
    const auto g = GlobalNewVector::assemble(make({{2, 2}}), 2);
    const auto decay = g.central_decay(Rational(3), {3});
    CHECK(decay.lhs == rat(5, 7));
    CHECK(decay.divisor_bound == Rational(1));
    CHECK(decay.holds_divisor_bound);
  }
  SUBCASE("ideal 5, z = -1, S = {3}") {
    const auto g = GlobalNewVector::assemble(make({{5, 1}}), 2);
    const auto decay = g.central_decay(Rational(-1), {3});
    CHECK(decay.lhs == rat(1, 11));
    CHECK(decay.divisor_bound == rat(4, 5));
    CHECK(decay.holds_divisor_bound);
    CHECK(decay.holds_scaled_bound);
  }
  SUBCASE("errors") {
    const auto g = GlobalNewVector::assemble(make({{2, 2}}), 2);
    CHECK_THROWS_AS(g.central_decay(Rational(1), {3}), Error);
    CHECK_THROWS_AS(g.central_decay(Rational(5), {3}), Error);   // not an S-unit
    CHECK_THROWS_AS(g.central_decay(Rational(-1), {2, 3}), Error);  // ideal meets S
  }
}

TEST_CASE("random profiles stay within the corrected-side bookkeeping") {
  // Property: eval_h at an everywhere-infinite profile is exactly 1, and
  // bound_at_profile is monotone under deepening the profile.
  SplitRng rng(11);
  const Ideal ideal = make({{2, 2}, {3, 1}, {5, 1}});
  const auto g = GlobalNewVector::assemble(ideal, 2);
  MembershipProfile deep;
  for (const auto& [place, exponent] : ideal.factors()) {
    deep.set(place, Depth::infinite());
  }
  CHECK(g.eval_h_at_profile(deep) == Rational(1));
  for (int trial = 0; trial < 25; ++trial) {
    MembershipProfile shallow, deeper;
    for (const auto& [place, exponent] : ideal.factors()) {
      const std::uint64_t level = rng.below(exponent + 2);
      shallow.set(place, Depth::at(level));
      deeper.set(place, Depth::at(level + rng.below(3)));
    }
    CHECK(g.bound_at_profile(shallow) <= g.bound_at_profile(deeper));
  }
}
