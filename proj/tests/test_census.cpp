#include <doctest.h>

#include <algorithm>

#include "newvec/census.hpp"

using namespace newvec;

namespace {

Ideal make(std::vector<std::pair<std::uint64_t, unsigned>> factors) {
  std::vector<std::pair<PrimePlace, unsigned>> out;
  for (const auto& [q, e] : factors) out.emplace_back(PrimePlace(q), e);
  return Ideal::from_factors(std::move(out));
}

CensusConfig small_config() {
  CensusConfig config;
  config.rank = 2;
  config.places = {PrimePlace(2), PrimePlace(3)};
  config.r_max = 2;
  config.entries = 40;
  config.generic_fraction = Rational(Integer(3), Integer(4));
  config.seed = 12345;
  return config;
}

SpectrumEntry entry_of(Ideal conductor, bool generic) {
  SpectrumEntry entry;
  entry.conductor = std::move(conductor);
  entry.generic = generic;
  return entry;
}

}  // namespace

TEST_CASE("spectrum generation is deterministic and respects the config") {
  const auto config = small_config();
  const auto a = generate_spectrum(config);
  const auto b = generate_spectrum(config);
  REQUIRE(a.size() == config.entries);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].conductor == b[i].conductor);
    CHECK(a[i].generic == b[i].generic);
    CHECK(a[i].multiplicity == 1);
    CHECK(a[i].s_label == b[i].s_label);
  }
  const Ideal cap = config.cap_ideal();
  for (const auto& entry : a) {
    CHECK(entry.conductor.divides(cap));
  }

  auto all_trivial = config;
  all_trivial.generic_fraction = Rational(0);
  for (const auto& entry : generate_spectrum(all_trivial)) {
    CHECK_FALSE(entry.generic);
  }

  CensusConfig tiny;
  tiny.rank = 2;
  tiny.places = {PrimePlace(2)};
  tiny.r_max = 2;
  tiny.entries = 60;
  tiny.generic_fraction = Rational(1);
  tiny.seed = 5;
  const auto lattice = tiny.cap_ideal().divisors();
  for (const auto& entry : generate_spectrum(tiny)) {
    CHECK(entry.generic);
    CHECK(std::count(lattice.begin(), lattice.end(), entry.conductor) == 1);
  }
}

TEST_CASE("refined counts tally conductors exactly") {
  std::vector<SpectrumEntry> spectrum;
  for (int i = 0; i < 3; ++i) spectrum.push_back(entry_of(make({{2, 2}}), true));
  spectrum.push_back(entry_of(make({{2, 1}}), true));
  spectrum.push_back(entry_of(Ideal{}, true));

  const auto at_four = refined_count(spectrum, make({{2, 2}}), 2);
  CHECK(at_four.total == Rational(3));
  CHECK(at_four.generic_part == Rational(3));
  CHECK(at_four.trivial_part == Rational(0));
  CHECK(at_four.isolated == std::vector<std::size_t>{0, 1, 2});

  CHECK(refined_count(spectrum, make({{3, 1}}), 2).total == Rational(0));
  CHECK(refined_count(spectrum, make({{2, 1}, {3, 1}}), 2).total == Rational(0));
}

TEST_CASE("a trivial entry leaks through with the closed-form weight") {
  const std::vector<SpectrumEntry> spectrum{entry_of(Ideal{}, false)};
  const auto at_two = refined_count(spectrum, make({{2, 1}}), 2);
  CHECK(at_two.total == Rational(-1));
  CHECK(at_two.trivial_part == Rational(-1));
  CHECK(at_two.generic_part == Rational(0));
  // At rank 2, level 2 the alternating sum cancels completely.
  CHECK(refined_count(spectrum, make({{2, 2}}), 2).total == Rational(0));
}

TEST_CASE("multiplicities weight both counting measures") {
  SpectrumEntry entry = entry_of(make({{2, 1}}), true);
  entry.multiplicity = 3;
  const std::vector<SpectrumEntry> spectrum{entry};
  CHECK(refined_count(spectrum, make({{2, 1}}), 2).total == Rational(3));
  CHECK(classical_count(spectrum, make({{2, 2}}), 2) == Rational(3 * 2));
}

TEST_CASE("classical counts use the dimension law") {
  {
    const std::vector<SpectrumEntry> spectrum{entry_of(make({{2, 2}}), true)};
    CHECK(classical_count(spectrum, make({{2, 2}}), 2) == Rational(1));
  }
  {
    const std::vector<SpectrumEntry> spectrum{entry_of(make({{2, 1}}), true)};
    CHECK(classical_count(spectrum, make({{2, 2}}), 2) == Rational(2));
  }
  {
    // Conductor not dividing the level ideal: no fixed vector.
    const std::vector<SpectrumEntry> spectrum{entry_of(make({{5, 1}}), true)};
    CHECK(classical_count(spectrum, make({{2, 2}}), 2) == Rational(0));
  }
}

TEST_CASE("inversion identity") {
  auto config = small_config();
  config.generic_fraction = Rational(1);
  const auto spectrum = generate_spectrum(config);
  CHECK(inversion_check(spectrum, make({{2, 2}}), 2));
  CHECK(inversion_check(spectrum, make({{2, 1}, {3, 2}}), 2));
  CHECK(inversion_check({}, make({{2, 2}}), 2));
  {
    const std::vector<SpectrumEntry> spectrum1{entry_of(Ideal{}, true)};
    // classical = C(3,2) = 3 at rank 3, recovered via the unit divisor.
    CHECK(classical_count(spectrum1, make({{2, 1}}), 3) == Rational(3));
    CHECK(inversion_check(spectrum1, make({{2, 1}}), 3));
  }
  const std::vector<SpectrumEntry> mixed{entry_of(Ideal{}, false)};
  CHECK_THROWS_AS(inversion_check(mixed, make({{2, 1}}), 2), Error);
}

TEST_CASE("census runs are deterministic and job-count independent") {
  auto config = small_config();
  const auto report1 = run_census(config, 1);
  const auto report4 = run_census(config, 4);
  CHECK(report1.pass);
  CHECK(report_to_json(report1) == report_to_json(report4));
  CHECK(report_to_csv(report1) == report_to_csv(report4));
  CHECK(report1.rows.size() == 9);  // (2+1)(2+1) lattice points
}

TEST_CASE("fixed mode restricts the lattice to conductor multiples") {
  auto config = small_config();
  config.fixed = true;
  config.chi_conductor = make({{2, 1}});
  const auto report = run_census(config, 2);
  CHECK(report.pass);
  CHECK(report.rows.size() == 6);  // exponent at 2 ranges over {1,2}
  for (const auto& row : report.rows) {
    CHECK(config.chi_conductor->divides(row.ideal));
  }
}

TEST_CASE("config and spectrum JSON round-trips") {
  auto config = small_config();
  config.fixed = true;
  config.chi_conductor = make({{2, 1}});
  const auto parsed = CensusConfig::from_json(config.to_json());
  CHECK(parsed.rank == config.rank);
  CHECK(parsed.places == config.places);
  CHECK(parsed.generic_fraction == config.generic_fraction);
  CHECK(parsed.fixed);
  CHECK(*parsed.chi_conductor == *config.chi_conductor);

  const auto spectrum = generate_spectrum(config);
  const auto round = spectrum_from_json(spectrum_to_json(spectrum));
  REQUIRE(round.size() == spectrum.size());
  for (std::size_t i = 0; i < round.size(); ++i) {
    CHECK(round[i].conductor == spectrum[i].conductor);
    CHECK(round[i].generic == spectrum[i].generic);
    CHECK(round[i].multiplicity == spectrum[i].multiplicity);
    CHECK(round[i].s_label == spectrum[i].s_label);
  }

  CHECK_THROWS_AS(CensusConfig::from_json(nlohmann::json::object()), Error);
  auto bad = config.to_json();
  bad["generic_fraction"] = "5/4";
  CHECK_THROWS_AS(CensusConfig::from_json(bad), Error);
}
