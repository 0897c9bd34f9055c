#include "newvec/census.hpp"

#include <algorithm>

#include "newvec/combinatorics.hpp"
#include "newvec/parallel.hpp"
#include "newvec/rng.hpp"

namespace newvec {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Ideal CensusConfig::cap_ideal() const {
  std::vector<std::pair<PrimePlace, unsigned>> factors;
  for (const auto& place : places) factors.emplace_back(place, r_max);
  return Ideal::from_factors(std::move(factors));
}

CensusConfig CensusConfig::from_json(const json& j) {
  CensusConfig config;
  try {
    config.rank = j.at("rank").get<unsigned>();
    if (config.rank < 1) fail(errc::invalid_argument, "rank must be >= 1");
    for (const auto& pj : j.at("places")) {
      const std::uint64_t q = pj.at("q").get<std::uint64_t>();
      std::string label = pj.value("label", std::string{});
      PrimePlace place(q, std::move(label));
      if (pj.contains("f") && pj.at("f").get<unsigned>() != place.degree()) {
        fail(errc::invalid_argument,
             "place q=" + std::to_string(q) + " has residue degree " +
                 std::to_string(place.degree()) + ", not " +
                 std::to_string(pj.at("f").get<unsigned>()));
      }
      config.places.push_back(std::move(place));
    }
    if (config.places.empty()) {
      fail(errc::invalid_argument, "census needs at least one place");
    }
    config.r_max = j.at("r_max").get<unsigned>();
    config.entries = j.at("entries").get<unsigned>();
    if (config.entries < 1) fail(errc::invalid_argument, "entries must be >= 1");
    config.generic_fraction =
        Rational::parse(j.at("generic_fraction").get<std::string>());
    if (config.generic_fraction < Rational(0) ||
        config.generic_fraction > Rational(1)) {
      fail(errc::invalid_argument, "generic_fraction must lie in [0,1]");
    }
    config.seed = j.at("seed").get<std::uint64_t>();
    const std::string mode = j.value("mode", std::string("unfixed"));
    if (mode == "fixed") {
      config.fixed = true;
      config.chi_conductor = Ideal::parse(j.at("chi_conductor").get<std::string>());
      if (!config.chi_conductor->divides(config.cap_ideal())) {
        fail(errc::conductor_does_not_divide,
             "chi_conductor must divide the cap ideal");
      }
    } else if (mode != "unfixed") {
      fail(errc::invalid_argument, "mode must be 'unfixed' or 'fixed'");
    }
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string("census config: ") + e.what());
  }
  return config;
}

ordered_json CensusConfig::to_json() const {
  ordered_json j;
  j["rank"] = rank;
  j["places"] = ordered_json::array();
  for (const auto& place : places) {
    ordered_json pj;
    pj["q"] = place.norm();
    pj["f"] = place.degree();
    if (!place.label().empty()) pj["label"] = place.label();
    j["places"].push_back(pj);
  }
  j["r_max"] = r_max;
  j["entries"] = entries;
  j["generic_fraction"] = generic_fraction.str();
  j["seed"] = seed;
  j["mode"] = fixed ? "fixed" : "unfixed";
  if (chi_conductor) j["chi_conductor"] = chi_conductor->str();
  return j;
}

std::vector<SpectrumEntry> generate_spectrum(const CensusConfig& config) {
  SplitRng rng(config.seed);
  const std::uint64_t frac_den = config.generic_fraction.denominator().get_ui();
  const std::uint64_t frac_num = config.generic_fraction.numerator().get_ui();
  std::vector<SpectrumEntry> spectrum;
  spectrum.reserve(config.entries);
  for (unsigned id = 0; id < config.entries; ++id) {
    SpectrumEntry entry;
    std::vector<std::pair<PrimePlace, unsigned>> factors;
    for (const auto& place : config.places) {
      const unsigned exponent =
          static_cast<unsigned>(rng.below(config.r_max + 1));
      if (exponent > 0) factors.emplace_back(place, exponent);
    }
    entry.conductor = Ideal::from_factors(std::move(factors));
    entry.generic = rng.chance(frac_num, frac_den);
    entry.multiplicity = 1;
    entry.s_label = "s" + std::to_string(id % 8);
    spectrum.push_back(std::move(entry));
  }
  return spectrum;
}

ordered_json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum) {
  ordered_json out = ordered_json::array();
  for (const auto& entry : spectrum) {
    ordered_json j;
    ordered_json conductor = ordered_json::object();
    for (const auto& [place, exponent] : entry.conductor.factors()) {
      conductor[place.str()] = exponent;
    }
    j["conductor"] = conductor;
    j["generic"] = entry.generic;
    j["multiplicity"] = entry.multiplicity;
    j["s_label"] = entry.s_label;
    out.push_back(j);
  }
  return out;
}

std::vector<SpectrumEntry> spectrum_from_json(const json& j) {
  std::vector<SpectrumEntry> spectrum;
  try {
    for (const auto& ej : j) {
      SpectrumEntry entry;
      std::vector<std::pair<PrimePlace, unsigned>> factors;
      for (const auto& [key, value] : ej.at("conductor").items()) {
        factors.emplace_back(PrimePlace::parse(key), value.get<unsigned>());
      }
      entry.conductor = Ideal::from_factors(std::move(factors));
      entry.generic = ej.at("generic").get<bool>();
      entry.multiplicity = ej.value("multiplicity", std::uint64_t{1});
      if (entry.multiplicity < 1) {
        fail(errc::invalid_argument, "multiplicity must be >= 1");
      }
      entry.s_label = ej.value("s_label", std::string{});
      spectrum.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string("spectrum file: ") + e.what());
  }
  return spectrum;
}

RefinedCount refined_count(const std::vector<SpectrumEntry>& spectrum,
                           const Ideal& ideal, unsigned rank,
                           const std::optional<Ideal>& chi_conductor) {
  const GlobalNewVector global =
      GlobalNewVector::assemble(ideal, rank, chi_conductor);
  RefinedCount count;
  count.total = 0;
  count.generic_part = 0;
  count.trivial_part = 0;
  for (std::size_t id = 0; id < spectrum.size(); ++id) {
    const auto& entry = spectrum[id];
    const Rational term =
        Rational(Integer(static_cast<unsigned long>(entry.multiplicity))) *
        global.trace(entry);
    if (term.is_zero()) continue;
    count.total += term;
    if (entry.generic) {
      count.generic_part += term;
      count.isolated.push_back(id);
    } else {
      count.trivial_part += term;
    }
  }
  return count;
}

Rational classical_count(const std::vector<SpectrumEntry>& spectrum,
                         const Ideal& ideal, unsigned rank) {
  Rational total = 0;
  for (const auto& entry : spectrum) {
    Rational weight(Integer(static_cast<unsigned long>(entry.multiplicity)));
    // Dimension factors at the ideal's places...
    for (const auto& [place, exponent] : ideal.factors()) {
      const RepModel rep =
          entry.generic
              ? RepModel(GenericLocalRep{entry.conductor.exponent_at(place)})
              : RepModel(TrivialRep{});
      weight *= Rational(fixed_space_dimension(rep, rank, exponent));
      if (weight.is_zero()) break;
    }
    // ...and level-0 factors where the conductor lives away from the ideal.
    if (!weight.is_zero() && entry.generic) {
      for (const auto& [place, exponent] : entry.conductor.factors()) {
        if (ideal.contains_place(place)) continue;
        weight *= Rational(fixed_space_dimension(
            RepModel(GenericLocalRep{exponent}), rank, 0));
        if (weight.is_zero()) break;
      }
    }
    total += weight;
  }
  return total;
}

bool inversion_check(const std::vector<SpectrumEntry>& spectrum,
                     const Ideal& ideal, unsigned rank) {
  for (const auto& entry : spectrum) {
    if (!entry.generic) {
      fail(errc::invalid_argument, "inversion_check needs a generic spectrum");
    }
  }
  const Rational classical = classical_count(spectrum, ideal, rank);
  Rational recovered = 0;
  for (const auto& divisor : ideal.divisors()) {
    const Rational refined = refined_count(spectrum, divisor, rank).total;
    if (refined.is_zero()) continue;
    Rational weight = 1;
    for (const auto& [place, exponent] : ideal.factors()) {
      weight *= Rational(binomial(
          static_cast<long>(exponent) - static_cast<long>(divisor.exponent_at(place)) +
              static_cast<long>(rank) - 1,
          static_cast<long>(rank) - 1));
    }
    recovered += refined * weight;
  }
  return classical == recovered;
}

namespace {

/// Closed form of the trivial-law leakage of one entry at one ideal:
/// prod over dividing places of (-1)^{r_p} C(rank-1, r_p).
Rational trivial_leakage_closed_form(const Ideal& ideal, unsigned rank) {
  Rational product = 1;
  for (const auto& [place, exponent] : ideal.factors()) {
    Rational factor{binomial(static_cast<long>(rank) - 1,
                             static_cast<long>(exponent))};
    if (exponent % 2 == 1) factor = -factor;
    product *= factor;
  }
  return product;
}

}  // namespace

CensusReport run_census(const CensusConfig& config,
                        const std::vector<SpectrumEntry>& spectrum,
                        unsigned jobs) {
  CensusReport report;
  report.config = config;
  report.spectrum_size = spectrum.size();

  std::vector<Ideal> lattice = config.cap_ideal().divisors();
  if (config.chi_conductor) {
    std::erase_if(lattice, [&](const Ideal& ideal) {
      return !config.chi_conductor->divides(ideal);
    });
  }
  std::sort(lattice.begin(), lattice.end(), ideal_less);

  std::vector<SpectrumEntry> generic_only;
  for (const auto& entry : spectrum) {
    if (entry.generic) generic_only.push_back(entry);
  }

  // Refined generic totals over the full divisor lattice, computed once and
  // reused by every row's inversion check (same sums, just memoized).
  std::vector<Ideal> full_lattice = config.cap_ideal().divisors();
  std::sort(full_lattice.begin(), full_lattice.end(), ideal_less);
  std::vector<Rational> refined_generic(full_lattice.size());
  parallel_for(full_lattice.size(), jobs, [&](std::size_t i) {
    refined_generic[i] =
        refined_count(generic_only, full_lattice[i], config.rank).total;
  });
  auto refined_at = [&](const Ideal& ideal) -> const Rational& {
    const auto it = std::lower_bound(
        full_lattice.begin(), full_lattice.end(), ideal,
        [](const Ideal& a, const Ideal& b) { return ideal_less(a, b); });
    return refined_generic[static_cast<std::size_t>(it - full_lattice.begin())];
  };

  report.rows.resize(lattice.size());
  parallel_for(lattice.size(), jobs, [&](std::size_t i) {
    const Ideal& ideal = lattice[i];
    CensusRow row;
    row.ideal = ideal;
    row.norm = ideal.norm();
    row.refined = refined_count(spectrum, ideal, config.rank,
                                config.chi_conductor);
    row.classical = classical_count(spectrum, ideal, config.rank);
    row.enew_at_one =
        GlobalNewVector::assemble(ideal, config.rank, config.chi_conductor)
            .eval_at_one();

    // The generic part must be the literal conductor tally.
    Integer tally = 0;
    for (const auto& entry : spectrum) {
      if (entry.generic && entry.conductor == ideal) {
        tally += Integer(static_cast<unsigned long>(entry.multiplicity));
      }
    }
    row.tally_ok = row.refined.generic_part == Rational(tally);

    // The trivial leakage must match its closed form.
    Rational expected_leakage = 0;
    for (const auto& entry : spectrum) {
      if (entry.generic) continue;
      expected_leakage +=
          Rational(Integer(static_cast<unsigned long>(entry.multiplicity))) *
          trivial_leakage_closed_form(ideal, config.rank);
    }
    row.leakage_ok = row.refined.trivial_part == expected_leakage;

    // Inversion identity on the generic sub-spectrum, via the memoized
    // refined totals.
    const Rational classical_generic =
        classical_count(generic_only, ideal, config.rank);
    Rational recovered = 0;
    for (const auto& divisor : ideal.divisors()) {
      const Rational& refined = refined_at(divisor);
      if (refined.is_zero()) continue;
      Rational weight = 1;
      for (const auto& [place, exponent] : ideal.factors()) {
        weight *= Rational(binomial(
            static_cast<long>(exponent) -
                static_cast<long>(divisor.exponent_at(place)) +
                static_cast<long>(config.rank) - 1,
            static_cast<long>(config.rank) - 1));
      }
      recovered += refined * weight;
    }
    row.inversion_ok = classical_generic == recovered;
    report.rows[i] = std::move(row);
  });

  report.pass = std::all_of(report.rows.begin(), report.rows.end(),
                            [](const CensusRow& row) {
                              return row.tally_ok && row.leakage_ok &&
                                     row.inversion_ok;
                            });
  return report;
}

CensusReport run_census(const CensusConfig& config, unsigned jobs) {
  return run_census(config, generate_spectrum(config), jobs);
}

std::string report_to_json(const CensusReport& report) {
  ordered_json j;
  j["config"] = report.config.to_json();
  j["spectrum_size"] = report.spectrum_size;
  j["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json rj;
    rj["ideal"] = row.ideal.str();
    rj["norm"] = integer_str(row.norm);
    rj["refined_count"] = row.refined.total.str();
    rj["refined_generic"] = row.refined.generic_part.str();
    rj["refined_trivial"] = row.refined.trivial_part.str();
    rj["classical_count"] = row.classical.str();
    rj["enew_at_one"] = row.enew_at_one.str();
    rj["isolated"] = row.refined.isolated;
    rj["tally_ok"] = row.tally_ok;
    rj["leakage_ok"] = row.leakage_ok;
    rj["inversion_ok"] = row.inversion_ok;
    j["rows"].push_back(rj);
  }
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const CensusReport& report) {
  std::string out =
      "ideal,norm,refined_count,refined_generic,refined_trivial,"
      "classical_count,enew_at_one,isolated,tally_ok,leakage_ok,inversion_ok\n";
  for (const auto& row : report.rows) {
    out += row.ideal.str() + "," + integer_str(row.norm) + "," +
           row.refined.total.str() + "," + row.refined.generic_part.str() +
           "," + row.refined.trivial_part.str() + "," + row.classical.str() +
           "," + row.enew_at_one.str() + ",";
    for (std::size_t i = 0; i < row.refined.isolated.size(); ++i) {
      if (i) out += ";";
      out += std::to_string(row.refined.isolated[i]);
    }
    out += std::string(",") + (row.tally_ok ? "true" : "false") + "," +
           (row.leakage_ok ? "true" : "false") + "," +
           (row.inversion_ok ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace newvec
