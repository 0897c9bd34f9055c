#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newvec/global.hpp"

namespace newvec {

/// Configuration of one synthetic census run.
struct CensusConfig {
  unsigned rank = 2;
  std::vector<PrimePlace> places;
  unsigned r_max = 2;
  unsigned entries = 50;
  Rational generic_fraction = Rational(1);
  std::uint64_t seed = 0;
  bool fixed = false;                  // fixed-central-character mode
  std::optional<Ideal> chi_conductor;  // required in fixed mode

  /// The cap ideal prod p^{r_max} whose divisor lattice the census scans.
  Ideal cap_ideal() const;

  static CensusConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Draws `entries` synthetic representations: conductors uniform over the
/// divisor lattice of the cap ideal, genericity with the configured
/// probability, multiplicity 1.  Deterministic under the seed.
std::vector<SpectrumEntry> generate_spectrum(const CensusConfig& config);

nlohmann::ordered_json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum);
std::vector<SpectrumEntry> spectrum_from_json(const nlohmann::json& j);

/// Refined conductor count at one ideal: sum of multiplicity * trace over
/// the spectrum, split into the generic part (the exact conductor tally) and
/// the trivial-law leakage, with the ids of the isolated generic entries.
struct RefinedCount {
  Rational total;
  Rational generic_part;
  Rational trivial_part;
  std::vector<std::size_t> isolated;
};

RefinedCount refined_count(const std::vector<SpectrumEntry>& spectrum,
                           const Ideal& ideal, unsigned rank,
                           const std::optional<Ideal>& chi_conductor = {});

/// Classical counting weight: sum of multiplicity * prod of fixed-space
/// dimensions at the ideal's levels (volume factors normalized to 1).
Rational classical_count(const std::vector<SpectrumEntry>& spectrum,
                         const Ideal& ideal, unsigned rank);

/// Exact inversion: classical(ideal) = sum over divisors m of
/// refined(m) * prod C(r_p - m_p + rank - 1, rank - 1).  Requires an
/// all-generic spectrum (errc::invalid_argument otherwise).
bool inversion_check(const std::vector<SpectrumEntry>& spectrum,
                     const Ideal& ideal, unsigned rank);

struct CensusRow {
  Ideal ideal;
  Integer norm;
  RefinedCount refined;
  Rational classical;
  Rational enew_at_one;
  bool tally_ok = false;      // generic part equals the literal tally
  bool leakage_ok = false;    // trivial part matches the closed form
  bool inversion_ok = false;  // checked on the generic sub-spectrum
};

struct CensusReport {
  CensusConfig config;
  std::size_t spectrum_size = 0;
  std::vector<CensusRow> rows;  // sorted by ideal (norm, literal)
  bool pass = false;
};

/// Runs the census over the divisor lattice of the cap ideal (restricted to
/// multiples of the character conductor in fixed mode).  `jobs` only changes
/// scheduling, never bytes of the serialized report.
CensusReport run_census(const CensusConfig& config,
                        const std::vector<SpectrumEntry>& spectrum,
                        unsigned jobs = 1);
CensusReport run_census(const CensusConfig& config, unsigned jobs = 1);

std::string report_to_json(const CensusReport& report);
std::string report_to_csv(const CensusReport& report);

}  // namespace newvec
