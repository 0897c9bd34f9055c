#include <benchmark/benchmark.h>

#include "newvec/census.hpp"
#include "newvec/conjugation.hpp"
#include "newvec/global.hpp"

using namespace newvec;

namespace {

void ProjectorGrid(benchmark::State& state) {
  const PrimePlace place(static_cast<std::uint64_t>(state.range(0)));
  const unsigned n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    Rational total = 0;
    for (unsigned r = 0; r <= 12; ++r) {
      const auto element = LocalHeckeElement::new_vector(place, n, r);
      for (unsigned c = 0; c <= 12; ++c) {
        total += element.trace(GenericLocalRep{c});
      }
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(ProjectorGrid)->Args({2, 2})->Args({25, 6});

void DominatingExpansion(benchmark::State& state) {
  const Ideal ideal = Ideal::parse("2^5*3^4*5^3");
  const auto global =
      GlobalNewVector::assemble(ideal, static_cast<unsigned>(state.range(0)));
  MembershipProfile profile;
  for (const auto& [place, exponent] : ideal.factors()) {
    profile.set(place, Depth::at(exponent / 2));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(global.bound_at_profile(profile));
    benchmark::DoNotOptimize(global.eval_h_at_profile(profile));
  }
}
BENCHMARK(DominatingExpansion)->Arg(2)->Arg(4);

void ObstructionIdeal(benchmark::State& state) {
  const auto gamma = state.range(0) == 2
                         ? IntegralMatrix::parse("0,-1,1,0")
                         : IntegralMatrix::parse("0,0,1,1,0,0,0,1,0");
  for (auto _ : state) {
    benchmark::DoNotOptimize(obstruction_ideal(gamma));
  }
}
BENCHMARK(ObstructionIdeal)->Arg(2)->Arg(3);

void CensusRun(benchmark::State& state) {
  CensusConfig config;
  config.rank = 2;
  config.places = {PrimePlace(2), PrimePlace(3)};
  config.r_max = 2;
  config.entries = 100;
  config.generic_fraction = Rational(Integer(3), Integer(4));
  config.seed = 1;
  const auto spectrum = generate_spectrum(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_census(config, spectrum, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(CensusRun)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
