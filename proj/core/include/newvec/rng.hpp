#pragma once

#include <cstdint>
#include <random>

namespace newvec {

/// Deterministic random source.  The engine is the fully specified
/// std::mt19937_64; all reductions are done here rather than through
/// std::uniform_int_distribution so that streams are identical across
/// standard libraries and job counts.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection-free modulo; the bias is irrelevant at these bound sizes
    // and keeping it branch-free keeps streams easy to reason about.
    return next() % bound;
  }

  /// Uniform in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) {
    return below(den) < num;
  }

  /// Stream-splitting: derive an independent seed for work item `stream` so
  /// that per-item randomness does not depend on how work is partitioned.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace newvec
