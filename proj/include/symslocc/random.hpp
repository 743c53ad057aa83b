#pragma once

#include <cstdint>
#include <random>

#include "symslocc/dicke.hpp"
#include "symslocc/types.hpp"

namespace symslocc {

/// Seeded generator whose output is identical on every platform:
/// mt19937_64 bits mapped to doubles by hand instead of through the
/// implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in the closed complex unit disc.
  Complex disc();
  double normal();
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and an index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Entries uniform in the unit disc, redrawn until |det| >= min_abs_det.
LocalOp random_invertible(Rng& rng, double min_abs_det = 0.1);

/// Coefficients uniform in the unit disc.
SymmetricState random_symmetric_state(Rng& rng, int n);

/// Haar-random ray in the symmetric subspace, normalized.
SymmetricState haar_symmetric_state(Rng& rng, int n);

}  // namespace symslocc
