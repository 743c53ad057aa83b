#include "symslocc/random.hpp"

#include <cmath>
#include <numbers>

#include "symslocc/local_ops.hpp"

namespace symslocc {

Complex Rng::disc() {
  for (;;) {
    const double x = uniform(-1.0, 1.0);
    const double y = uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) return {x, y};
  }
}

double Rng::normal() {
  // Box-Muller; 1 - uniform() is in (0, 1].
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over seed xor index.
  std::uint64_t z = (seed ^ index) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

LocalOp random_invertible(Rng& rng, double min_abs_det) {
  for (;;) {
    LocalOp m;
    m << rng.disc(), rng.disc(), rng.disc(), rng.disc();
    if (std::abs(det(m)) >= min_abs_det) return m;
  }
}

SymmetricState random_symmetric_state(Rng& rng, int n) {
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (auto& z : c) z = rng.disc();
  return SymmetricState(n, std::move(c));
}

SymmetricState haar_symmetric_state(Rng& rng, int n) {
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  double norm = 0.0;
  for (int k = 0; k <= n; ++k) {
    const Complex g = rng.complex_normal();
    norm += std::norm(g);
    c[k] = g / std::sqrt(static_cast<double>(binom(n, k)));
  }
  for (auto& z : c) z /= std::sqrt(norm);
  return SymmetricState(n, std::move(c));
}

}  // namespace symslocc
