#include "symslocc/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "symslocc/random.hpp"
#include "symslocc/theorem.hpp"

namespace symslocc {

IloTuple separable_pair_tuple(Complex a1, Complex a2, Complex a3, Complex a4, Complex b2, Complex b4) {
  LocalOp first, second;
  first << a1, a2, a3, a4;
  second << a1, b2, a3, b4;
  return {first, second};
}

IloTuple ghz3_symmetric_tuple(Complex a, Complex b, Complex c, Complex d, Complex e) {
  for (const Complex z : {a, b, c, d, e}) {
    if (z == Complex{}) throw Error(ErrorKind::Argument, "ghz3_symmetric_tuple parameters must be nonzero");
  }
  LocalOp ma, mb, mc;
  ma << a, c, b, 0.0;
  mb << a, d, b, 0.0;
  mc << a, e, b, 0.0;
  return {ma, mb, mc};
}

double bundle_violation(const FixtureBundle& b) {
  return ray_residual(apply_general(b.tuple, to_full(b.psi)), to_full(b.phi));
}

namespace {

Complex random_eigenvalue(Rng& rng) {
  const double modulus = rng.uniform(0.5, 2.0);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(modulus, phase);
}

}  // namespace

FixtureBundle generate_nonsymmetric_connector(ClassTag cls, int n, std::uint64_t seed, const Tolerances& tol) {
  if (n < 2) throw Error(ErrorKind::Argument, "fixtures need n >= 2");
  if (cls == ClassTag::W && n < 3) throw Error(ErrorKind::Argument, "W fixtures need n >= 3");
  if (cls == ClassTag::Other) throw Error(ErrorKind::Argument, "fixtures exist only for Separable, W, GHZ");

  Rng rng(seed);
  const LocalOp s = random_invertible(rng);
  const LocalOp c = random_invertible(rng);
  const SymmetricState psi = apply_symmetric(s, canonical_state(cls, n));

  bool diagonal = cls == ClassTag::GHZ;
  if (cls == ClassTag::Separable) diagonal = rng.uniform() < 0.5;

  LocalOp core = LocalOp::Zero();
  if (diagonal) {
    Complex l1, l2;
    do {
      l1 = random_eigenvalue(rng);
      l2 = random_eigenvalue(rng);
    } while (std::abs(l1 - l2) < 0.2 || std::abs(l1 + l2) < 0.2);
    core(0, 0) = l1;
    core(1, 1) = l2;
  } else {
    const Complex l = random_eigenvalue(rng);
    core << l, 1.0, 0.0, l;
  }
  const LocalOp s_inv = inverse(s, tol);
  IloTuple tuple(static_cast<std::size_t>(n), c);
  tuple[0] = c * s * core * s_inv;
  tuple[1] = c * s * inverse(core, tol) * s_inv;

  FixtureBundle bundle{psi, apply_symmetric(c, psi), std::move(tuple), cls, seed};
  const double violation = bundle_violation(bundle);
  if (violation > tol.eps_match || !first_nonproportional_pair(bundle.tuple, tol)) {
    throw Error(ErrorKind::Internal, "fixture self-check failed (violation " + std::to_string(violation) + ")");
  }
  return bundle;
}

}  // namespace symslocc
