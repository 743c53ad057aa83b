#pragma once

#include <cstdint>

#include "symslocc/dicke.hpp"
#include "symslocc/local_ops.hpp"
#include "symslocc/types.hpp"

namespace symslocc {

/// Two symmetric states joined by a tuple with at least one
/// non-proportional pair: tuple (psi) is proportional to phi.
struct FixtureBundle {
  SymmetricState psi;
  SymmetricState phi;
  IloTuple tuple;
  ClassTag intended_class;
  std::uint64_t seed;
};

/// [[a1, a2], [a3, a4]] (x) [[a1, b2], [a3, b4]]; maps |00> to a product state.
IloTuple separable_pair_tuple(Complex a1, Complex a2, Complex a3, Complex a4, Complex b2, Complex b4);

/// A = [[a, c], [b, 0]], B = [[a, d], [b, 0]], C = [[a, e], [b, 0]]. The
/// image of GHZ_3 is symmetric. Throws Error(Argument) for a zero parameter.
IloTuple ghz3_symmetric_tuple(Complex a, Complex b, Complex c, Complex d, Complex e);

/// Ray residual of tuple (psi) against phi (0 for a valid bundle).
double bundle_violation(const FixtureBundle& b);

/// psi = S^{(x)n} |canonical>, tuple = [C B1, C B2, C, ..., C], phi = C^{(x)n} psi,
/// where B1 (x) B2 stabilizes psi: B1 = S D S^-1, B2 = S D^-1 S^-1 (GHZ and
/// separable) or B1 = S J S^-1, B2 = S J^-1 S^-1 (W and separable).
/// S, C: entries uniform in the unit disc with |det| >= 0.1.
/// Eigenvalues: moduli in [0.5, 2], |l1 - l2| >= 0.2 and |l1 + l2| >= 0.2.
/// Throws Error(Internal) if the constructed bundle fails its own check.
FixtureBundle generate_nonsymmetric_connector(ClassTag cls, int n, std::uint64_t seed, const Tolerances& tol = {});

}  // namespace symslocc
