#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "symslocc/dicke.hpp"
#include "symslocc/spectrum.hpp"
#include "symslocc/types.hpp"

namespace symslocc {

/// Separable iff the root pattern is [n]; W iff [n-1, 1] with n >= 3;
/// GHZ iff the roots are simple and some projective map carries them onto
/// the GHZ_n roots (n >= 4), or are simple at all (n = 2, 3); else Other.
/// At n = 2 the entangled class is reported as GHZ (Bell).
ClassTag classify(const SymmetricState& s, const Tolerances& tol = {});

enum class SearchMode { Exact, Numeric };

struct Equivalent {
  LocalOp witness;
  double residual;
};

struct Inequivalent {
  std::string reason;
};

/// Numeric search exhausted without a certificate either way.
struct Undecided {
  double best_residual;
};

using EquivalenceVerdict = std::variant<Equivalent, Inequivalent, Undecided>;

/// Decides whether phi is proportional to A^{(x)n} psi for some invertible A.
///
/// Exact mode matches root spectra by a projective map and verifies the
/// resulting witness against the states. Numeric mode minimizes the ray
/// residual over A (largest entry pinned to 1) with tol.restarts seeded
/// Levenberg-Marquardt starts and never reports Inequivalent.
EquivalenceVerdict check_equivalence(const SymmetricState& psi, const SymmetricState& phi, SearchMode mode,
                                     const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Ray residual of phi against A^{(x)n} psi; infinity if the image vanishes.
double witness_residual(const LocalOp& a, const SymmetricState& psi, const SymmetricState& phi);

struct NumericFit {
  LocalOp witness;
  double residual;
  int restart;
};

/// Least-squares refinement of a near-witness; returns whichever of a and
/// the refined operator has the smaller witness_residual.
LocalOp polish_witness(const LocalOp& a, const SymmetricState& psi, const SymmetricState& phi);

/// Lowest-residual result over all restarts (ties go to the lowest index).
NumericFit numeric_witness_search(const SymmetricState& psi, const SymmetricState& phi, const Tolerances& tol,
                                  std::uint64_t seed);

}  // namespace symslocc
