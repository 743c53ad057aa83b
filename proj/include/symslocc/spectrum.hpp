#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symslocc/dicke.hpp"
#include "symslocc/types.hpp"

namespace symslocc {

/// A projective point (u : v) with multiplicity. Stored with unit
/// Euclidean norm and the larger-modulus component real positive.
struct RootPoint {
  Complex u;
  Complex v;
  int multiplicity = 1;
};

/// Projective zeros of P(u, v) = sum_k (-1)^k C(n,k) a_k v^k u^(n-k).
/// The product state (alpha|0> + beta|1>)^{(x)n} has the single root
/// (beta : alpha) of multiplicity n.
struct RootSpectrum {
  int n = 0;
  std::vector<RootPoint> points;

  int total_multiplicity() const;
};

/// Normalizes (u, v) to the canonical representative of its ray.
RootPoint normalize_point(Complex u, Complex v, int multiplicity = 1);

/// Distance between rays on the Riemann sphere, |u1 v2 - v1 u2| for unit
/// vectors; 0 for equal rays, 1 for antipodal ones.
double chordal_distance(const RootPoint& a, const RootPoint& b);

/// Roots via the companion matrix of the dehomogenized polynomial (in the
/// orientation with the larger leading coefficient), then clustering.
/// Raw roots within eps_root are always merged; wider clusters are merged
/// only when the clustered factorization still reproduces P to within
/// 1e4 * eps_zero (Bombieri-norm relative residual), which is what lets a
/// perturbed m-fold root (spread ~ eps^(1/m)) be recognized. Each cluster
/// centre is Newton-polished on the (m-1)-th derivative of P.
/// Throws Error(ZeroState) for a vanishing polynomial.
RootSpectrum majorana_spectrum(const SymmetricState& s, const Tolerances& tol = {});

/// Multiplicities in descending order.
std::vector<int> multiplicity_pattern(const RootSpectrum& r);

/// 2x2 matrix acting on root points (u, v) induced by A^{(x)n} on states:
/// [[m11, m10], [m01, m00]].
LocalOp root_action(const LocalOp& a);
/// Inverse of root_action: the state operator for a root map.
LocalOp witness_from_root_map(const LocalOp& t);

/// Image of every point under the projective map t.
RootSpectrum map_spectrum(const LocalOp& t, const RootSpectrum& r);

/// Largest chordal distance under a greedy closest-pair matching of the two
/// multisets (expanded by multiplicity). Infinity if totals differ.
double spectrum_distance(const RootSpectrum& a, const RootSpectrum& b);

/// Calls visit(t) for every candidate projective map t that sends r1's
/// multiset onto r2's (multiplicities preserved, chordal distance
/// <= eps_root) until visit returns true. Returns whether it did.
bool for_each_root_map(const RootSpectrum& r1, const RootSpectrum& r2, const Tolerances& tol,
                       const std::function<bool(const LocalOp&)>& visit);

/// First projective map matching the two spectra, if any.
std::optional<LocalOp> roots_match(const RootSpectrum& r1, const RootSpectrum& r2,
                                   const Tolerances& tol = {});

}  // namespace symslocc
