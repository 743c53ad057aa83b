#pragma once

#include <optional>
#include <utility>

#include "symslocc/dicke.hpp"
#include "symslocc/local_ops.hpp"
#include "symslocc/types.hpp"

namespace symslocc {

enum class ReductionCase { Trivial, Case1, Case2 };

std::string_view to_string(ReductionCase c);

/// psi = scale * transform^{(x)n} |canonical(class_tag)>.
struct CanonicalForm {
  ClassTag class_tag = ClassTag::Separable;
  LocalOp transform = LocalOp::Identity();
  ReductionCase case_taken = ReductionCase::Trivial;
  Complex scale = 1.0;

  // Diagnostics.
  double residual = 0.0;      // ray residual of the reconstruction against psi
  double annihilation = 0.0;  // max |a_k(psi')| / max |a_k(psi')| over the coefficients that must vanish
  std::pair<int, int> pair{0, 0};  // 0-based operator indices that were reduced
  double condition = 1.0;     // 2-norm condition number of the similarity S
};

/// Thrown when S^-1 psi keeps coefficients that the reduction must kill.
class AnnihilationViolation : public Error {
 public:
  AnnihilationViolation(ReductionCase c, double value, const std::string& what)
      : Error(ErrorKind::AnnihilationViolated, what), case_taken(c), annihilation(value) {}

  ReductionCase case_taken;
  double annihilation;
};

/// witness^{(x)n} psi = phi up to `residual` (ray residual).
struct WitnessReport {
  LocalOp witness = LocalOp::Identity();
  ClassTag class_tag = ClassTag::Separable;
  double residual = 0.0;
  bool trivial = false;  // every tuple member was proportional to the first
  std::optional<CanonicalForm> psi_form;
  std::optional<CanonicalForm> phi_form;
};

/// If every A_i = c_i A_1, returns c A_1 with c the principal n-th root of
/// prod c_i, so that (c A_1)^{(x)n} equals the tuple as a map.
std::optional<LocalOp> trivial_reduction(std::span<const LocalOp> ops, const Tolerances& tol = {});

/// Relative norm of (M (x) M^-1 (x) id)|psi> - |psi> with M = A_i^-1 A_j
/// (0-based indices). Vanishes whenever the tuple maps psi to a symmetric state.
double invariance_residual(int i, int j, std::span<const LocalOp> ops, const SymmetricState& psi,
                           const Tolerances& tol = {});

/// Index pair (i < j) of the first two non-proportional operators.
std::optional<std::pair<int, int>> first_nonproportional_pair(std::span<const LocalOp> ops,
                                                             const Tolerances& tol = {});

/// Canonical class and transform of a symmetric state that `ops` maps onto
/// some symmetric state, following the two-case Jordan argument:
///   Case1 (A_i^-1 A_j diagonalizable): psi' = S^-1 psi keeps only a_0, a_n.
///   Case2 (Jordan block): psi' keeps only a_0, a_1.
/// Throws AnnihilationViolated when the expected coefficients of psi' do
/// not vanish to tol.eps_annihilate, NoNonProportionalPair when every
/// operator is proportional to the first, Singular for non-invertible input.
/// At n = 2 a W-type result is reported as GHZ (the two coincide).
CanonicalForm reduce_to_canonical(const SymmetricState& psi, std::span<const LocalOp> ops,
                                  const Tolerances& tol = {});

/// Symmetric operator A with A^{(x)n} psi = phi, built as S_phi S_psi^-1
/// from the canonical forms of both states (phi reduced through the
/// inverted tuple), or from trivial_reduction when it applies.
/// Throws NotConnected if ops does not map psi onto phi (up to scale),
/// ClassMismatch if the two reductions disagree.
WitnessReport symmetric_witness(const SymmetricState& psi, const SymmetricState& phi, std::span<const LocalOp> ops,
                                const Tolerances& tol = {});

IloTuple invert_tuple(std::span<const LocalOp> ops, const Tolerances& tol = {});

}  // namespace symslocc
