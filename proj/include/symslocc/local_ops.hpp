#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "symslocc/dicke.hpp"
#include "symslocc/types.hpp"

namespace symslocc {

/// Ordered single-qubit operators A_1 ... A_n; entry p acts on qubit p.
using IloTuple = std::vector<LocalOp>;

Complex det(const LocalOp& m);

/// Throws Error(Singular) when |det m| <= eps_zero * ||m||_F^2.
LocalOp inverse(const LocalOp& m, const Tolerances& tol = {});

bool is_invertible(const LocalOp& m, const Tolerances& tol = {});

/// c with m2 = c * m1 (relative error eps_prop), or nullopt.
std::optional<Complex> proportionality(const LocalOp& m1, const LocalOp& m2, const Tolerances& tol = {});

struct Diagonalizable {
  LocalOp S;
  Complex lambda1;
  Complex lambda2;
};

struct JordanBlock {
  LocalOp S;
  Complex lambda;
};

struct ScalarMultiple {
  Complex lambda;
};

/// Similarity reduction m = S diag(l1, l2) S^-1, m = S [[l,1],[0,l]] S^-1,
/// or m = l * id.
using JordanReduction = std::variant<Diagonalizable, JordanBlock, ScalarMultiple>;

/// Eigenvalues come from the characteristic quadratic. Eigenvalues whose
/// difference is within eps_eig of the larger modulus are treated as equal,
/// so nearly-degenerate diagonalizable inputs reduce to a Jordan block.
/// Eigenvector columns are scaled to a real positive max-modulus entry of 1.
/// Throws Error(Singular) for a zero eigenvalue.
JordanReduction jordan_reduce(const LocalOp& m, const Tolerances& tol = {});

/// The matrix S D S^-1 (or S J S^-1, or l * id) a reduction describes.
LocalOp reconstruct(const JordanReduction& r);

/// Applies A_1 (x) ... (x) A_n qubit by qubit; O(n 2^n).
FullState apply_general(std::span<const LocalOp> ops, const FullState& f);

/// Applies one operator to a single qubit of a full state.
FullState apply_on_qubit(const LocalOp& a, int qubit, const FullState& f);

/// Coefficients of A^{(x)n}|s> in the unnormalized Dicke basis, O(n^2).
/// Throws Error(Overflow) for n > 64.
SymmetricState apply_symmetric(const LocalOp& a, const SymmetricState& s);

/// Principal branch of z^(1/n).
Complex principal_root(Complex z, int n);

}  // namespace symslocc
