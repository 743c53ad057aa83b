#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symslocc/types.hpp"

namespace symslocc {

/// Exact binomial coefficient C(n, k). Returns 0 when k < 0 or k > n.
/// Throws Error(Overflow) when the value does not fit in 64 bits
/// (never for n <= 64).
std::uint64_t binom(int n, int k);

/// Symmetric n-qubit state stored against the unnormalized Dicke basis
/// |psi_n^(k)> = sum of all weight-k bitstrings, i.e. coeffs[k] is the
/// amplitude of every weight-k computational basis state.
class SymmetricState {
 public:
  SymmetricState(int n, std::vector<Complex> coeffs);

  int n() const noexcept { return n_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

  /// Largest coefficient modulus.
  double max_abs() const;
  /// Squared norm of the full 2^n vector: sum_k C(n,k) |a_k|^2.
  double norm_sq() const;

  friend bool operator==(const SymmetricState&, const SymmetricState&) = default;

 private:
  int n_;
  std::vector<Complex> coeffs_;
};

/// 2^n amplitudes; bit p of the index is qubit p (0-based), 1 meaning |1>.
class FullState {
 public:
  static constexpr int kMaxQubits = 24;

  FullState(int n, std::vector<Complex> amps);

  int n() const noexcept { return n_; }
  std::span<const Complex> amps() const noexcept { return amps_; }
  std::span<Complex> amps_mut() noexcept { return amps_; }
  const Complex& operator[](std::size_t idx) const { return amps_.at(idx); }

  double norm_sq() const;

  friend bool operator==(const FullState&, const FullState&) = default;

 private:
  int n_;
  std::vector<Complex> amps_;
};

/// Amplitude 1 on every bitstring of Hamming weight k.
FullState basis_state_full(int n, int k);

FullState to_full(const SymmetricState& s);

/// Largest deviation of any amplitude from its weight-class mean,
/// relative to the largest amplitude modulus.
double symmetry_residual(const FullState& f);

/// Projects onto the symmetric subspace by weight-class averaging.
/// Throws Error(NotSymmetric) when symmetry_residual exceeds tol.eps_zero.
SymmetricState from_full(const FullState& f, const Tolerances& tol = {});

SymmetricState make_sep(int n);
SymmetricState make_w(int n);
SymmetricState make_ghz(int n);
/// Normalized Dicke state |D_n^(k)>: a_k = 1/sqrt(C(n,k)).
SymmetricState make_dicke(int n, int k);
/// Canonical representative for a class tag (|0...0>, W_n or GHZ_n).
SymmetricState canonical_state(ClassTag tag, int n);

/// Relabels qubits: qubit p of the input becomes qubit perm[p] (0-based).
FullState permute_qubits(const FullState& f, std::span<const int> perm);

/// min over complex c of ||c x - y|| / ||y|| in the full-state norm.
double ray_residual(const SymmetricState& x, const SymmetricState& y);
double ray_residual(const FullState& x, const FullState& y);
/// Optimal c in ray_residual (the projection coefficient <x,y>/<x,x>).
Complex ray_scale(const SymmetricState& x, const SymmetricState& y);

}  // namespace symslocc
