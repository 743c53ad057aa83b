#include "symslocc/dicke.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace symslocc {

std::uint64_t binom(int n, int k) {
  if (n < 0) throw Error(ErrorKind::Argument, "binom: n must be non-negative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorKind::Overflow,
                  "binom(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool any_nonzero(std::span<const Complex> v) {
  return std::any_of(v.begin(), v.end(), [](const Complex& z) { return z != Complex{}; });
}

}  // namespace

SymmetricState::SymmetricState(int n, std::vector<Complex> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (n < 2) throw Error(ErrorKind::Argument, "symmetric state needs n >= 2");
  if (coeffs_.size() != static_cast<std::size_t>(n) + 1) {
    throw Error(ErrorKind::DimensionMismatch, "symmetric state needs n+1 coefficients");
  }
  if (!all_finite(coeffs_)) throw Error(ErrorKind::Argument, "non-finite coefficient");
  if (!any_nonzero(coeffs_)) throw Error(ErrorKind::ZeroState, "all coefficients vanish");
}

double SymmetricState::max_abs() const {
  double m = 0.0;
  for (const auto& a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

double SymmetricState::norm_sq() const {
  double s = 0.0;
  for (int k = 0; k <= n_; ++k) {
    s += static_cast<double>(binom(n_, k)) * std::norm(coeffs_[static_cast<std::size_t>(k)]);
  }
  return s;
}

FullState::FullState(int n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {
  if (n < 1 || n > kMaxQubits) {
    throw Error(ErrorKind::Argument, "full state qubit count must be in [1, 24]");
  }
  if (amps_.size() != (std::size_t{1} << n)) {
    throw Error(ErrorKind::DimensionMismatch, "full state needs 2^n amplitudes");
  }
  if (!all_finite(amps_)) throw Error(ErrorKind::Argument, "non-finite amplitude");
  if (!any_nonzero(amps_)) throw Error(ErrorKind::ZeroState, "all amplitudes vanish");
}

double FullState::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

FullState basis_state_full(int n, int k) {
  if (n < 2 || n > FullState::kMaxQubits) throw Error(ErrorKind::Argument, "basis_state_full: bad n");
  if (k < 0 || k > n) throw Error(ErrorKind::Argument, "basis_state_full: k out of range");
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::size_t b = 0; b < amps.size(); ++b) {
    if (std::popcount(b) == k) amps[b] = 1.0;
  }
  return FullState(n, std::move(amps));
}

FullState to_full(const SymmetricState& s) {
  const int n = s.n();
  if (n > FullState::kMaxQubits) throw Error(ErrorKind::Argument, "to_full: n too large");
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::size_t b = 0; b < amps.size(); ++b) amps[b] = s[std::popcount(b)];
  return FullState(n, std::move(amps));
}

namespace {

std::vector<Complex> weight_means(const FullState& f) {
  const int n = f.n();
  std::vector<Complex> sums(static_cast<std::size_t>(n) + 1);
  std::vector<Complex> first(sums.size());
  std::vector<char> seen(sums.size(), 0), uniform(sums.size(), 1);
  const auto amps = f.amps();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const int w = std::popcount(b);
    sums[w] += amps[b];
    if (!seen[w]) {
      first[w] = amps[b];
      seen[w] = 1;
    } else if (amps[b] != first[w]) {
      uniform[w] = 0;
    }
  }
  // a uniform class returns its value exactly
  for (int k = 0; k <= n; ++k) sums[k] = uniform[k] ? first[k] : sums[k] / static_cast<double>(binom(n, k));
  return sums;
}

}  // namespace

double symmetry_residual(const FullState& f) {
  const auto means = weight_means(f);
  const auto amps = f.amps();
  double dev = 0.0;
  double scale = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    dev = std::max(dev, std::abs(amps[b] - means[std::popcount(b)]));
    scale = std::max(scale, std::abs(amps[b]));
  }
  return dev / scale;
}

SymmetricState from_full(const FullState& f, const Tolerances& tol) {
  if (f.n() < 2) throw Error(ErrorKind::Argument, "from_full: symmetric states need n >= 2");
  const double r = symmetry_residual(f);
  if (r > tol.eps_zero) {
    throw Error(ErrorKind::NotSymmetric, "relative deviation " + std::to_string(r) +
                                             " from the symmetric subspace");
  }
  return SymmetricState(f.n(), weight_means(f));
}

SymmetricState make_sep(int n) {
  if (n < 2) throw Error(ErrorKind::Argument, "make_sep: n >= 2 required");
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  return SymmetricState(n, std::move(c));
}

SymmetricState make_dicke(int n, int k) {
  if (n < 2) throw Error(ErrorKind::Argument, "make_dicke: n >= 2 required");
  if (k < 0 || k > n) throw Error(ErrorKind::Argument, "make_dicke: k out of range");
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(static_cast<double>(binom(n, k)));
  return SymmetricState(n, std::move(c));
}

SymmetricState make_w(int n) { return make_dicke(n, 1); }

SymmetricState make_ghz(int n) {
  if (n < 2) throw Error(ErrorKind::Argument, "make_ghz: n >= 2 required");
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  c.front() = c.back() = 1.0 / std::sqrt(2.0);
  return SymmetricState(n, std::move(c));
}

SymmetricState canonical_state(ClassTag tag, int n) {
  switch (tag) {
    case ClassTag::Separable: return make_sep(n);
    case ClassTag::W: return make_w(n);
    case ClassTag::GHZ: return make_ghz(n);
    case ClassTag::Other: break;
  }
  throw Error(ErrorKind::Argument, "no canonical state for class Other");
}

FullState permute_qubits(const FullState& f, std::span<const int> perm) {
  const int n = f.n();
  if (perm.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::Argument, "permutation length differs from qubit count");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n));
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
      throw Error(ErrorKind::Argument, "not a permutation of the qubit indices");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  const auto in = f.amps();
  std::vector<Complex> out(in.size());
  for (std::size_t b = 0; b < in.size(); ++b) {
    std::size_t target = 0;
    for (int p = 0; p < n; ++p) {
      if ((b >> p) & 1U) target |= std::size_t{1} << perm[static_cast<std::size_t>(p)];
    }
    out[target] = in[b];
  }
  return FullState(n, std::move(out));
}

namespace {

// Weighted inner product <x, y> with the Dicke multiplicities.
Complex dicke_inner(const SymmetricState& x, const SymmetricState& y) {
  if (x.n() != y.n()) throw Error(ErrorKind::DimensionMismatch, "states have different n");
  Complex s{};
  for (int k = 0; k <= x.n(); ++k) s += static_cast<double>(binom(x.n(), k)) * std::conj(x[k]) * y[k];
  return s;
}

}  // namespace

Complex ray_scale(const SymmetricState& x, const SymmetricState& y) {
  return dicke_inner(x, y) / x.norm_sq();
}

double ray_residual(const SymmetricState& x, const SymmetricState& y) {
  const Complex c = ray_scale(x, y);
  double err = 0.0;
  for (int k = 0; k <= x.n(); ++k) {
    err += static_cast<double>(binom(x.n(), k)) * std::norm(c * x[k] - y[k]);
  }
  return std::sqrt(err / y.norm_sq());
}

double ray_residual(const FullState& x, const FullState& y) {
  if (x.n() != y.n()) throw Error(ErrorKind::DimensionMismatch, "states have different n");
  const auto xa = x.amps();
  const auto ya = y.amps();
  Complex xy{};
  for (std::size_t b = 0; b < xa.size(); ++b) xy += std::conj(xa[b]) * ya[b];
  const Complex c = xy / x.norm_sq();
  double err = 0.0;
  for (std::size_t b = 0; b < xa.size(); ++b) err += std::norm(c * xa[b] - ya[b]);
  return std::sqrt(err / y.norm_sq());
}

}  // namespace symslocc
