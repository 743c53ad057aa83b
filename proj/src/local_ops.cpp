#include "symslocc/local_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

namespace symslocc {

Complex det(const LocalOp& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

bool is_invertible(const LocalOp& m, const Tolerances& tol) {
  const double scale = m.squaredNorm();
  return scale > 0.0 && std::abs(det(m)) > tol.eps_zero * scale;
}

LocalOp inverse(const LocalOp& m, const Tolerances& tol) {
  if (!is_invertible(m, tol)) throw Error(ErrorKind::Singular, "operator is not invertible");
  const Complex d = det(m);
  LocalOp inv;
  inv << m(1, 1) / d, -m(0, 1) / d, -m(1, 0) / d, m(0, 0) / d;
  return inv;
}

std::optional<Complex> proportionality(const LocalOp& m1, const LocalOp& m2, const Tolerances& tol) {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  m1.cwiseAbs().maxCoeff(&r, &c);
  if (m1(r, c) == Complex{}) return std::nullopt;
  const Complex ratio = m2(r, c) / m1(r, c);
  const double scale = std::max(m2.norm(), std::abs(ratio) * m1.norm());
  if (scale == 0.0) return std::nullopt;
  if ((m2 - ratio * m1).norm() > tol.eps_prop * scale) return std::nullopt;
  return ratio;
}

namespace {

// Null vector of (m - lambda id), scaled so the max-modulus entry is 1.
Eigen::Vector2cd eigenvector(const LocalOp& m, Complex lambda) {
  Eigen::Vector2cd from_row0(m(0, 1), lambda - m(0, 0));
  Eigen::Vector2cd from_row1(lambda - m(1, 1), m(1, 0));
  Eigen::Vector2cd v = from_row0.squaredNorm() >= from_row1.squaredNorm() ? from_row0 : from_row1;
  const Complex pivot = std::abs(v(0)) >= std::abs(v(1)) ? v(0) : v(1);
  return v / pivot;
}

}  // namespace

JordanReduction jordan_reduce(const LocalOp& m, const Tolerances& tol) {
  if (!is_invertible(m, tol)) {
    throw Error(ErrorKind::Singular, "jordan_reduce needs nonzero eigenvalues");
  }
  const Complex tr = m.trace();
  const Complex d = det(m);
  const Complex root = std::sqrt(tr * tr - 4.0 * d);
  const Complex q = std::abs(tr + root) >= std::abs(tr - root) ? tr + root : tr - root;
  const Complex big = q / 2.0;
  const Complex small = d / big;

  const double gap = std::abs(big - small);
  const double top = std::max(std::abs(big), std::abs(small));
  const Complex lambda = tr / 2.0;
  const LocalOp nil = m - lambda * LocalOp::Identity();
  // A defective m splits its eigenvalue by ~sqrt(eps); such a split is tiny
  // next to the nilpotent part and gives nearly parallel eigenvectors.
  if (gap <= tol.eps_eig * top || gap * gap <= tol.eps_eig * top * nil.norm()) {
    if (nil.norm() <= tol.eps_prop * m.norm()) return ScalarMultiple{lambda};
    // S = [N e_j, e_j] for the dominant column j of the nilpotent part.
    const Eigen::Index j = nil.col(0).squaredNorm() >= nil.col(1).squaredNorm() ? 0 : 1;
    LocalOp S;
    S.col(0) = nil.col(j);
    S.col(1) = Eigen::Vector2cd::Unit(j);
    return JordanBlock{S, lambda};
  }

  Eigen::Vector2cd va = eigenvector(m, big);
  Eigen::Vector2cd vb = eigenvector(m, small);
  Complex la = big;
  Complex lb = small;
  // Order so that an already-diagonal input yields S = id.
  if (std::abs(va(0)) * std::abs(vb(1)) < std::abs(vb(0)) * std::abs(va(1))) {
    std::swap(va, vb);
    std::swap(la, lb);
  }
  LocalOp S;
  S.col(0) = va;
  S.col(1) = vb;
  return Diagonalizable{S, la, lb};
}

LocalOp reconstruct(const JordanReduction& r) {
  return std::visit(
      [](const auto& v) -> LocalOp {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ScalarMultiple>) {
          return v.lambda * LocalOp::Identity();
        } else if constexpr (std::is_same_v<T, Diagonalizable>) {
          LocalOp D = LocalOp::Zero();
          D(0, 0) = v.lambda1;
          D(1, 1) = v.lambda2;
          return v.S * D * v.S.inverse();
        } else {
          LocalOp J;
          J << v.lambda, 1.0, 0.0, v.lambda;
          return v.S * J * v.S.inverse();
        }
      },
      r);
}

namespace {

void apply_in_place(const LocalOp& a, int qubit, std::span<Complex> amps) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      Complex& lo = amps[base + off];
      Complex& hi = amps[base + off + stride];
      const Complex x0 = lo;
      const Complex x1 = hi;
      lo = a(0, 0) * x0 + a(0, 1) * x1;
      hi = a(1, 0) * x0 + a(1, 1) * x1;
    }
  }
}

}  // namespace

FullState apply_on_qubit(const LocalOp& a, int qubit, const FullState& f) {
  if (qubit < 0 || qubit >= f.n()) throw Error(ErrorKind::Argument, "qubit index out of range");
  std::vector<Complex> amps(f.amps().begin(), f.amps().end());
  apply_in_place(a, qubit, amps);
  return FullState(f.n(), std::move(amps));
}

FullState apply_general(std::span<const LocalOp> ops, const FullState& f) {
  if (ops.size() != static_cast<std::size_t>(f.n())) {
    throw Error(ErrorKind::DimensionMismatch, "tuple has " + std::to_string(ops.size()) +
                                                  " operators for " + std::to_string(f.n()) + " qubits");
  }
  std::vector<Complex> amps(f.amps().begin(), f.amps().end());
  for (int p = 0; p < f.n(); ++p) apply_in_place(ops[static_cast<std::size_t>(p)], p, amps);
  return FullState(f.n(), std::move(amps));
}

SymmetricState apply_symmetric(const LocalOp& a, const SymmetricState& s) {
  const int n = s.n();
  if (n > 64) throw Error(ErrorKind::Overflow, "apply_symmetric supports n <= 64");
  // Identify |0> with x and |1> with y: the state is the binary form
  // sum_k C(n,k) a_k x^(n-k) y^k, and A substitutes x -> U, y -> V with
  // U = m00 x + m10 y, V = m01 x + m11 y. Homogeneous Horner evaluation:
  // h <- h * U + c_k V^k. Polynomials are stored as y-power coefficients.
  const Complex u0 = a(0, 0), u1 = a(1, 0);
  const Complex v0 = a(0, 1), v1 = a(1, 1);
  std::vector<Complex> h{static_cast<double>(binom(n, 0)) * s[0]};
  std::vector<Complex> vpow{1.0};
  h.reserve(static_cast<std::size_t>(n) + 1);
  vpow.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) {
    vpow.push_back(0.0);
    for (int i = k; i >= 1; --i) vpow[i] = vpow[i] * v0 + vpow[i - 1] * v1;
    vpow[0] *= v0;
    h.push_back(0.0);
    for (int i = k; i >= 1; --i) h[i] = h[i] * u0 + h[i - 1] * u1;
    h[0] *= u0;
    const Complex ck = static_cast<double>(binom(n, k)) * s[k];
    for (int i = 0; i <= k; ++i) h[i] += ck * vpow[i];
  }
  for (int j = 0; j <= n; ++j) h[j] /= static_cast<double>(binom(n, j));
  return SymmetricState(n, std::move(h));
}

Complex principal_root(Complex z, int n) {
  if (n < 1) throw Error(ErrorKind::Argument, "root order must be positive");
  if (z == Complex{}) return 0.0;
  return std::exp(std::log(z) / static_cast<double>(n));
}

}  // namespace symslocc
