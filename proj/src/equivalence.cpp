#include "symslocc/equivalence.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "symslocc/local_ops.hpp"
#include "symslocc/random.hpp"

namespace symslocc {

double witness_residual(const LocalOp& a, const SymmetricState& psi, const SymmetricState& phi) {
  if (psi.n() != phi.n()) throw Error(ErrorKind::DimensionMismatch, "states have different n");
  try {
    return ray_residual(apply_symmetric(a, psi), phi);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ZeroState) return std::numeric_limits<double>::infinity();
    throw;
  }
}

namespace {

std::string pattern_text(const std::vector<int>& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

struct RootMatchOutcome {
  std::optional<Equivalent> verified;
  bool any_map = false;
  double best_residual = std::numeric_limits<double>::infinity();
};

RootMatchOutcome match_and_verify(const SymmetricState& psi, const RootSpectrum& r1, const SymmetricState& phi,
                                  const RootSpectrum& r2, const Tolerances& tol) {
  RootMatchOutcome out;
  for_each_root_map(r1, r2, tol, [&](const LocalOp& t) {
    out.any_map = true;
    LocalOp a = witness_from_root_map(t);
    if (!is_invertible(a, tol)) return false;
    double res = witness_residual(a, psi, phi);
    // Root errors of an ill-conditioned spectrum leave a near-witness.
    if (res > tol.eps_match && res <= std::sqrt(tol.eps_match)) {
      a = polish_witness(a, psi, phi);
      res = witness_residual(a, psi, phi);
    }
    out.best_residual = std::min(out.best_residual, res);
    if (res <= tol.eps_match) {
      out.verified = Equivalent{a, res};
      return true;
    }
    return false;
  });
  return out;
}

}  // namespace

ClassTag classify(const SymmetricState& s, const Tolerances& tol) {
  const int n = s.n();
  const RootSpectrum spec = majorana_spectrum(s, tol);
  const auto pattern = multiplicity_pattern(spec);
  if (pattern.size() == 1) return ClassTag::Separable;
  if (n == 2) return ClassTag::GHZ;
  if (pattern == std::vector<int>{n - 1, 1}) return ClassTag::W;
  if (static_cast<int>(pattern.size()) != n) return ClassTag::Other;
  if (n == 3) return ClassTag::GHZ;
  const SymmetricState ghz = make_ghz(n);
  const auto outcome = match_and_verify(ghz, majorana_spectrum(ghz, tol), s, spec, tol);
  return outcome.verified ? ClassTag::GHZ : ClassTag::Other;
}

namespace {

class RayFit {
 public:
  RayFit(const SymmetricState& psi, const SymmetricState& phi, int gauge)
      : psi_(psi), phi_(phi), gauge_(gauge), phi_norm_(std::sqrt(phi.norm_sq())) {}

  static constexpr int kParams = 6;

  LocalOp op(const Eigen::Matrix<double, kParams, 1>& x) const {
    LocalOp a;
    int slot = 0;
    for (int e = 0; e < 4; ++e) {
      Complex z = 1.0;
      if (e != gauge_) {
        z = {x(2 * slot), x(2 * slot + 1)};
        ++slot;
      }
      a(e / 2, e % 2) = z;
    }
    return a;
  }

  Eigen::Matrix<double, kParams, 1> params(const LocalOp& a) const {
    Eigen::Matrix<double, kParams, 1> x;
    int slot = 0;
    for (int e = 0; e < 4; ++e) {
      if (e == gauge_) continue;
      const Complex z = a(e / 2, e % 2) / a(gauge_ / 2, gauge_ % 2);
      x(2 * slot) = z.real();
      x(2 * slot + 1) = z.imag();
      ++slot;
    }
    return x;
  }

  // Weighted residual of the best multiple of A^{(x)n} psi against phi.
  Eigen::VectorXd residual(const Eigen::Matrix<double, kParams, 1>& x) const {
    const int n = psi_.n();
    Eigen::VectorXd r(2 * (n + 1));
    std::optional<SymmetricState> y;
    try {
      y = apply_symmetric(op(x), psi_);
    } catch (const Error&) {
      r.setConstant(1.0);
      return r;
    }
    const Complex c = ray_scale(*y, phi_);
    for (int k = 0; k <= n; ++k) {
      const Complex d = std::sqrt(static_cast<double>(binom(n, k))) * (c * (*y)[k] - phi_[k]) / phi_norm_;
      r(2 * k) = d.real();
      r(2 * k + 1) = d.imag();
    }
    return r;
  }

 private:
  const SymmetricState& psi_;
  const SymmetricState& phi_;
  int gauge_;
  double phi_norm_;
};

constexpr int kMaxIterations = 500;
constexpr double kConvergence = 1e-12;

// Damped least squares from one start; returns the final parameters.
Eigen::Matrix<double, RayFit::kParams, 1> levenberg_marquardt(const RayFit& fit,
                                                              Eigen::Matrix<double, RayFit::kParams, 1> x) {
  using Vec = Eigen::Matrix<double, RayFit::kParams, 1>;
  using Mat = Eigen::Matrix<double, RayFit::kParams, RayFit::kParams>;
  Eigen::VectorXd r = fit.residual(x);
  double cost = r.squaredNorm();
  double mu = -1.0;
  for (int it = 0; it < kMaxIterations && cost > 1e-30; ++it) {
    Eigen::MatrixXd jac(r.size(), RayFit::kParams);
    for (int i = 0; i < RayFit::kParams; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      jac.col(i) = (fit.residual(xp) - fit.residual(xm)) / (2.0 * h);
    }
    const Mat jtj = jac.transpose() * jac;
    const Vec grad = jac.transpose() * r;
    if (mu < 0.0) mu = 1e-3 * std::max(jtj.diagonal().maxCoeff(), 1e-12);

    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Mat damped = jtj;
      damped.diagonal().array() += mu;
      const Vec step = damped.ldlt().solve(-grad);
      const Vec xn = x + step;
      const Eigen::VectorXd rn = fit.residual(xn);
      const double cn = rn.squaredNorm();
      if (cn < cost) {
        const double improvement = cost - cn;
        const bool tiny_step = step.norm() <= kConvergence * (x.norm() + kConvergence);
        x = xn;
        r = rn;
        cost = cn;
        mu = std::max(mu / 3.0, 1e-15);
        accepted = true;
        if (tiny_step && improvement <= kConvergence * kConvergence) return x;
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted) break;
  }
  return x;
}

}  // namespace

namespace {

int gauge_of(const LocalOp& a) {
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  return static_cast<int>(2 * r + c);
}

// LM with the largest entry pinned; re-pins and continues if another entry
// overtakes it.
LocalOp fit_from(LocalOp a, const SymmetricState& psi, const SymmetricState& phi) {
  for (int round = 0; round < 4; ++round) {
    const int gauge = gauge_of(a);
    const RayFit fit(psi, phi, gauge);
    a = fit.op(levenberg_marquardt(fit, fit.params(a)));
    if (gauge_of(a) == gauge) break;
  }
  return a;
}

}  // namespace

LocalOp polish_witness(const LocalOp& a, const SymmetricState& psi, const SymmetricState& phi) {
  if (psi.n() != phi.n()) throw Error(ErrorKind::DimensionMismatch, "states have different n");
  LocalOp b = fit_from(a, psi, phi);
  const Complex c = ray_scale(apply_symmetric(b, psi), phi);
  b *= principal_root(c, psi.n());
  return witness_residual(b, psi, phi) < witness_residual(a, psi, phi) ? b : a;
}

NumericFit numeric_witness_search(const SymmetricState& psi, const SymmetricState& phi, const Tolerances& tol,
                                  std::uint64_t seed) {
  if (psi.n() != phi.n()) throw Error(ErrorKind::DimensionMismatch, "states have different n");
  tol.validate();
  NumericFit best{LocalOp::Identity(), std::numeric_limits<double>::infinity(), -1};
  for (int restart = 0; restart < tol.restarts; ++restart) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
    LocalOp start;
    start << rng.disc(), rng.disc(), rng.disc(), rng.disc();
    const LocalOp a = fit_from(start, psi, phi);
    if (!is_invertible(a, tol)) continue;
    const double res = witness_residual(a, psi, phi);
    if (res < best.residual) best = NumericFit{a, res, restart};
  }
  return best;
}

EquivalenceVerdict check_equivalence(const SymmetricState& psi, const SymmetricState& phi, SearchMode mode,
                                     const Tolerances& tol, std::uint64_t seed) {
  if (psi.n() != phi.n()) throw Error(ErrorKind::DimensionMismatch, "states have different n");
  tol.validate();
  if (mode == SearchMode::Numeric) {
    const NumericFit fit = numeric_witness_search(psi, phi, tol, seed);
    if (fit.residual <= tol.eps_match) return Equivalent{fit.witness, fit.residual};
    return Undecided{fit.residual};
  }

  const RootSpectrum r1 = majorana_spectrum(psi, tol);
  const RootSpectrum r2 = majorana_spectrum(phi, tol);
  const auto p1 = multiplicity_pattern(r1);
  const auto p2 = multiplicity_pattern(r2);
  if (p1 != p2) {
    return Inequivalent{"multiplicity pattern mismatch: " + pattern_text(p1) + " vs " + pattern_text(p2)};
  }
  const auto outcome = match_and_verify(psi, r1, phi, r2, tol);
  if (outcome.verified) return *outcome.verified;
  if (outcome.any_map) {
    std::ostringstream os;
    os << "root maps exist but no witness verifies (best residual " << outcome.best_residual << ")";
    return Inequivalent{os.str()};
  }
  return Inequivalent{"no projective map carries the roots of psi onto those of phi (pattern " + pattern_text(p1) +
                      ")"};
}

}  // namespace symslocc
