#include "symslocc/theorem.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "symslocc/equivalence.hpp"

namespace symslocc {

std::string_view to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::Trivial: return "Trivial";
    case ReductionCase::Case1: return "Case1";
    case ReductionCase::Case2: return "Case2";
  }
  return "Trivial";
}

namespace {

void require_invertible(std::span<const LocalOp> ops, const Tolerances& tol) {
  for (std::size_t p = 0; p < ops.size(); ++p) {
    if (!is_invertible(ops[p], tol)) {
      throw Error(ErrorKind::Singular, "tuple operator " + std::to_string(p) + " is not invertible");
    }
  }
}

void require_length(std::span<const LocalOp> ops, int n) {
  if (ops.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::DimensionMismatch, "tuple has " + std::to_string(ops.size()) + " operators for " +
                                                  std::to_string(n) + " qubits");
  }
}

double condition_number(const LocalOp& s) {
  const Eigen::JacobiSVD<LocalOp> svd(s);
  const auto sv = svd.singularValues();
  return sv(0) / sv(1);
}

// W_2 = K^{(x)2} GHZ_2 with K = [[1, i], [1, -i]] / sqrt(2).
LocalOp w2_from_ghz2() {
  const Complex i{0.0, 1.0};
  LocalOp k;
  k << 1.0, i, 1.0, -i;
  return k / std::sqrt(2.0);
}

}  // namespace

std::optional<LocalOp> trivial_reduction(std::span<const LocalOp> ops, const Tolerances& tol) {
  if (ops.empty()) throw Error(ErrorKind::Argument, "empty tuple");
  require_invertible(ops, tol);
  Complex product = 1.0;
  for (std::size_t p = 1; p < ops.size(); ++p) {
    const auto c = proportionality(ops[0], ops[p], tol);
    if (!c) return std::nullopt;
    product *= *c;
  }
  return LocalOp(principal_root(product, static_cast<int>(ops.size())) * ops[0]);
}

std::optional<std::pair<int, int>> first_nonproportional_pair(std::span<const LocalOp> ops, const Tolerances& tol) {
  const int n = static_cast<int>(ops.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!proportionality(ops[i], ops[j], tol)) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

double invariance_residual(int i, int j, std::span<const LocalOp> ops, const SymmetricState& psi,
                           const Tolerances& tol) {
  const int n = psi.n();
  require_length(ops, n);
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw Error(ErrorKind::Argument, "invariance_residual needs two distinct operator indices");
  }
  const LocalOp m = inverse(ops[i], tol) * ops[j];
  const FullState full = to_full(psi);
  const FullState moved = apply_on_qubit(inverse(m, tol), 1, apply_on_qubit(m, 0, full));
  double diff = 0.0;
  for (std::size_t b = 0; b < full.amps().size(); ++b) diff += std::norm(moved[b] - full[b]);
  return std::sqrt(diff / full.norm_sq());
}

namespace {

// Right-multiplies t by a stabilizer of the canonical state so its columns
// have equal norm (and, for |0...0>, are orthogonal).
LocalOp balanced(const LocalOp& t, ClassTag tag, int n) {
  const Eigen::Vector2cd c0 = t.col(0);
  const Eigen::Vector2cd c1 = t.col(1);
  LocalOp out = t;
  if (tag == ClassTag::Separable) {
    Eigen::Vector2cd perp = c1 - (c0.dot(c1) / c0.squaredNorm()) * c0;
    if (perp.norm() == 0.0) perp = Eigen::Vector2cd(-std::conj(c0(1)), std::conj(c0(0)));
    out.col(1) = perp * (c0.norm() / perp.norm());
  } else if (tag == ClassTag::W) {
    // diag(s, s^(1-n)) fixes |W> up to scale.
    const double s = std::pow(c1.norm() / c0.norm(), 1.0 / n);
    out.col(0) = c0 * s;
    out.col(1) = c1 * std::pow(s, 1 - n);
  }
  return out;
}

}  // namespace

CanonicalForm reduce_to_canonical(const SymmetricState& psi, std::span<const LocalOp> ops, const Tolerances& tol) {
  const int n = psi.n();
  require_length(ops, n);
  require_invertible(ops, tol);
  const auto pair = first_nonproportional_pair(ops, tol);
  if (!pair) throw Error(ErrorKind::NoNonProportionalPair, "all operators are proportional; use trivial_reduction");

  const LocalOp m = inverse(ops[pair->first], tol) * ops[pair->second];
  const JordanReduction red = jordan_reduce(m, tol);
  if (std::holds_alternative<ScalarMultiple>(red)) {
    throw Error(ErrorKind::NoNonProportionalPair, "A_i^-1 A_j is a multiple of the identity");
  }
  const bool diagonal_case = std::holds_alternative<Diagonalizable>(red);
  LocalOp s = diagonal_case ? std::get<Diagonalizable>(red).S : std::get<JordanBlock>(red).S;
  // Column scaling keeps S^-1 M S diagonal / upper triangular and balances S.
  s.col(0).normalize();
  s.col(1).normalize();

  const SymmetricState reduced = apply_symmetric(inverse(s, tol), psi);
  const double top = reduced.max_abs();
  auto rel = [&](int k) { return std::abs(reduced[k]) / top; };
  auto vanishes = [&](int k) { return rel(k) <= tol.eps_annihilate; };

  CanonicalForm form;
  form.pair = *pair;
  form.condition = condition_number(s);
  form.case_taken = diagonal_case ? ReductionCase::Case1 : ReductionCase::Case2;
  const int first_zero = diagonal_case ? 1 : 2;
  const int last_zero = diagonal_case ? n - 1 : n;
  for (int k = first_zero; k <= last_zero; ++k) form.annihilation = std::max(form.annihilation, rel(k));
  if (form.annihilation > tol.eps_annihilate) {
    std::ostringstream os;
    os << "coefficients a_" << first_zero << "..a_" << last_zero << " of S^-1 psi reach " << form.annihilation
       << " of the largest (" << to_string(form.case_taken) << ")";
    throw AnnihilationViolation(form.case_taken, form.annihilation, os.str());
  }

  const Complex a0 = reduced[0];
  LocalOp sp = LocalOp::Zero();
  if (diagonal_case) {
    const Complex an = reduced[n];
    if (vanishes(n)) {
      form.class_tag = ClassTag::Separable;
      sp(0, 0) = principal_root(a0, n);
      sp(1, 1) = 1.0;
    } else if (vanishes(0)) {
      form.class_tag = ClassTag::Separable;
      sp(0, 1) = 1.0;
      sp(1, 0) = principal_root(an, n);
    } else {
      form.class_tag = ClassTag::GHZ;
      const double lift = std::pow(2.0, 1.0 / (2.0 * n));
      sp(0, 0) = lift * principal_root(a0, n);
      sp(1, 1) = lift * principal_root(an, n);
    }
  } else {
    const Complex a1 = reduced[1];
    if (vanishes(1)) {
      form.class_tag = ClassTag::Separable;
      sp(0, 0) = principal_root(a0, n);
      sp(1, 1) = 1.0;
    } else {
      form.class_tag = ClassTag::W;
      const double lift = std::pow(static_cast<double>(n), 1.0 / (2.0 * n));
      sp(0, 0) = lift;
      sp(0, 1) = lift * a0 / static_cast<double>(n);
      sp(1, 1) = lift * a1;
    }
  }

  form.transform = s * sp;
  if (n == 2 && form.class_tag == ClassTag::W) {
    form.class_tag = ClassTag::GHZ;
    form.transform = form.transform * w2_from_ghz2();
  }
  form.transform = balanced(form.transform, form.class_tag, n);
  const SymmetricState image = apply_symmetric(form.transform, canonical_state(form.class_tag, n));
  form.scale = ray_scale(image, psi);
  form.residual = ray_residual(image, psi);
  if (form.residual > tol.eps_match) {
    std::ostringstream os;
    os << "canonical reconstruction residual " << form.residual << " exceeds eps_match";
    throw Error(ErrorKind::Internal, os.str());
  }
  return form;
}

IloTuple invert_tuple(std::span<const LocalOp> ops, const Tolerances& tol) {
  IloTuple inv;
  inv.reserve(ops.size());
  for (const auto& a : ops) inv.push_back(inverse(a, tol));
  return inv;
}

namespace {

// Rescales a so that a^{(x)n} psi matches phi without a leftover factor.
LocalOp absorb_scale(const LocalOp& a, const SymmetricState& psi, const SymmetricState& phi) {
  const Complex c = ray_scale(apply_symmetric(a, psi), phi);
  return principal_root(c, psi.n()) * a;
}

}  // namespace

WitnessReport symmetric_witness(const SymmetricState& psi, const SymmetricState& phi, std::span<const LocalOp> ops,
                                const Tolerances& tol) {
  const int n = psi.n();
  if (phi.n() != n) throw Error(ErrorKind::DimensionMismatch, "states have different n");
  require_length(ops, n);
  require_invertible(ops, tol);

  const double connection = ray_residual(apply_general(ops, to_full(psi)), to_full(phi));
  if (connection > tol.eps_match) {
    std::ostringstream os;
    os << "tuple maps psi to a state at ray distance " << connection << " from phi";
    throw Error(ErrorKind::NotConnected, os.str());
  }

  WitnessReport report;
  if (const auto direct = trivial_reduction(ops, tol)) {
    report.trivial = true;
    report.class_tag = classify(psi, tol);
    report.witness = absorb_scale(*direct, psi, phi);
  } else {
    report.psi_form = reduce_to_canonical(psi, ops, tol);
    report.phi_form = reduce_to_canonical(phi, invert_tuple(ops, tol), tol);
    if (report.psi_form->class_tag != report.phi_form->class_tag) {
      throw Error(ErrorKind::ClassMismatch, "psi reduces to " + std::string(to_string(report.psi_form->class_tag)) +
                                                " but phi reduces to " +
                                                std::string(to_string(report.phi_form->class_tag)));
    }
    report.class_tag = report.psi_form->class_tag;
    report.witness =
        absorb_scale(report.phi_form->transform * inverse(report.psi_form->transform, tol), psi, phi);
  }
  report.residual = witness_residual(report.witness, psi, phi);
  if (report.residual > tol.eps_match) {
    report.witness = polish_witness(report.witness, psi, phi);
    report.residual = witness_residual(report.witness, psi, phi);
  }
  if (report.residual > tol.eps_match) {
    std::ostringstream os;
    os << "witness residual " << report.residual << " exceeds eps_match";
    throw Error(ErrorKind::Internal, os.str());
  }
  return report;
}

}  // namespace symslocc
