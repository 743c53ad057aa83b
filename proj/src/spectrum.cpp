#include "symslocc/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "symslocc/local_ops.hpp"

namespace symslocc {

int RootSpectrum::total_multiplicity() const {
  int t = 0;
  for (const auto& p : points) t += p.multiplicity;
  return t;
}

RootPoint normalize_point(Complex u, Complex v, int multiplicity) {
  const double norm = std::sqrt(std::norm(u) + std::norm(v));
  if (!(norm > 0.0)) throw Error(ErrorKind::Argument, "projective point (0 : 0)");
  const Complex lead = std::abs(u) >= std::abs(v) ? u : v;
  const Complex phase = std::conj(lead) / std::abs(lead);
  return RootPoint{u * phase / norm, v * phase / norm, multiplicity};
}

double chordal_distance(const RootPoint& a, const RootPoint& b) {
  const double na = std::sqrt(std::norm(a.u) + std::norm(a.v));
  const double nb = std::sqrt(std::norm(b.u) + std::norm(b.v));
  return std::abs(a.u * b.v - a.v * b.u) / (na * nb);
}

namespace {

constexpr double kMaxClusterRadius = 0.5;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Binary form coefficients: index k multiplies v^k u^(n-k).
std::vector<Complex> form_coefficients(const SymmetricState& s) {
  const int n = s.n();
  std::vector<Complex> p(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    p[k] = sign * static_cast<double>(binom(n, k)) * s[k];
  }
  return p;
}

std::vector<Complex> form_from_points(const std::vector<RootPoint>& pts, int n) {
  std::vector<Complex> q{1.0};
  q.reserve(static_cast<std::size_t>(n) + 1);
  for (const auto& p : pts) {
    for (int m = 0; m < p.multiplicity; ++m) {
      q.push_back(0.0);
      for (std::size_t k = q.size() - 1; k >= 1; --k) q[k] = q[k] * p.v - q[k - 1] * p.u;
      q[0] *= p.v;
    }
  }
  return q;
}

// Relative Bombieri-norm distance between P and the best multiple of Q.
double form_residual(const std::vector<Complex>& p, const std::vector<Complex>& q, int n) {
  Complex qp{};
  double qq = 0.0;
  double pp = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = 1.0 / static_cast<double>(binom(n, k));
    qp += w * std::conj(q[k]) * p[k];
    qq += w * std::norm(q[k]);
    pp += w * std::norm(p[k]);
  }
  const Complex c = qp / qq;
  double err = 0.0;
  for (int k = 0; k <= n; ++k) {
    err += std::norm(c * q[k] - p[k]) / static_cast<double>(binom(n, k));
  }
  return std::sqrt(err / pp);
}

// Unnormalized raw roots, one per multiplicity unit.
std::vector<std::pair<Complex, Complex>> raw_roots(const std::vector<Complex>& p, double eps_zero) {
  const int n = static_cast<int>(p.size()) - 1;
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  if (!(scale > 0.0)) throw Error(ErrorKind::ZeroState, "vanishing polynomial");
  auto nonzero = [&](int k) { return std::abs(p[k]) > eps_zero * scale; };
  int lo = 0;
  while (!nonzero(lo)) ++lo;
  int hi = n;
  while (!nonzero(hi)) --hi;

  std::vector<std::pair<Complex, Complex>> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < lo; ++i) roots.emplace_back(1.0, 0.0);
  for (int i = hi; i < n; ++i) roots.emplace_back(0.0, 1.0);

  const int d = hi - lo;
  if (d == 0) return roots;
  const bool forward = std::abs(p[hi]) >= std::abs(p[lo]);
  // Monic coefficients c_0..c_{d-1} of the dehomogenized polynomial.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) {
    const Complex c = forward ? p[lo + i] / p[hi] : p[hi - i] / p[lo];
    companion(i, d - 1) = -c;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Internal, "companion eigensolver failed");
  for (int i = 0; i < d; ++i) {
    const Complex z = solver.eigenvalues()(i);
    if (forward) {
      roots.emplace_back(1.0, z);
    } else {
      roots.emplace_back(z, 1.0);
    }
  }
  return roots;
}

// Newton on the (m-1)-th derivative, where an m-fold root is simple.
Complex polish(const std::vector<Complex>& asc, int m, Complex z) {
  std::vector<Complex> f(asc);
  for (int d = 1; d < m; ++d) {
    for (std::size_t k = 1; k < f.size(); ++k) f[k - 1] = static_cast<double>(k) * f[k];
    f.pop_back();
  }
  if (f.size() < 2) return z;
  auto eval = [&](Complex x, Complex& deriv) {
    Complex val = f.back();
    deriv = 0.0;
    for (std::size_t k = f.size() - 1; k-- > 0;) {
      deriv = deriv * x + val;
      val = val * x + f[k];
    }
    return val;
  };
  Complex dv;
  double best = std::abs(eval(z, dv));
  for (int it = 0; it < 8 && dv != Complex{}; ++it) {
    const Complex next = z - eval(z, dv) / dv;
    Complex dn;
    const double r = std::abs(eval(next, dn));
    if (!(r < best)) break;
    z = next;
    best = r;
    dv = dn;
  }
  return z;
}

RootPoint cluster_centroid(const std::vector<Complex>& p, const std::vector<RootPoint>& raw,
                           const std::vector<std::size_t>& members) {
  Complex su{}, sv{};
  for (auto i : members) {
    su += raw[i].u;
    sv += raw[i].v;
  }
  const bool u_chart = std::abs(su) >= std::abs(sv);
  Complex mean{};
  for (auto i : members) mean += u_chart ? raw[i].v / raw[i].u : raw[i].u / raw[i].v;
  mean /= static_cast<double>(members.size());
  const int m = static_cast<int>(members.size());
  // u-chart: P(1, z) = sum p_k z^k; v-chart: P(w, 1) = sum p_k w^(n-k).
  std::vector<Complex> asc(p);
  if (!u_chart) std::reverse(asc.begin(), asc.end());
  mean = polish(asc, m, mean);
  return u_chart ? normalize_point(1.0, mean, m) : normalize_point(mean, 1.0, m);
}

std::vector<RootPoint> clustered(const std::vector<Complex>& p, const std::vector<RootPoint>& raw,
                                 DisjointSets& sets) {
  std::vector<std::vector<std::size_t>> groups(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) groups[sets.find(i)].push_back(i);
  std::vector<RootPoint> pts;
  for (const auto& g : groups) {
    if (!g.empty()) pts.push_back(cluster_centroid(p, raw, g));
  }
  return pts;
}

}  // namespace

RootSpectrum majorana_spectrum(const SymmetricState& s, const Tolerances& tol) {
  const int n = s.n();
  const auto p = form_coefficients(s);
  std::vector<RootPoint> raw;
  for (const auto& [u, v] : raw_roots(p, tol.eps_zero)) raw.push_back(normalize_point(u, v));

  struct Edge {
    double dist;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      edges.push_back({chordal_distance(raw[i], raw[j]), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.dist, x.a, x.b) < std::tie(y.dist, y.a, y.b); });

  DisjointSets sets(raw.size());
  std::size_t e = 0;
  for (; e < edges.size() && edges[e].dist <= tol.eps_root; ++e) sets.unite(edges[e].a, edges[e].b);
  std::vector<RootPoint> best = clustered(p, raw, sets);

  // Coarser single-linkage levels, kept when they still reproduce P.
  const double accept = 1e4 * tol.eps_zero;
  bool changed = false;
  for (; e < edges.size() && edges[e].dist <= kMaxClusterRadius; ++e) {
    changed = sets.unite(edges[e].a, edges[e].b) || changed;
    if (e + 1 < edges.size() && edges[e + 1].dist == edges[e].dist) continue;
    if (!changed) continue;
    changed = false;
    auto candidate = clustered(p, raw, sets);
    if (form_residual(p, form_from_points(candidate, n), n) <= accept) best = std::move(candidate);
  }

  std::stable_sort(best.begin(), best.end(),
                   [](const RootPoint& x, const RootPoint& y) { return x.multiplicity > y.multiplicity; });
  return RootSpectrum{n, std::move(best)};
}

std::vector<int> multiplicity_pattern(const RootSpectrum& r) {
  std::vector<int> m;
  for (const auto& p : r.points) m.push_back(p.multiplicity);
  std::sort(m.begin(), m.end(), std::greater<>());
  return m;
}

LocalOp root_action(const LocalOp& a) {
  LocalOp t;
  t << a(1, 1), a(1, 0), a(0, 1), a(0, 0);
  return t;
}

LocalOp witness_from_root_map(const LocalOp& t) { return root_action(t); }

namespace {

RootPoint apply_map(const LocalOp& t, const RootPoint& p) {
  return normalize_point(t(0, 0) * p.u + t(0, 1) * p.v, t(1, 0) * p.u + t(1, 1) * p.v, p.multiplicity);
}

// Projective map sending the first two columns' rays and the third point
// to the corresponding targets.
std::optional<LocalOp> map_through(const std::array<RootPoint, 3>& from, const std::array<RootPoint, 3>& to) {
  auto frame = [](const std::array<RootPoint, 3>& pts) -> std::optional<LocalOp> {
    LocalOp basis;
    basis << pts[0].u, pts[1].u, pts[0].v, pts[1].v;
    if (std::abs(det(basis)) < 1e-14) return std::nullopt;
    const Eigen::Vector2cd coef = basis.inverse() * Eigen::Vector2cd(pts[2].u, pts[2].v);
    LocalOp f;
    f.col(0) = coef(0) * basis.col(0);
    f.col(1) = coef(1) * basis.col(1);
    return f;
  };
  const auto f_from = frame(from);
  const auto f_to = frame(to);
  if (!f_from || !f_to) return std::nullopt;
  return LocalOp(*f_to * f_from->inverse());
}

bool maps_onto(const LocalOp& t, const RootSpectrum& r1, const RootSpectrum& r2, double eps) {
  if (std::abs(det(t)) <= 1e-14 * t.squaredNorm()) return false;
  std::vector<bool> used(r2.points.size());
  for (const auto& p : r1.points) {
    const RootPoint img = apply_map(t, p);
    std::size_t best = r2.points.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r2.points.size(); ++j) {
      if (used[j] || r2.points[j].multiplicity != p.multiplicity) continue;
      const double d = chordal_distance(img, r2.points[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == r2.points.size() || best_d > eps) return false;
    used[best] = true;
  }
  return true;
}

LocalOp frame_for(const RootPoint& p) {
  LocalOp f;
  f << p.u, -std::conj(p.v), p.v, std::conj(p.u);
  return f;
}

}  // namespace

RootSpectrum map_spectrum(const LocalOp& t, const RootSpectrum& r) {
  RootSpectrum out{r.n, {}};
  for (const auto& p : r.points) out.points.push_back(apply_map(t, p));
  return out;
}

double spectrum_distance(const RootSpectrum& a, const RootSpectrum& b) {
  if (a.total_multiplicity() != b.total_multiplicity()) return std::numeric_limits<double>::infinity();
  std::vector<RootPoint> xa, xb;
  for (const auto& p : a.points) xa.insert(xa.end(), static_cast<std::size_t>(p.multiplicity), p);
  for (const auto& p : b.points) xb.insert(xb.end(), static_cast<std::size_t>(p.multiplicity), p);
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < xa.size(); ++i) {
    for (std::size_t j = 0; j < xb.size(); ++j) pairs.push_back({chordal_distance(xa[i], xb[j]), i, j});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
  std::vector<bool> ua(xa.size()), ub(xb.size());
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& pr : pairs) {
    if (ua[pr.i] || ub[pr.j]) continue;
    ua[pr.i] = ub[pr.j] = true;
    worst = std::max(worst, pr.d);
    if (++matched == xa.size()) break;
  }
  return worst;
}

bool for_each_root_map(const RootSpectrum& r1, const RootSpectrum& r2, const Tolerances& tol,
                       const std::function<bool(const LocalOp&)>& visit) {
  if (r1.total_multiplicity() != r2.total_multiplicity()) return false;
  if (multiplicity_pattern(r1) != multiplicity_pattern(r2)) return false;
  const auto& p = r1.points;
  const auto& q = r2.points;

  if (p.size() == 1) {
    const LocalOp t = frame_for(q[0]) * frame_for(p[0]).inverse();
    return maps_onto(t, r1, r2, tol.eps_root) && visit(t);
  }

  if (p.size() == 2) {
    for (const auto& [a, b] : {std::pair{0, 1}, std::pair{1, 0}}) {
      if (p[0].multiplicity != q[a].multiplicity || p[1].multiplicity != q[b].multiplicity) continue;
      LocalOp src, dst;
      src << p[0].u, p[1].u, p[0].v, p[1].v;
      dst << q[a].u, q[b].u, q[a].v, q[b].v;
      const LocalOp t = dst * src.inverse();
      if (maps_onto(t, r1, r2, tol.eps_root) && visit(t)) return true;
    }
    return false;
  }

  // Anchor triple: the best-separated three distinct roots of r1.
  std::array<std::size_t, 3> anchor{0, 1, 2};
  double spread = -1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      for (std::size_t k = j + 1; k < p.size(); ++k) {
        const double s = std::min({chordal_distance(p[i], p[j]), chordal_distance(p[i], p[k]),
                                   chordal_distance(p[j], p[k])});
        if (s > spread) {
          spread = s;
          anchor = {i, j, k};
        }
      }
    }
  }
  const std::array<RootPoint, 3> from{p[anchor[0]], p[anchor[1]], p[anchor[2]]};

  struct Candidate {
    double cost;
    std::array<std::size_t, 3> idx;
  };
  std::vector<Candidate> candidates;
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (q[a].multiplicity != from[0].multiplicity) continue;
    for (std::size_t b = 0; b < q.size(); ++b) {
      if (b == a || q[b].multiplicity != from[1].multiplicity) continue;
      for (std::size_t c = 0; c < q.size(); ++c) {
        if (c == a || c == b || q[c].multiplicity != from[2].multiplicity) continue;
        const double cost = chordal_distance(from[0], q[a]) + chordal_distance(from[1], q[b]) +
                            chordal_distance(from[2], q[c]);
        candidates.push_back({cost, {a, b, c}});
      }
    }
  }
  // Nearest correspondences first, so r1 == r2 yields the identity.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.cost < y.cost; });
  for (const auto& cand : candidates) {
    const auto t = map_through(from, {q[cand.idx[0]], q[cand.idx[1]], q[cand.idx[2]]});
    if (t && maps_onto(*t, r1, r2, tol.eps_root) && visit(*t)) return true;
  }
  return false;
}

std::optional<LocalOp> roots_match(const RootSpectrum& r1, const RootSpectrum& r2, const Tolerances& tol) {
  std::optional<LocalOp> found;
  for_each_root_map(r1, r2, tol, [&](const LocalOp& t) {
    found = t;
    return true;
  });
  return found;
}

}  // namespace symslocc
