#pragma once

#include <cmath>
#include <complex>

#include "symslocc/dicke.hpp"
#include "symslocc/local_ops.hpp"

namespace testutil {

inline double rel_diff(const symslocc::SymmetricState& x, const symslocc::SymmetricState& y) {
  double d = 0.0;
  double s = 0.0;
  for (int k = 0; k <= x.n(); ++k) {
    d = std::max(d, std::abs(x[k] - y[k]));
    s = std::max({s, std::abs(x[k]), std::abs(y[k])});
  }
  return s == 0.0 ? d : d / s;
}

inline double op_diff(const symslocc::LocalOp& a, const symslocc::LocalOp& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

// a is a nonzero multiple of b
inline bool proportional_to(const symslocc::LocalOp& a, const symslocc::LocalOp& b, double tol = 1e-8) {
  symslocc::Tolerances t;
  t.eps_prop = tol;
  return symslocc::proportionality(b, a, t).has_value();
}

}  // namespace testutil
