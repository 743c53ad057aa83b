#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace symslocc {

using Complex = std::complex<double>;

/// One invertible 2x2 complex operator acting on a single qubit.
/// Invertibility is checked where an operator is used as part of an ILO.
using LocalOp = Eigen::Matrix2cd;

enum class ErrorKind {
  Argument,
  Overflow,
  DimensionMismatch,
  NotSymmetric,
  ZeroState,
  Singular,
  AnnihilationViolated,
  NoNonProportionalPair,
  NotConnected,
  ClassMismatch,
  Parse,
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical thresholds shared by every decision in the library.
struct Tolerances {
  double eps_zero = 1e-12;   // absolute/relative zero test
  double eps_prop = 1e-9;    // operator proportionality
  double eps_eig = 1e-8;     // eigenvalue coincidence
  double eps_match = 1e-8;   // ray (state up to scale) match
  double eps_root = 1e-7;    // chordal root clustering and matching
  double eps_annihilate = 1e-9;  // Dicke coefficient vanishing in the reduction
  int restarts = 50;         // numeric witness search starts

  /// Throws Error(Argument) unless every threshold is positive and restarts >= 1.
  void validate() const;
};

/// SLOCC class labels. Other is only produced by standalone classification.
enum class ClassTag { Separable, W, GHZ, Other };

std::string_view to_string(ClassTag tag);
ClassTag class_tag_from_string(std::string_view name);

}  // namespace symslocc
