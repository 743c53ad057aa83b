#include "symslocc/types.hpp"

#include <cmath>

namespace symslocc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument: return "ArgumentError";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::AnnihilationViolated: return "AnnihilationViolated";
    case ErrorKind::NoNonProportionalPair: return "NoNonProportionalPair";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "UnknownError";
}

void Tolerances::validate() const {
  for (double v : {eps_zero, eps_prop, eps_eig, eps_match, eps_root, eps_annihilate}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::Argument, "tolerances must be finite and strictly positive");
    }
  }
  if (restarts < 1) throw Error(ErrorKind::Argument, "restarts must be >= 1");
}

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::Separable: return "Separable";
    case ClassTag::W: return "W";
    case ClassTag::GHZ: return "GHZ";
    case ClassTag::Other: return "Other";
  }
  return "Other";
}

ClassTag class_tag_from_string(std::string_view name) {
  if (name == "Separable" || name == "sep" || name == "separable") return ClassTag::Separable;
  if (name == "W" || name == "w") return ClassTag::W;
  if (name == "GHZ" || name == "ghz") return ClassTag::GHZ;
  if (name == "Other" || name == "other") return ClassTag::Other;
  throw Error(ErrorKind::Argument, "unknown class tag '" + std::string(name) + "'");
}

}  // namespace symslocc
