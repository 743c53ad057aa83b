#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "symslocc/dicke.hpp"
#include "symslocc/local_ops.hpp"

namespace symslocc::io {

using nlohmann::json;

inline constexpr const char* kBasisTag = "dicke-unnormalized";

// State file: {"n": int, "basis": "dicke-unnormalized", "coeffs": [[re, im], ...]}
// ILO file:   {"ops": [ [[[re,im],[re,im]], [[re,im],[re,im]]], ... ]}  (row-major)
// Doubles are written in shortest round-trip form, so reading back is bit-exact.

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json state_to_json(const SymmetricState& s);
SymmetricState state_from_json(const json& j);

json op_to_json(const LocalOp& m);
LocalOp op_from_json(const json& j);

json ilo_to_json(const IloTuple& ops);
/// Every operator must be invertible within tol.eps_zero.
IloTuple ilo_from_json(const json& j, const Tolerances& tol = {});

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

SymmetricState read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const SymmetricState& s);
IloTuple read_ilo_file(const std::filesystem::path& path, const Tolerances& tol = {});
void write_ilo_file(const std::filesystem::path& path, const IloTuple& ops);

/// Pretty JSON text with a trailing newline; key order is sorted, so the
/// output is a pure function of the value.
std::string dump(const json& j);

}  // namespace symslocc::io
