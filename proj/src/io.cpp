#include "symslocc/io.hpp"

#include <fstream>
#include <sstream>

namespace symslocc::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

double number(const json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("complex value must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json state_to_json(const SymmetricState& s) {
  json coeffs = json::array();
  for (const auto& a : s.coeffs()) coeffs.push_back(complex_to_json(a));
  return json{{"n", s.n()}, {"basis", kBasisTag}, {"coeffs", std::move(coeffs)}};
}

SymmetricState state_from_json(const json& j) {
  if (!j.is_object()) parse_error("state file must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) parse_error("state file needs integer field 'n'");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) parse_error("state file needs array field 'coeffs'");
  if (j.contains("basis") && j["basis"] != kBasisTag) {
    parse_error("unsupported basis '" + j["basis"].dump() + "'");
  }
  const int n = j["n"].get<int>();
  const auto& arr = j["coeffs"];
  if (n < 2) parse_error("state file: n must be >= 2");
  if (arr.size() != static_cast<std::size_t>(n) + 1) {
    parse_error("state file: expected " + std::to_string(n + 1) + " coefficients, got " +
                std::to_string(arr.size()));
  }
  std::vector<Complex> coeffs;
  for (const auto& c : arr) coeffs.push_back(complex_from_json(c));
  try {
    return SymmetricState(n, std::move(coeffs));
  } catch (const Error& e) {
    parse_error(std::string("state file: ") + e.what());
  }
}

json op_to_json(const LocalOp& m) {
  return json::array({json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1))}),
                      json::array({complex_to_json(m(1, 0)), complex_to_json(m(1, 1))})});
}

LocalOp op_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    parse_error("operator must be a 2x2 grid of [re, im] pairs");
  }
  LocalOp m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json ilo_to_json(const IloTuple& ops) {
  json arr = json::array();
  for (const auto& m : ops) arr.push_back(op_to_json(m));
  return json{{"ops", std::move(arr)}};
}

IloTuple ilo_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("ops") || !j["ops"].is_array()) {
    parse_error("ILO file needs array field 'ops'");
  }
  IloTuple ops;
  for (const auto& m : j["ops"]) {
    ops.push_back(op_from_json(m));
    if (!is_invertible(ops.back(), tol)) {
      parse_error("ILO file: operator " + std::to_string(ops.size() - 1) + " is not invertible");
    }
  }
  if (ops.empty()) parse_error("ILO file: no operators");
  return ops;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error("'" + path.string() + "': " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_error("cannot write '" + path.string() + "'");
  out << dump(j);
}

SymmetricState read_state_file(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }

void write_state_file(const std::filesystem::path& path, const SymmetricState& s) {
  write_json_file(path, state_to_json(s));
}

IloTuple read_ilo_file(const std::filesystem::path& path, const Tolerances& tol) {
  return ilo_from_json(read_json_file(path), tol);
}

void write_ilo_file(const std::filesystem::path& path, const IloTuple& ops) { write_json_file(path, ilo_to_json(ops)); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace symslocc::io
