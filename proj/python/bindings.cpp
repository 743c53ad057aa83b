#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>
#include <vector>

#include "symslocc/dicke.hpp"
#include "symslocc/equivalence.hpp"
#include "symslocc/fixtures.hpp"
#include "symslocc/fuzz.hpp"
#include "symslocc/io.hpp"
#include "symslocc/local_ops.hpp"
#include "symslocc/spectrum.hpp"
#include "symslocc/theorem.hpp"

namespace py = pybind11;
using namespace symslocc;

namespace {

using Coeffs = Eigen::VectorXcd;

SymmetricState state(const Coeffs& c) {
  if (c.size() < 3) throw Error(ErrorKind::Argument, "need at least 3 coefficients (n >= 2)");
  return SymmetricState(static_cast<int>(c.size()) - 1, std::vector<Complex>(c.data(), c.data() + c.size()));
}

Coeffs coeffs(const SymmetricState& s) {
  Coeffs c(s.n() + 1);
  for (int k = 0; k <= s.n(); ++k) c(k) = s[k];
  return c;
}

FullState full(const Coeffs& a) {
  int n = 0;
  while ((Eigen::Index{1} << n) < a.size()) ++n;
  return FullState(n, std::vector<Complex>(a.data(), a.data() + a.size()));
}

Coeffs amps(const FullState& f) {
  const auto v = f.amps();
  return Eigen::Map<const Coeffs>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ClassTag tag(const std::string& name) { return class_tag_from_string(name); }

py::dict form_dict(const CanonicalForm& f) {
  py::dict d;
  d["class"] = std::string(to_string(f.class_tag));
  d["transform"] = f.transform;
  d["case"] = std::string(to_string(f.case_taken));
  d["scale"] = f.scale;
  d["residual"] = f.residual;
  d["annihilation"] = f.annihilation;
  d["pair"] = f.pair;
  d["condition"] = f.condition;
  return d;
}

py::dict verdict_dict(const EquivalenceVerdict& v) {
  py::dict d;
  if (const auto* e = std::get_if<Equivalent>(&v)) {
    d["verdict"] = "equivalent";
    d["witness"] = e->witness;
    d["residual"] = e->residual;
  } else if (const auto* i = std::get_if<Inequivalent>(&v)) {
    d["verdict"] = "inequivalent";
    d["reason"] = i->reason;
  } else {
    d["verdict"] = "undecided";
    d["residual"] = std::get<Undecided>(v).best_residual;
  }
  return d;
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetric SLOCC equivalence of multiqubit states";

  static py::exception<Error> error(m, "SymsloccError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(py::str(e.what()));
      exc.attr("kind") = py::str(std::string(to_string(e.kind())));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("eps_zero", &Tolerances::eps_zero)
      .def_readwrite("eps_prop", &Tolerances::eps_prop)
      .def_readwrite("eps_eig", &Tolerances::eps_eig)
      .def_readwrite("eps_match", &Tolerances::eps_match)
      .def_readwrite("eps_root", &Tolerances::eps_root)
      .def_readwrite("eps_annihilate", &Tolerances::eps_annihilate)
      .def_readwrite("restarts", &Tolerances::restarts);

  m.def("binom", &binom, py::arg("n"), py::arg("k"));
  m.def("make_sep", [](int n) { return coeffs(make_sep(n)); }, py::arg("n"));
  m.def("make_w", [](int n) { return coeffs(make_w(n)); }, py::arg("n"));
  m.def("make_ghz", [](int n) { return coeffs(make_ghz(n)); }, py::arg("n"));
  m.def("make_dicke", [](int n, int k) { return coeffs(make_dicke(n, k)); }, py::arg("n"), py::arg("k"));
  m.def("basis_state_full", [](int n, int k) { return amps(basis_state_full(n, k)); }, py::arg("n"), py::arg("k"));
  m.def("to_full", [](const Coeffs& c) { return amps(to_full(state(c))); }, py::arg("coeffs"));
  m.def(
      "from_full", [](const Coeffs& a, const Tolerances& tol) { return coeffs(from_full(full(a), tol)); },
      py::arg("amps"), py::arg("tol") = Tolerances{});

  m.def("det", &det, py::arg("m"));
  m.def("inverse", &inverse, py::arg("m"), py::arg("tol") = Tolerances{});
  m.def("proportionality", &proportionality, py::arg("m1"), py::arg("m2"), py::arg("tol") = Tolerances{});
  m.def(
      "jordan_reduce",
      [](const LocalOp& a, const Tolerances& tol) {
        py::dict d;
        const JordanReduction r = jordan_reduce(a, tol);
        if (const auto* v = std::get_if<Diagonalizable>(&r)) {
          d["kind"] = "diagonalizable";
          d["S"] = v->S;
          d["lambdas"] = py::make_tuple(v->lambda1, v->lambda2);
        } else if (const auto* j = std::get_if<JordanBlock>(&r)) {
          d["kind"] = "jordan";
          d["S"] = j->S;
          d["lambda"] = j->lambda;
        } else {
          d["kind"] = "scalar";
          d["lambda"] = std::get<ScalarMultiple>(r).lambda;
        }
        return d;
      },
      py::arg("m"), py::arg("tol") = Tolerances{});
  m.def(
      "apply_symmetric", [](const LocalOp& a, const Coeffs& c) { return coeffs(apply_symmetric(a, state(c))); },
      py::arg("a"), py::arg("coeffs"));
  m.def(
      "apply_general",
      [](const std::vector<LocalOp>& ops, const Coeffs& a) { return amps(apply_general(ops, full(a))); },
      py::arg("ops"), py::arg("amps"));

  m.def(
      "majorana_spectrum",
      [](const Coeffs& c, const Tolerances& tol) {
        py::list out;
        for (const auto& p : majorana_spectrum(state(c), tol).points) out.append(py::make_tuple(p.u, p.v, p.multiplicity));
        return out;
      },
      py::arg("coeffs"), py::arg("tol") = Tolerances{});
  m.def(
      "multiplicity_pattern",
      [](const Coeffs& c, const Tolerances& tol) { return multiplicity_pattern(majorana_spectrum(state(c), tol)); },
      py::arg("coeffs"), py::arg("tol") = Tolerances{});
  m.def(
      "classify", [](const Coeffs& c, const Tolerances& tol) { return std::string(to_string(classify(state(c), tol))); },
      py::arg("coeffs"), py::arg("tol") = Tolerances{});
  m.def(
      "check_equivalence",
      [](const Coeffs& psi, const Coeffs& phi, const std::string& mode, const Tolerances& tol, std::uint64_t seed) {
        SearchMode sm;
        if (mode == "exact") {
          sm = SearchMode::Exact;
        } else if (mode == "numeric") {
          sm = SearchMode::Numeric;
        } else {
          throw Error(ErrorKind::Argument, "mode must be 'exact' or 'numeric'");
        }
        return verdict_dict(check_equivalence(state(psi), state(phi), sm, tol, seed));
      },
      py::arg("psi"), py::arg("phi"), py::arg("mode") = "exact", py::arg("tol") = Tolerances{}, py::arg("seed") = 0);

  m.def(
      "reduce_to_canonical",
      [](const Coeffs& psi, const std::vector<LocalOp>& ops, const Tolerances& tol) {
        return form_dict(reduce_to_canonical(state(psi), ops, tol));
      },
      py::arg("psi"), py::arg("ops"), py::arg("tol") = Tolerances{});
  m.def(
      "symmetric_witness",
      [](const Coeffs& psi, const Coeffs& phi, const std::vector<LocalOp>& ops, const Tolerances& tol) {
        const WitnessReport r = symmetric_witness(state(psi), state(phi), ops, tol);
        py::dict d;
        d["witness"] = r.witness;
        d["class"] = std::string(to_string(r.class_tag));
        d["residual"] = r.residual;
        d["trivial"] = r.trivial;
        d["psi_form"] = r.psi_form ? py::object(form_dict(*r.psi_form)) : py::none();
        d["phi_form"] = r.phi_form ? py::object(form_dict(*r.phi_form)) : py::none();
        return d;
      },
      py::arg("psi"), py::arg("phi"), py::arg("ops"), py::arg("tol") = Tolerances{});

  m.def(
      "ghz3_symmetric_tuple", &ghz3_symmetric_tuple, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
      py::arg("e"));
  m.def(
      "generate_nonsymmetric_connector",
      [](const std::string& cls, int n, std::uint64_t seed, const Tolerances& tol) {
        const FixtureBundle b = generate_nonsymmetric_connector(tag(cls), n, seed, tol);
        py::dict d;
        d["psi"] = coeffs(b.psi);
        d["phi"] = coeffs(b.phi);
        d["tuple"] = b.tuple;
        d["intended_class"] = std::string(to_string(b.intended_class));
        d["seed"] = b.seed;
        return d;
      },
      py::arg("cls"), py::arg("n"), py::arg("seed"), py::arg("tol") = Tolerances{});
  m.def(
      "fuzz_theorem",
      [](int n_min, int n_max, int trials, std::uint64_t seed, unsigned threads) {
        FuzzConfig cfg;
        cfg.n_min = n_min;
        cfg.n_max = n_max;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        FuzzReport r;
        {
          py::gil_scoped_release release;
          r = fuzz_theorem(cfg);
        }
        return json_to_py(to_json(r));
      },
      py::arg("n_min") = 3, py::arg("n_max") = 6, py::arg("trials") = 50, py::arg("seed") = 42,
      py::arg("threads") = 0);
}
