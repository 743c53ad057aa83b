#include "symslocc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "symslocc/equivalence.hpp"
#include "symslocc/fuzz.hpp"
#include "symslocc/io.hpp"
#include "symslocc/random.hpp"
#include "symslocc/theorem.hpp"

namespace symslocc {

namespace {

using io::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string fmt_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

void print_op(std::ostream& out, const LocalOp& m) {
  for (int r = 0; r < 2; ++r) {
    out << "  [ " << std::setw(36) << fmt_complex(m(r, 0)) << "   " << std::setw(36) << fmt_complex(m(r, 1))
        << " ]\n";
  }
}

void print_state(std::ostream& out, const SymmetricState& s) {
  out << "n = " << s.n() << " (unnormalized Dicke coefficients)\n";
  for (int k = 0; k <= s.n(); ++k) out << "  a_" << k << " = " << fmt_complex(s[k]) << "\n";
}

json form_to_json(const CanonicalForm& f) {
  return json{{"class", to_string(f.class_tag)},
              {"case", to_string(f.case_taken)},
              {"transform", io::op_to_json(f.transform)},
              {"scale", io::complex_to_json(f.scale)},
              {"residual", f.residual},
              {"annihilation", f.annihilation},
              {"pair", json::array({f.pair.first, f.pair.second})},
              {"condition", f.condition}};
}

LocalOp parse_op_argument(const std::string& text) {
  if (std::filesystem::exists(text)) return io::op_from_json(io::read_json_file(text));
  try {
    return io::op_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("--op: ") + e.what());
  }
}

struct GlobalOptions {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string report;

  Tolerances tolerances() const {
    Tolerances t;
    if (tol) t.eps_match = *tol;
    t.validate();
    return t;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide SLOCC equivalence of symmetric N-qubit states", "symslocc"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--tol", global.tol, "State-match tolerance eps_match (default 1e-8)");
  app.add_option("--seed", global.seed, "Seed for every random choice");
  app.add_option("--report", global.report, "Write a machine-readable JSON report to this path");

  std::string state_a, state_b, tuple_path;
  auto* classify_cmd = app.add_subcommand("classify", "Report Separable, W, GHZ or Other");
  classify_cmd->add_option("state", state_a, "State file")->required();

  std::string mode = "exact";
  std::optional<int> restarts;
  auto* equiv_cmd = app.add_subcommand("equiv", "Decide whether phi = A^(x)n psi for one operator A");
  equiv_cmd->add_option("state1", state_a, "First state file")->required();
  equiv_cmd->add_option("state2", state_b, "Second state file")->required();
  equiv_cmd->add_option("--mode", mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
  equiv_cmd->add_option("--restarts", restarts, "Numeric-mode starts (default 50)")->check(CLI::PositiveNumber);

  auto* sym_cmd = app.add_subcommand("symmetrize", "Turn a connecting tuple into one symmetric witness");
  sym_cmd->add_option("psi", state_a, "Source state file")->required();
  sym_cmd->add_option("phi", state_b, "Target state file")->required();
  sym_cmd->add_option("tuple", tuple_path, "ILO file connecting psi to phi")->required();

  std::string op_text, out_path;
  auto* apply_cmd = app.add_subcommand("apply", "Apply A^(x)n or a tuple to a state");
  apply_cmd->add_option("state", state_a, "State file")->required();
  auto* op_opt = apply_cmd->add_option("--op", op_text, "2x2 operator as inline JSON or a file");
  auto* tuple_opt = apply_cmd->add_option("--tuple", tuple_path, "ILO file");
  op_opt->excludes(tuple_opt);
  apply_cmd->add_option("-o,--output", out_path, "Write the resulting state file");

  int n = 0;
  std::string cls = "ghz";
  auto* random_cmd = app.add_subcommand("random", "Draw a random member of a class");
  random_cmd->add_option("--n", n, "Qubit count")->required()->check(CLI::Range(2, 64));
  random_cmd->add_option("--class", cls, "sep, w, ghz or haar")->check(CLI::IsMember({"sep", "w", "ghz", "haar"}));
  random_cmd->add_option("-o,--output", out_path, "Write the state file");

  FuzzConfig fuzz_cfg;
  bool no_rejection = false;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Exercise the witness construction on random fixtures");
  fuzz_cmd->add_option("--n-min", fuzz_cfg.n_min)->check(CLI::Range(2, 12));
  fuzz_cmd->add_option("--n-max", fuzz_cfg.n_max)->check(CLI::Range(2, 12));
  fuzz_cmd->add_option("--trials", fuzz_cfg.trials, "Trials per (n, class)")->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--threads", fuzz_cfg.threads, "Worker threads (0 = all cores)");
  fuzz_cmd->add_flag("--no-rejection-check", no_rejection, "Skip the perturbed-bundle rejection check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const Tolerances tol = global.tolerances();
    json report;
    int code = kExitOk;

    if (*classify_cmd) {
      const SymmetricState s = io::read_state_file(state_a);
      const ClassTag tag = classify(s, tol);
      out << to_string(tag) << "\n";
      report = {{"command", "classify"},
                {"n", s.n()},
                {"class", to_string(tag)},
                {"pattern", multiplicity_pattern(majorana_spectrum(s, tol))}};
      code = tag == ClassTag::Other ? kExitNegative : kExitOk;
    } else if (*equiv_cmd) {
      const SymmetricState psi = io::read_state_file(state_a);
      const SymmetricState phi = io::read_state_file(state_b);
      Tolerances t = tol;
      if (restarts) t.restarts = *restarts;
      const auto verdict =
          check_equivalence(psi, phi, mode == "exact" ? SearchMode::Exact : SearchMode::Numeric, t, global.seed);
      report = {{"command", "equiv"}, {"mode", mode}};
      if (const auto* eq = std::get_if<Equivalent>(&verdict)) {
        out << "EQUIVALENT\nwitness A (phi ~ A^(x)n psi):\n";
        print_op(out, eq->witness);
        out << "residual " << fmt_double(eq->residual) << "\n";
        report["verdict"] = "EQUIVALENT";
        report["witness"] = io::op_to_json(eq->witness);
        report["residual"] = eq->residual;
      } else if (const auto* ne = std::get_if<Inequivalent>(&verdict)) {
        out << "INEQUIVALENT\n" << ne->reason << "\n";
        report["verdict"] = "INEQUIVALENT";
        report["reason"] = ne->reason;
        code = kExitNegative;
      } else {
        const auto& und = std::get<Undecided>(verdict);
        out << "UNDECIDED\nbest residual " << fmt_double(und.best_residual) << "\n";
        report["verdict"] = "UNDECIDED";
        report["best_residual"] = und.best_residual;
        code = kExitNegative;
      }
    } else if (*sym_cmd) {
      const SymmetricState psi = io::read_state_file(state_a);
      const SymmetricState phi = io::read_state_file(state_b);
      const IloTuple ops = io::read_ilo_file(tuple_path, tol);
      const WitnessReport w = symmetric_witness(psi, phi, ops, tol);
      out << "class " << to_string(w.class_tag) << (w.trivial ? " (all operators proportional)" : "") << "\n";
      out << "witness A (phi = A^(x)n psi):\n";
      print_op(out, w.witness);
      out << "residual " << fmt_double(w.residual) << "\n";
      report = {{"command", "symmetrize"},
                {"class", to_string(w.class_tag)},
                {"witness", io::op_to_json(w.witness)},
                {"residual", w.residual},
                {"trivial", w.trivial}};
      if (w.psi_form) report["psi_form"] = form_to_json(*w.psi_form);
      if (w.phi_form) report["phi_form"] = form_to_json(*w.phi_form);
    } else if (*apply_cmd) {
      const SymmetricState s = io::read_state_file(state_a);
      SymmetricState result = s;
      if (!op_text.empty()) {
        result = apply_symmetric(parse_op_argument(op_text), s);
      } else if (!tuple_path.empty()) {
        const IloTuple ops = io::read_ilo_file(tuple_path, tol);
        result = from_full(apply_general(ops, to_full(s)), tol);
      } else {
        throw Error(ErrorKind::Argument, "apply needs --op or --tuple");
      }
      print_state(out, result);
      if (!out_path.empty()) io::write_state_file(out_path, result);
      report = {{"command", "apply"}, {"state", io::state_to_json(result)}};
    } else if (*random_cmd) {
      Rng rng(global.seed);
      const SymmetricState s = cls == "haar" ? haar_symmetric_state(rng, n)
                                             : apply_symmetric(random_invertible(rng), canonical_state(class_tag_from_string(cls), n));
      print_state(out, s);
      if (!out_path.empty()) io::write_state_file(out_path, s);
      report = {{"command", "random"}, {"class", cls}, {"seed", global.seed}, {"state", io::state_to_json(s)}};
    } else if (*fuzz_cmd) {
      fuzz_cfg.seed = global.seed;
      fuzz_cfg.tol = tol;
      fuzz_cfg.check_rejection = !no_rejection;
      const FuzzReport fr = fuzz_theorem(fuzz_cfg);
      for (const auto& c : fr.cells) {
        out << "n=" << std::setw(2) << c.n << "  " << std::left << std::setw(9) << to_string(c.cls) << std::right
            << "  " << c.passed << "/" << c.trials << " passed"
            << "  case1=" << c.case1 << " case2=" << c.case2 << " trivial=" << c.trivial
            << "  max residual " << fmt_double(c.max_residual) << "\n";
      }
      out << "trials " << fr.total_trials() << ", failures " << fr.total_failures() << "\n";
      for (const auto& f : fr.failures) {
        out << "  FAIL n=" << f.n << " class=" << to_string(f.intended) << " trial=" << f.trial
            << " seed=" << f.seed << ": " << f.error << "\n";
      }
      report = to_json(fr);
      code = fr.ok() ? kExitOk : kExitNegative;
    }

    if (!global.report.empty()) io::write_json_file(global.report, report);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const ErrorKind k = e.kind();
    const bool usage = k == ErrorKind::Parse || k == ErrorKind::Argument || k == ErrorKind::DimensionMismatch ||
                       k == ErrorKind::ZeroState || k == ErrorKind::Singular || k == ErrorKind::NotSymmetric ||
                       k == ErrorKind::Overflow;
    return usage ? kExitUsage : kExitNegative;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace symslocc
