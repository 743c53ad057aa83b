// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "symslocc/cli.hpp"
#include "symslocc/dicke.hpp"
#include "symslocc/equivalence.hpp"
#include "symslocc/fixtures.hpp"
#include "symslocc/fuzz.hpp"
#include "symslocc/io.hpp"
#include "symslocc/local_ops.hpp"
#include "symslocc/random.hpp"
#include "symslocc/spectrum.hpp"
#include "symslocc/theorem.hpp"

using namespace symslocc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// |00> (x) rest + (|01> + |10>) (x) rest' + |11> (x) rest'', pair on qubits 0 and 1.
std::vector<Complex> recursion_rhs(int n, int k) {
  const int m = n - 2;
  // Weight-j indicator on m qubits, enumerated directly.
  auto rest = [&](int j) {
    std::vector<Complex> v(std::size_t{1} << m, 0.0);
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (std::popcount(b) == j) v[b] = 1.0;
    }
    return v;
  };
  const auto r0 = rest(k), r1 = rest(k - 1), r2 = rest(k - 2);
  std::vector<Complex> out(std::size_t{1} << n, 0.0);
  for (std::size_t idx = 0; idx < r0.size(); ++idx) {
    out[(idx << 2) | 0b00] += r0[idx];
    out[(idx << 2) | 0b01] += r1[idx];
    out[(idx << 2) | 0b10] += r1[idx];
    out[(idx << 2) | 0b11] += r2[idx];
  }
  return out;
}

Outcome dicke_recursion() {
  int checked = 0, bad = 0;
  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto lhs = basis_state_full(n, k);
      const auto rhs = recursion_rhs(n, k);
      ++checked;
      if (!std::equal(lhs.amps().begin(), lhs.amps().end(), rhs.begin())) ++bad;
    }
  }
  return {bad == 0, std::to_string(checked) + " (n,k) pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome fast_path() {
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    Rng rng(mix_seed(1001, static_cast<std::uint64_t>(n)));
    for (int t = 0; t < 200; ++t) {
      const LocalOp a = random_invertible(rng);
      const SymmetricState s = random_symmetric_state(rng, n);
      const SymmetricState fast = apply_symmetric(a, s);
      const SymmetricState slow = from_full(apply_general(IloTuple(n, a), to_full(s)));
      double diff = 0.0;
      for (int k = 0; k <= n; ++k) diff = std::max(diff, std::abs(fast[k] - slow[k]));
      worst = std::max(worst, diff / slow.max_abs());
    }
  }
  return {worst <= 1e-10, "2200 pairs, max relative error " + sci(worst)};
}

Outcome separable_example() {
  const IloTuple t = separable_pair_tuple(1.0, 0.0, 1.0, 1.0, 1.0, 2.0);
  const FullState image = apply_general(t, to_full(make_sep(2)));
  const SymmetricState phi = from_full(image);
  const ClassTag cls = classify(phi);
  const WitnessReport w = symmetric_witness(make_sep(2), phi, t);
  const bool ok = cls == ClassTag::Separable && w.residual <= 1e-10;
  return {ok, "class " + std::string(to_string(cls)) + ", witness residual " + sci(w.residual)};
}

Outcome ghz3_family() {
  Rng rng(4242);
  const SymmetricState ghz = make_ghz(3);
  int failures = 0;
  double worst_sym = 0.0, worst_res = 0.0;
  for (int t = 0; t < 100; ++t) {
    Complex p[5];
    for (auto& z : p) {
      do z = rng.complex_normal(); while (std::abs(z) < 0.1);
    }
    try {
      const IloTuple ops = ghz3_symmetric_tuple(p[0], p[1], p[2], p[3], p[4]);
      const FullState image = apply_general(ops, to_full(ghz));
      const double sym = symmetry_residual(image);
      worst_sym = std::max(worst_sym, sym);
      const SymmetricState phi = from_full(image);
      const WitnessReport w = symmetric_witness(ghz, phi, ops);
      worst_res = std::max(worst_res, w.residual);
      if (sym > 1e-10 || w.class_tag != ClassTag::GHZ || w.residual > 1e-8) ++failures;
    } catch (const Error& e) {
      ++failures;
      std::fprintf(stderr, "  ghz3 trial %d: %s\n", t, e.what());
    }
  }
  return {failures == 0, "100 tuples, " + std::to_string(failures) + " failures, max symmetry residual " +
                             sci(worst_sym) + ", max witness residual " + sci(worst_res)};
}

// Shared by criteria 5 and 6.
const FuzzReport& fuzz_run() {
  static const FuzzReport report = [] {
    FuzzConfig cfg;
    cfg.n_min = 3;
    cfg.n_max = 8;
    cfg.trials = 100;
    cfg.seed = 42;
    return fuzz_theorem(cfg);
  }();
  return report;
}

Outcome theorem_fuzz() {
  const FuzzReport& r = fuzz_run();
  double worst = 0.0;
  int rejected = 0, corrupt = 0;
  for (const auto& c : r.cells) {
    worst = std::max(worst, c.max_residual);
    rejected += c.corrupt_rejected;
    corrupt += c.corrupt_checked;
  }
  for (const auto& f : r.failures) {
    std::fprintf(stderr, "  fuzz failure n=%d class=%s trial=%d seed=%llu: %s\n", f.n,
                 std::string(to_string(f.intended)).c_str(), f.trial, static_cast<unsigned long long>(f.seed),
                 f.error.c_str());
  }
  return {r.ok(), std::to_string(r.total_trials()) + " trials, " + std::to_string(r.total_failures()) +
                      " failures, max residual " + sci(worst) + ", corrupted bundles rejected " +
                      std::to_string(rejected) + "/" + std::to_string(corrupt)};
}

Outcome annihilation() {
  const FuzzReport& r = fuzz_run();
  double c1 = 0.0, c2 = 0.0;
  int n1 = 0, n2 = 0;
  for (const auto& c : r.cells) {
    c1 = std::max(c1, c.max_annihilation_case1);
    c2 = std::max(c2, c.max_annihilation_case2);
    n1 += c.case1;
    n2 += c.case2;
  }
  return {c1 <= 1e-9 && c2 <= 1e-9, std::to_string(n1) + " Case-1 reductions max " + sci(c1) + ", " +
                                        std::to_string(n2) + " Case-2 reductions max " + sci(c2)};
}

bool inequivalent(const SymmetricState& a, const SymmetricState& b) {
  return std::holds_alternative<Inequivalent>(check_equivalence(a, b, SearchMode::Exact));
}

Outcome inequivalence_certificates() {
  int bad = 0;
  for (int n = 3; n <= 8; ++n) {
    if (!inequivalent(make_w(n), make_ghz(n))) ++bad;
  }
  const SymmetricState d42 = make_dicke(4, 2);
  const bool other = classify(d42) == ClassTag::Other;
  const bool vs_ghz = inequivalent(d42, make_ghz(4));
  const bool vs_w = inequivalent(d42, make_w(4));
  return {bad == 0 && other && vs_ghz && vs_w,
          "W/GHZ n=3..8 misses " + std::to_string(bad) + "; Dicke(4,2) Other=" + (other ? "yes" : "no") +
              " vs GHZ_4 " + (vs_ghz ? "inequivalent" : "NOT inequivalent") + " vs W_4 " +
              (vs_w ? "inequivalent" : "NOT inequivalent")};
}

Outcome constructed_pairs() {
  const Tolerances tol;
  int exact_ok = 0, numeric_ok = 0, bad_witness = 0, total = 0;
  int worst_numeric_n = 0, worst_numeric = 101;
  for (int n = 3; n <= 8; ++n) {
    Rng rng(mix_seed(8008, static_cast<std::uint64_t>(n)));
    int numeric_n = 0;
    for (int t = 0; t < 100; ++t) {
      const LocalOp a = random_invertible(rng);
      const SymmetricState psi = random_symmetric_state(rng, n);
      const SymmetricState phi = apply_symmetric(a, psi);
      ++total;
      const auto exact = check_equivalence(psi, phi, SearchMode::Exact, tol);
      if (const auto* eq = std::get_if<Equivalent>(&exact)) {
        if (witness_residual(eq->witness, psi, phi) <= tol.eps_match) ++exact_ok;
      }
      const auto numeric = check_equivalence(psi, phi, SearchMode::Numeric, tol, static_cast<std::uint64_t>(t));
      if (const auto* eq = std::get_if<Equivalent>(&numeric)) {
        if (witness_residual(eq->witness, psi, phi) <= tol.eps_match) {
          ++numeric_ok;
          ++numeric_n;
        } else {
          ++bad_witness;
        }
      }
    }
    if (numeric_n < worst_numeric) {
      worst_numeric = numeric_n;
      worst_numeric_n = n;
    }
  }
  const bool ok = exact_ok == total && numeric_ok * 100 >= 95 * total && bad_witness == 0;
  return {ok, "exact " + std::to_string(exact_ok) + "/" + std::to_string(total) + ", numeric " +
                  std::to_string(numeric_ok) + "/" + std::to_string(total) + " (worst n=" +
                  std::to_string(worst_numeric_n) + ": " + std::to_string(worst_numeric) +
                  "/100), unverified witnesses " + std::to_string(bad_witness)};
}

Outcome root_covariance() {
  int bad = 0;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    Rng rng(mix_seed(909, static_cast<std::uint64_t>(n)));
    for (int t = 0; t < 100; ++t) {
      const LocalOp a = random_invertible(rng);
      const SymmetricState s = random_symmetric_state(rng, n);
      const RootSpectrum image = majorana_spectrum(apply_symmetric(a, s));
      const RootSpectrum mapped = map_spectrum(root_action(a), majorana_spectrum(s));
      const double d = spectrum_distance(mapped, image);
      worst = std::max(worst, d);
      if (d > 1e-7 || multiplicity_pattern(mapped) != multiplicity_pattern(image)) ++bad;
    }
  }
  return {bad == 0, "700 trials, " + std::to_string(bad) + " violations, max chordal distance " + sci(worst)};
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_sequences() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "symslocc_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto f = [&](const char* name) { return (dir / name).string(); };

  io::write_state_file(f("ghz3.json"), make_ghz(3));
  io::write_state_file(f("w3.json"), make_w(3));
  const IloTuple ops = ghz3_symmetric_tuple(1.0, 1.0, 1.0, 2.0, 3.0);
  io::write_state_file(f("psi.json"), make_ghz(3));
  io::write_state_file(f("phi.json"), from_full(apply_general(ops, to_full(make_ghz(3)))));
  io::write_ilo_file(f("tuple.json"), ops);

  struct Step {
    std::vector<std::string> args;
    int expected;
    std::string first_line;
  };
  const std::vector<Step> steps = {
      {{"classify", f("ghz3.json")}, 0, "GHZ"},
      {{"equiv", f("w3.json"), f("ghz3.json"), "--mode", "exact"}, 1, "INEQUIVALENT"},
      {{"symmetrize", f("psi.json"), f("phi.json"), f("tuple.json")}, 0, "class GHZ"},
      {{"equiv", f("ghz3.json"), f("phi.json"), "--mode", "numeric"}, 0, "EQUIVALENT"},
      {{"random", "--n", "5", "--class", "w"}, 0, "n = 5 (unnormalized Dicke coefficients)"},
      {{"fuzz", "--n-min", "3", "--n-max", "4", "--trials", "5"}, 0, "n= 3  Separable  5/5 passed"},
      {{"fuzz", "--trials", "0"}, 0, "trials 0, failures 0"},
  };
  int bad = 0;
  std::string notes;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    std::string reports[2], texts[2];
    int codes[2];
    for (int run = 0; run < 2; ++run) {
      const std::string rep = f(("report" + std::to_string(run) + ".json").c_str());
      std::vector<std::string> args{"--seed", "7", "--report", rep};
      args.insert(args.end(), s.args.begin(), s.args.end());
      codes[run] = cli(args, &texts[run]);
      reports[run] = slurp(rep);
    }
    const bool first_ok = texts[0].rfind(s.first_line, 0) == 0 || texts[0].find(s.first_line) != std::string::npos;
    if (codes[0] != s.expected || codes[1] != s.expected || reports[0] != reports[1] || reports[0].empty() ||
        texts[0] != texts[1] || !first_ok) {
      ++bad;
      notes += " step" + std::to_string(i) + "(exit " + std::to_string(codes[0]) + ")";
    }
  }
  if (cli({"classify", f("missing.json")}) != 2) {
    ++bad;
    notes += " missing-file";
  }
  fs::remove_all(dir);
  return {bad == 0, std::to_string(steps.size()) + " command sequences run twice, " + std::to_string(bad) +
                        " mismatches" + notes};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Dicke recursion identity, n=2..10", 5, dicke_recursion},
      {2, "apply_symmetric vs full-vector oracle, n=2..12", 60, fast_path},
      {3, "separable pair fixture on |00>", 5, separable_example},
      {4, "three-qubit GHZ tuple family", 30, ghz3_family},
      {5, "witness fuzz n=3..8, 100 trials per class", 300, theorem_fuzz},
      {6, "coefficient annihilation in Case 1 / Case 2", 300, annihilation},
      {7, "inequivalence certificates", 30, inequivalence_certificates},
      {8, "exact and numeric equivalence on constructed pairs", 300, constructed_pairs},
      {9, "root-action covariance, n=2..8", 30, root_covariance},
      {10, "CLI exit codes and report determinism", 60, cli_sequences},
  };

  const auto suite_start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    if (!o.pass) ++failed;
    std::printf("%s [%2d] %s: %s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), secs, c.time_limit_s);
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              total);
  return failed == 0 ? 0 : 1;
}
