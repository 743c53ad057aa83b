#include "symslocc/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "symslocc/fixtures.hpp"
#include "symslocc/random.hpp"

namespace symslocc {

int FuzzReport::total_trials() const {
  int t = 0;
  for (const auto& c : cells) t += c.trials;
  return t;
}

namespace {

constexpr double kCorruption = 1e-3;

SymmetricState perturbed(const SymmetricState& s, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xC0FFEE));
  std::vector<Complex> c(s.coeffs().begin(), s.coeffs().end());
  const double scale = s.max_abs();
  for (auto& z : c) z += kCorruption * scale * rng.disc();
  return SymmetricState(s.n(), std::move(c));
}

}  // namespace

TrialOutcome run_fuzz_trial(ClassTag cls, int n, int trial, std::uint64_t trial_seed, const FuzzConfig& config) {
  TrialOutcome out;
  out.n = n;
  out.intended = cls;
  out.trial = trial;
  out.seed = trial_seed;
  try {
    const FixtureBundle bundle = generate_nonsymmetric_connector(cls, n, trial_seed, config.tol);
    const WitnessReport report = symmetric_witness(bundle.psi, bundle.phi, bundle.tuple, config.tol);
    out.recovered = report.class_tag;
    out.residual = report.residual;
    out.trivial = report.trivial;
    if (report.psi_form) {
      out.psi_case = report.psi_form->case_taken;
      out.psi_annihilation = report.psi_form->annihilation;
    }
    if (report.phi_form) {
      out.phi_case = report.phi_form->case_taken;
      out.phi_annihilation = report.phi_form->annihilation;
    }
    out.passed = out.recovered == cls && out.residual <= config.tol.eps_match;
    if (!out.passed) out.error = "recovered class or residual mismatch";

    if (config.check_rejection) {
      out.corrupt_checked = true;
      try {
        symmetric_witness(bundle.psi, perturbed(bundle.phi, trial_seed), bundle.tuple, config.tol);
      } catch (const Error& e) {
        out.corrupt_rejected = e.kind() == ErrorKind::NotConnected;
      }
      if (!out.corrupt_rejected) {
        out.passed = false;
        out.error = "perturbed bundle was not rejected as NotConnected";
      }
    }
  } catch (const AnnihilationViolation& e) {
    out.passed = false;
    out.violation_case = e.case_taken;
    out.violation = e.annihilation;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.passed = false;
    out.error = e.what();
  }
  return out;
}

FuzzReport fuzz_theorem(const FuzzConfig& config) {
  if (config.n_min < 2 || config.n_max > 12 || config.n_min > config.n_max) {
    throw Error(ErrorKind::Argument, "fuzz n range must lie within [2, 12]");
  }
  if (config.trials < 0) throw Error(ErrorKind::Argument, "trial count must be non-negative");
  config.tol.validate();

  struct Job {
    ClassTag cls;
    int n;
    int trial;
    std::size_t cell;
  };
  FuzzReport report;
  report.config = config;
  std::vector<Job> jobs;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (const ClassTag cls : config.classes) {
      if (cls == ClassTag::Other || (cls == ClassTag::W && n < 3)) continue;
      if (config.trials == 0) continue;
      FuzzCell cell;
      cell.n = n;
      cell.cls = cls;
      report.cells.push_back(cell);
      for (int t = 0; t < config.trials; ++t) jobs.push_back({cls, n, t, report.cells.size() - 1});
    }
  }

  std::vector<TrialOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      outcomes[i] = run_fuzz_trial(job.cls, job.n, job.trial, config.seed ^ static_cast<std::uint64_t>(i), config);
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const TrialOutcome& o = outcomes[i];
    FuzzCell& cell = report.cells[jobs[i].cell];
    ++cell.trials;
    if (o.passed) ++cell.passed;
    if (o.trivial) ++cell.trivial;
    cell.max_residual = std::max(cell.max_residual, o.residual);
    for (const auto& [c, a] : {std::pair{o.psi_case, o.psi_annihilation}, std::pair{o.phi_case, o.phi_annihilation},
                               std::pair{o.violation_case, o.violation}}) {
      if (c == ReductionCase::Case1) {
        ++cell.case1;
        cell.max_annihilation_case1 = std::max(cell.max_annihilation_case1, a);
      } else if (c == ReductionCase::Case2) {
        ++cell.case2;
        cell.max_annihilation_case2 = std::max(cell.max_annihilation_case2, a);
      }
    }
    if (o.corrupt_checked) {
      ++cell.corrupt_checked;
      if (o.corrupt_rejected) ++cell.corrupt_rejected;
    }
    if (!o.passed) report.failures.push_back(o);
  }
  return report;
}

nlohmann::json to_json(const FuzzReport& report) {
  using nlohmann::json;
  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"n", c.n},
                     {"class", to_string(c.cls)},
                     {"trials", c.trials},
                     {"passed", c.passed},
                     {"case1", c.case1},
                     {"case2", c.case2},
                     {"trivial", c.trivial},
                     {"max_residual", c.max_residual},
                     {"max_annihilation_case1", c.max_annihilation_case1},
                     {"max_annihilation_case2", c.max_annihilation_case2},
                     {"corrupt_checked", c.corrupt_checked},
                     {"corrupt_rejected", c.corrupt_rejected}});
  }
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"n", f.n},
                        {"class", to_string(f.intended)},
                        {"trial", f.trial},
                        {"seed", f.seed},
                        {"recovered", to_string(f.recovered)},
                        {"residual", f.residual},
                        {"error", f.error}});
  }
  const auto& cfg = report.config;
  json classes = json::array();
  for (const auto c : cfg.classes) classes.push_back(to_string(c));
  return json{{"command", "fuzz"},
              {"config",
               {{"n_min", cfg.n_min},
                {"n_max", cfg.n_max},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"classes", classes},
                {"check_rejection", cfg.check_rejection},
                {"eps_match", cfg.tol.eps_match}}},
              {"cells", cells},
              {"failures", failures},
              {"total_trials", report.total_trials()},
              {"total_failures", report.total_failures()}};
}

}  // namespace symslocc
