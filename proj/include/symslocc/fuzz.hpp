#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "symslocc/theorem.hpp"
#include "symslocc/types.hpp"

namespace symslocc {

struct FuzzConfig {
  int n_min = 3;
  int n_max = 6;
  int trials = 50;  // per (n, class)
  std::uint64_t seed = 42;
  std::vector<ClassTag> classes{ClassTag::Separable, ClassTag::W, ClassTag::GHZ};
  /// Also perturb phi by 1e-3 and require the witness search to reject it.
  bool check_rejection = true;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  Tolerances tol{};
};

struct TrialOutcome {
  int n = 0;
  ClassTag intended = ClassTag::Separable;
  int trial = 0;
  std::uint64_t seed = 0;
  bool passed = false;
  ClassTag recovered = ClassTag::Other;
  double residual = 0.0;
  bool trivial = false;
  ReductionCase psi_case = ReductionCase::Trivial;
  ReductionCase phi_case = ReductionCase::Trivial;
  double psi_annihilation = 0.0;
  double phi_annihilation = 0.0;
  bool corrupt_checked = false;
  bool corrupt_rejected = false;
  // Set when a reduction stopped on an annihilation violation.
  ReductionCase violation_case = ReductionCase::Trivial;
  double violation = 0.0;
  std::string error;
};

struct FuzzCell {
  int n = 0;
  ClassTag cls = ClassTag::Separable;
  int trials = 0;
  int passed = 0;
  int case1 = 0;  // reductions (psi and phi each count)
  int case2 = 0;
  int trivial = 0;
  double max_residual = 0.0;
  double max_annihilation_case1 = 0.0;
  double max_annihilation_case2 = 0.0;
  int corrupt_checked = 0;
  int corrupt_rejected = 0;
};

struct FuzzReport {
  FuzzConfig config;
  std::vector<FuzzCell> cells;
  std::vector<TrialOutcome> failures;

  int total_trials() const;
  int total_failures() const { return static_cast<int>(failures.size()); }
  bool ok() const { return failures.empty(); }
};

/// Per-trial seed = config.seed xor global trial index; results do not
/// depend on thread scheduling.
TrialOutcome run_fuzz_trial(ClassTag cls, int n, int trial, std::uint64_t trial_seed, const FuzzConfig& config);

/// Runs fixture -> symmetric_witness for every n in [n_min, n_max] and
/// class (W skipped below n = 3). A trial passes when the recovered class
/// equals the intended one, the witness residual is within eps_match and,
/// if enabled, the perturbed bundle is rejected as NotConnected.
FuzzReport fuzz_theorem(const FuzzConfig& config);

nlohmann::json to_json(const FuzzReport& report);

}  // namespace symslocc
