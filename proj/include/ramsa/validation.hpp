#ifndef RAMSA_VALIDATION_HPP
#define RAMSA_VALIDATION_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ramsa/blackbox.hpp"
#include "ramsa/solver.hpp"

namespace ramsa {

inline constexpr double kSuccessProbability = 0.99;

struct FeasibilityReport {
  double mean_objective = 0.0;             // raw units
  double objective_std = 0.0;              // sample std of the raw objective
  std::vector<double> constraint_probs;    // P(C_j <= 0)
  std::vector<double> prob_std_errors;     // sqrt(p (1-p) / n)
  long n_samples = 0;
  long failures = 0;   // non-finite evaluations
  bool valid = true;   // failures within 1%
  bool success = false;  // every probability >= 0.99
};

struct RunRecord {
  int run_id = 0;
  std::uint64_t seed = 0;
  SolverResult solve;
  FeasibilityReport feasibility;
  bool success = false;
};

struct TrialReport {
  std::vector<RunRecord> runs;
  int success_count = 0;
  double mean_objective = 0.0;  // mean over runs of per-run MC means
  std::vector<double> mean_constraint_probs;
  std::vector<double> mean_point;  // original units
  std::vector<double> point_std;   // per-coordinate sample std over runs
  long evals_per_run = 0;
};

struct EpistemicGrid {
  // One (lo, hi) interval per epistemic component, scanned with
  // `resolution` points per axis.
  std::vector<std::pair<double, double>> bounds;
  int resolution = 15;

  static EpistemicGrid for_problem(const Problem& problem,
                                   int resolution = 15);
};

struct WorstCaseRow {
  std::vector<double> argmax_means;  // worst epistemic means for this row
  double deterministic_value = 0.0;  // constraint at aleatory means there
  double probability = 0.0;          // P(C_j <= 0) at the argmax means
  bool feasible = false;
};

struct WorstCaseReport {
  std::vector<WorstCaseRow> per_constraint;  // one row per constraint
  bool feasible = false;                     // all rows feasible
};

/// Monte-Carlo solution assessment on raw (untransformed) outputs.
FeasibilityReport mc_feasibility(const Problem& problem,
                                 const std::vector<double>& x_unit,
                                 long n_samples, std::uint64_t seed);

/// Independent seeded solver runs, each validated by Monte Carlo. Problems
/// with epistemic components get the stricter per-run criterion: every
/// candidate mean combination (point sets) or the worst-case grid search
/// (intervals) must clear the probability threshold.
TrialReport run_trial(const Problem& problem, const SolverConfig& config,
                      int runs, long budget_per_run, long mc_samples,
                      int jobs = 0);

/// Deterministic grid maximization of each constraint over the epistemic
/// box (aleatory noise pinned at its means), then a Monte-Carlo re-check at
/// each argmax with the original aleatory distributions.
WorstCaseReport worst_case_epistemic(const Problem& problem,
                                     const std::vector<double>& x_unit,
                                     const EpistemicGrid& grid,
                                     long mc_samples, std::uint64_t seed);

/// Side-by-side trials of the unconstrained-direction estimator and the
/// truncated estimator (the latter on bound-constrained noise).
std::pair<TrialReport, TrialReport> compare_estimators(
    const Problem& problem, const SolverConfig& gaussian_config,
    const SolverConfig& truncated_config, int runs, long gaussian_budget,
    long truncated_budget, long mc_samples, int jobs = 0);

}  // namespace ramsa

#endif
