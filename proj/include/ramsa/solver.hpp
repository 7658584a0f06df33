#ifndef RAMSA_SOLVER_HPP
#define RAMSA_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ramsa/blackbox.hpp"
#include "ramsa/lagrangian.hpp"
#include "ramsa/smoothing.hpp"

namespace ramsa {

// Polynomially decaying step size s0 / (k+1)^tau. The decay exponent must
// lie in (1/2, 1) so the schedule is non-summable with summable squares.
struct StepSchedule {
  double s0 = 0.0;
  double tau = 0.0;

  StepSchedule() = default;
  StepSchedule(double initial, double decay) : s0(initial), tau(decay) {
    if (!(s0 > 0.0)) throw InputError("StepSchedule: s0 must be > 0");
    if (!(tau > 0.5) || !(tau < 1.0))
      throw InputError("StepSchedule: tau must lie in (0.5, 1)");
  }
};

double step_size(const StepSchedule& schedule, long k);

enum class UpdateDirection { Descent, Ascent };

struct SolverConfig {
  // Schedules ordered slowest to fastest: multipliers, design point, risk
  // thresholds, moment aggregation.
  StepSchedule lambda_step{0.01, 0.8};
  StepSchedule x_step{0.05, 0.7};
  StepSchedule t_step{0.001, 0.6};
  StepSchedule moment_step{0.3, 0.501};

  double beta1 = 0.05;  // smoothing width for the design block
  double beta2 = 1e-4;  // smoothing width for the threshold block

  // Per-output reliability targets; empty fills 0.99 everywhere.
  std::vector<double> alpha_target;
  // Geometric approach rate of the reliability schedule; negative means
  // auto: 1 - 5/(2 K) so the level ends near 0.9 of its target.
  double gamma = -1.0;
  double epsilon = 1e-8;

  long budget = 5000;        // blackbox calls for the whole run
  long max_iterations = -1;  // negative: derive from the budget

  Box t_box;       // empty: [-2, 2]^{m+1} in transformed output units
  Box lambda_box;  // empty: [0, 20]^m

  KernelKind kernel = KernelKind::Gaussian;
  // One-sided: forward/base difference, the literal production form of the
  // noisy estimator. Two-sided: symmetric form with antithetic directions;
  // with the unconstrained kernel it is the two-call central difference,
  // with the truncated kernel it keeps the base call (three calls).
  EstimatorForm estimator = EstimatorForm::TwoSided;
  // Reuse an already-paid evaluation for the dual block; off spends an
  // extra call at the unperturbed point with the forward realization.
  bool strict_two_eval = true;

  std::uint64_t seed = 0;
  bool record_trace = false;

  long calls_per_iteration() const {
    long calls = 2;
    if (estimator == EstimatorForm::TwoSided &&
        kernel == KernelKind::TruncatedGaussian)
      calls = 3;
    return strict_two_eval ? calls : calls + 1;
  }
};

// Complete iterate of the solver loop: primal point, risk thresholds,
// multipliers, the two moment aggregates, the current reliability levels,
// and the iteration counter.
struct SolverState {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<double> moment_avg;  // aggregated gradient
  std::vector<double> moment_sq;   // aggregated squared gradient
  std::vector<double> alpha;
  long k = 0;
};

enum class RunStatus { Complete, BudgetExhausted, Aborted };

struct TraceRow {
  long k = 0;
  std::vector<double> x, t, lambda, alpha;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  std::vector<double> gradient;  // flattened stacked gradient
  std::vector<double> moment_avg, moment_sq;
};

struct SolverResult {
  std::vector<double> x_unit;
  std::vector<double> x_original;
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<double> alpha;
  long iterations = 0;
  long budget_used = 0;
  RunStatus status = RunStatus::Complete;
  std::string diagnostic;
  // Truncated-kernel runs: whether every query stayed inside the unit
  // cube (up to one rounding nudge at the boundary).
  bool queries_in_bounds = true;
  std::vector<TraceRow> trace;
};

/// Exponential moving aggregation of the gradient and its square:
/// M <- s4 g + (1-s4) M and V <- s4 g^2 + (1-s4) V, elementwise.
void update_moments(std::vector<double>& moment_avg,
                    std::vector<double>& moment_sq,
                    const std::vector<double>& gradient, double s4);

/// Sign-normalized projected step z -> clamp(z -/+ s * M/(sqrt(V)+eps)).
std::vector<double> projected_update(const std::vector<double>& z,
                                     const std::vector<double>& moment_avg,
                                     const std::vector<double>& moment_sq,
                                     double step, double epsilon,
                                     const Box& box, UpdateDirection dir);

/// One step of the geometric reliability-level schedule
/// alpha <- target + gamma (alpha - target).
double alpha_step(double alpha_k, double alpha_target, double gamma);

SolverResult run(const Problem& problem, const SolverConfig& config);

}  // namespace ramsa

#endif
