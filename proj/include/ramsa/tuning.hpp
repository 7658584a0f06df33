#ifndef RAMSA_TUNING_HPP
#define RAMSA_TUNING_HPP

#include <cstdint>
#include <vector>

#include "ramsa/blackbox.hpp"
#include "ramsa/lagrangian.hpp"
#include "ramsa/smoothing.hpp"

namespace ramsa {

// Default width grid probed during tuning.
const std::vector<double>& default_beta1_grid();

// Coefficient of the step-size rule s2_0 = coeff / (|mean gradient| / sqrt(n));
// the empirical constants differ between the two kernels.
inline constexpr double kGaussianStepCoefficient = 1e-3;
inline constexpr double kTruncatedStepCoefficient = 5e-4;

struct TuneReport {
  std::vector<double> grid;
  std::vector<double> avg_variance;  // per grid candidate
  double chosen_beta1 = 0.0;         // half the argmin candidate
  double reference_beta1 = 0.0;      // width used for the norm estimate
  double grad_norm_ratio = 0.0;      // |mean g_x|_2 / sqrt(n)
  double step_coefficient = 0.0;
  double chosen_s2 = 0.0;
  long samples = 0;
  long evaluations_used = 0;
};

/// Probes each candidate width with N stochastic gradients at the starting
/// state (x0, t = 0, lambda = 0), averages the per-coordinate variance of
/// the design block, and selects half the variance-minimizing candidate
/// (larger candidate on ties). Also records the gradient-norm ratio at the
/// reference width 0.1 (or the argmin when 0.1 is absent from the grid).
TuneReport select_beta1(const Problem& problem,
                        const std::vector<double>& x0_unit,
                        const std::vector<double>& grid, long samples,
                        KernelKind kernel, std::uint64_t seed,
                        EstimatorForm form = EstimatorForm::TwoSided);

/// Gradient-norm correlation rule for the design step size.
double select_s2(double grad_norm_ratio, double coeff);

/// Both rules together; fills chosen_s2 from the recorded norm ratio.
TuneReport tune_problem(const Problem& problem, long samples,
                        KernelKind kernel, std::uint64_t seed,
                        const std::vector<double>& grid = {},
                        EstimatorForm form = EstimatorForm::TwoSided);

}  // namespace ramsa

#endif
