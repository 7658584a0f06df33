#include "ramsa/tuning.hpp"

#include <cmath>

#include "ramsa/lagrangian.hpp"
#include "ramsa/rng.hpp"

namespace ramsa {

const std::vector<double>& default_beta1_grid() {
  static const std::vector<double> grid = {0.001, 0.005, 0.01,
                                           0.05,  0.1,   0.2};
  return grid;
}

double select_s2(double grad_norm_ratio, double coeff) {
  if (!(grad_norm_ratio > 0.0))
    throw TuningError("select_s2: gradient norm is zero (constant "
                      "landscape?)");
  if (!(coeff > 0.0)) throw InputError("select_s2: coeff must be > 0");
  return coeff / grad_norm_ratio;
}

TuneReport select_beta1(const Problem& problem,
                        const std::vector<double>& x0_unit,
                        const std::vector<double>& grid, long samples,
                        KernelKind kernel, std::uint64_t seed,
                        EstimatorForm form) {
  if (grid.empty()) throw InputError("select_beta1: empty grid");
  if (samples < 100) throw InputError("select_beta1: need at least 100 "
                                      "samples");
  const auto n = static_cast<std::size_t>(problem.design_dim);
  const auto m = static_cast<std::size_t>(problem.constraint_count);
  if (x0_unit.size() != n) throw InputError("select_beta1: x0 dimension");

  LagrangeState state;
  state.x = x0_unit;
  state.t.assign(m + 1, 0.0);
  state.lambda.assign(m, 0.0);
  const std::vector<RiskLevel> levels(m + 1, RiskLevel(0.0));
  const Box t_box = Box::cube(m + 1, -2.0, 2.0);
  const double beta2 = 1e-4;

  TuneReport report;
  report.grid = grid;
  report.samples = samples;
  report.avg_variance.assign(grid.size(), 0.0);
  std::vector<std::vector<double>> mean_gx(grid.size());

  EvaluationBudget budget(4L * samples * static_cast<long>(grid.size()) + 8);

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double beta1 = grid[gi];
    Rng rng(derive_seed(seed, 101, gi));
    GradientEstimator estimator(problem, kernel, form, beta1, beta2, t_box);
    // Two-pass mean/variance in sample-index order so concurrent callers
    // replaying the same seed reduce identically.
    std::vector<std::vector<double>> gx;
    gx.reserve(static_cast<std::size_t>(samples));
    for (long s = 0; s < samples; ++s) {
      StackedGradient g;
      try {
        g = estimator.estimate(state, levels, rng, budget);
      } catch (const BudgetError&) {
        throw TuningError("select_beta1: evaluation budget exhausted");
      }
      gx.push_back(std::move(g.x));
    }
    std::vector<double> mean(n, 0.0);
    for (const auto& row : gx)
      for (std::size_t i = 0; i < n; ++i) mean[i] += row[i];
    for (auto& mi : mean) mi /= static_cast<double>(samples);
    double avg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& row : gx) {
        const double d = row[i] - mean[i];
        acc += d * d;
      }
      avg += acc / static_cast<double>(samples - 1);
    }
    report.avg_variance[gi] = avg / static_cast<double>(n);
    mean_gx[gi] = std::move(mean);
  }
  report.evaluations_used = budget.used;

  // Smallest average variance; the larger candidate wins ties.
  std::size_t best = 0;
  for (std::size_t gi = 1; gi < grid.size(); ++gi) {
    const double v = report.avg_variance[gi];
    const double vb = report.avg_variance[best];
    if (v < vb || (v == vb && grid[gi] > grid[best])) best = gi;
  }
  report.chosen_beta1 = grid[best] / 2.0;

  // Norm ratio at the reference width (0.1 when probed, per the
  // step-size rule), reusing the grid-phase gradients.
  std::size_t ref = best;
  for (std::size_t gi = 0; gi < grid.size(); ++gi)
    if (grid[gi] == 0.1) ref = gi;
  report.reference_beta1 = grid[ref];
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm2 += mean_gx[ref][i] * mean_gx[ref][i];
  report.grad_norm_ratio = std::sqrt(norm2 / static_cast<double>(n));
  return report;
}

TuneReport tune_problem(const Problem& problem, long samples,
                        KernelKind kernel, std::uint64_t seed,
                        const std::vector<double>& grid, EstimatorForm form) {
  const auto& g = grid.empty() ? default_beta1_grid() : grid;
  TuneReport report =
      select_beta1(problem, problem.x0_unit(), g, samples, kernel, seed, form);
  report.step_coefficient = kernel == KernelKind::TruncatedGaussian
                                ? kTruncatedStepCoefficient
                                : kGaussianStepCoefficient;
  report.chosen_s2 = select_s2(report.grad_norm_ratio, report.step_coefficient);
  return report;
}

}  // namespace ramsa
