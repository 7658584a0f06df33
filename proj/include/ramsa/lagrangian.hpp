#ifndef RAMSA_LAGRANGIAN_HPP
#define RAMSA_LAGRANGIAN_HPP

#include <vector>

#include "ramsa/blackbox.hpp"
#include "ramsa/cvar.hpp"
#include "ramsa/rng.hpp"
#include "ramsa/smoothing.hpp"

namespace ramsa {

enum class EstimatorForm { OneSided, TwoSided };

// Primal-dual iterate: design point in unit coordinates, one risk
// threshold per output, one nonnegative multiplier per constraint.
struct LagrangeState {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> lambda;
};

struct StackedGradient {
  std::vector<double> x;       // n
  std::vector<double> t;       // m + 1
  std::vector<double> lambda;  // m

  std::size_t flat_size() const {
    return x.size() + t.size() + lambda.size();
  }
  std::vector<double> flatten() const;
};

// Risk surrogate of the objective plus multiplier-weighted surrogates of
// the constraints, assembled from already-transformed outputs.
double lagrangian_value(const std::vector<double>& transformed_outputs,
                        const std::vector<double>& t,
                        const std::vector<double>& lambda,
                        const std::vector<RiskLevel>& levels);

// Sampled Lagrangian from a single blackbox call at the state's point.
double noisy_lagrangian(const Problem& problem, const LagrangeState& state,
                        const std::vector<double>& noise,
                        const std::vector<RiskLevel>& levels,
                        EvaluationBudget& budget);

// One-sided stochastic gradient of the smooth Lagrangian. Consumes two
// evaluations when reuse_base_for_dual is set (the default production
// mode: the dual block reuses the base call's outputs) and three when it
// is not (a literal extra base call with the forward realization).
StackedGradient stacked_gradient(
    const Problem& problem, const LagrangeState& state,
    const std::vector<double>& u, const std::vector<double>& v,
    const std::vector<double>& mu1, const std::vector<double>& mu2,
    double beta1, double beta2, const std::vector<double>& noise1,
    const std::vector<double>& noise2, const std::vector<RiskLevel>& levels,
    EvaluationBudget& budget, bool reuse_base_for_dual = true);

// Draws directions and noise and produces one stacked gradient per call.
//
// One-sided: the forward/base difference above. Two-sided with the
// unconstrained kernel: the two-call central difference along a shared
// direction. Two-sided with the truncated kernel: a forward and an
// independently mirrored evaluation centered by a base call (three calls).
// The `strict` flag reuses an already-paid call for the dual block; off, a
// dedicated call at the unperturbed point with the forward realization is
// spent.
class GradientEstimator {
 public:
  GradientEstimator(const Problem& problem, KernelKind kernel,
                    EstimatorForm form, double beta1, double beta2, Box t_box,
                    bool strict = true);

  StackedGradient estimate(const LagrangeState& state,
                           const std::vector<RiskLevel>& levels, Rng& rng,
                           EvaluationBudget& budget);

  long calls_per_estimate() const;
  // Queries that left the unit cube by more than a rounding nudge
  // (truncated kernel only; the unconstrained kernel roams by design).
  long out_of_bounds_queries() const { return out_of_bounds_; }

 private:
  StackedGradient assemble(const LagrangeState& state,
                           const std::vector<RiskLevel>& levels,
                           const std::vector<double>& u,
                           const std::vector<double>& mu1,
                           const std::vector<double>& v,
                           const std::vector<double>& mu2,
                           const std::vector<double>& u_back,
                           const std::vector<double>& mu1_back,
                           const std::vector<double>& v_back,
                           const std::vector<double>& mu2_back, Rng& rng,
                           EvaluationBudget& budget);

  const Problem& problem_;
  KernelKind kernel_;
  EstimatorForm form_;
  double beta1_, beta2_;
  Box unit_box_, t_box_;
  bool strict_;
  long out_of_bounds_ = 0;
};

}  // namespace ramsa

#endif
