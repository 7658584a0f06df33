#ifndef RAMSA_BLACKBOX_HPP
#define RAMSA_BLACKBOX_HPP

#include <functional>
#include <string>
#include <vector>

#include "ramsa/box.hpp"
#include "ramsa/errors.hpp"
#include "ramsa/rng.hpp"

namespace ramsa {

enum class DistKind {
  Fixed,
  Normal,
  Uniform,
  TruncatedNormal,
  BernoulliPair,
  NormalMeanPoints,    // mean drawn from {p1, p2} with equal probability
  NormalMeanInterval,  // mean drawn uniformly from [p1, p2]
};

// One coordinate of the uncertainty vector. Parameter slots by kind:
//   Fixed:              p1 = value
//   Normal:             p1 = mean, p2 = std (std = p2 * x[design_index]
//                       when scale_std_by_design is set)
//   Uniform:            p1 = lo, p2 = hi
//   TruncatedNormal:    p1 = mean, p2 = std, p3 = lo, p4 = hi
//   BernoulliPair:      p1, p2 = the two equally likely values
//   NormalMeanPoints:   p1, p2 = candidate means, p3 = std
//   NormalMeanInterval: p1, p2 = mean interval, p3 = std
// design_index >= 0 marks a perturbation of that design variable; those
// components are the ones truncated in bound-constrained noise mode.
struct UncertainComponent {
  DistKind kind = DistKind::Fixed;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
  bool scale_std_by_design = false;
  int design_index = -1;

  bool epistemic() const {
    return kind == DistKind::NormalMeanPoints ||
           kind == DistKind::NormalMeanInterval;
  }

  static UncertainComponent fixed(double v);
  static UncertainComponent normal(double mean, double std,
                                   int design_index = -1,
                                   bool scale_std_by_design = false);
  static UncertainComponent uniform(double lo, double hi,
                                    int design_index = -1);
  static UncertainComponent truncated_normal(double mean, double std,
                                             double lo, double hi);
  static UncertainComponent bernoulli_pair(double v1, double v2);
  static UncertainComponent normal_mean_points(double m1, double m2,
                                               double std);
  static UncertainComponent normal_mean_interval(double lo, double hi,
                                                 double std);
};

struct UncertaintyModel {
  std::vector<UncertainComponent> components;
  // Bound-constrained noise mode: design perturbations are redrawn (up to
  // 100 times, then clamped) so x + noise stays inside the original box.
  bool truncate_design_noise = false;

  std::size_t dim() const { return components.size(); }

  // One realization. x_original supplies the design point for
  // design-scaled standard deviations and for noise truncation.
  std::vector<double> sample(Rng& rng, const std::vector<double>& x_original,
                             const Box& box) const;

  // Componentwise expectation (epistemic means at their midpoint).
  std::vector<double> mean_realization(
      const std::vector<double>& x_original) const;

  std::vector<std::size_t> epistemic_indices() const;

  // Pins the epistemic components to fixed means, keeping their aleatory
  // spread: NormalMean* (.., std) becomes Normal(mean, std).
  void set_epistemic_means(const std::vector<double>& means);
};

// Pure map (x in original units, noise realization) -> m+1 outputs.
using Evaluator = std::function<std::vector<double>(
    const std::vector<double>&, const std::vector<double>&)>;

struct Problem {
  std::string name;
  int design_dim = 0;        // n
  int constraint_count = 0;  // m
  Box box;                   // original units
  std::vector<double> x0;    // original units
  UncertaintyModel uncertainty;
  Evaluator evaluator;

  int output_count() const { return constraint_count + 1; }
  std::vector<double> x0_unit() const;
  std::vector<double> draw_noise(Rng& rng,
                                 const std::vector<double>& x_original) const;
  std::vector<double> zero_noise() const {
    return std::vector<double>(uncertainty.dim(), 0.0);
  }

  // Copy with the epistemic means pinned (see UncertaintyModel).
  Problem with_epistemic_means(const std::vector<double>& means) const;
};

struct EvaluationBudget {
  long max_calls = 0;
  long used = 0;

  EvaluationBudget() = default;
  explicit EvaluationBudget(long max) : max_calls(max) {}
  long remaining() const { return max_calls - used; }
  // Charges one call, throwing once the allowance is spent.
  void charge();
};

/// Affine map from unit-cube coordinates onto the box. Accepts points
/// outside [0,1]^n (the affine extension) so unconstrained-direction
/// estimators can query beyond the bounds of an analytic blackbox.
std::vector<double> scale_to_box(const std::vector<double>& x_unit,
                                 const Box& box);

/// Inverse of scale_to_box.
std::vector<double> unit_coordinates(const std::vector<double>& x_original,
                                     const Box& box);

/// Output normalization arctan(cbrt(c)); odd and strictly increasing,
/// with range (-pi/2, pi/2).
double output_transform(double c);

/// Raw blackbox call in original units; throws EvaluationError (with the
/// output index) on a non-finite output.
std::vector<double> evaluate_raw(const Problem& problem,
                                 const std::vector<double>& x_original,
                                 const std::vector<double>& noise);

/// Budgeted evaluation in unit coordinates with transformed outputs.
std::vector<double> evaluate_transformed(const Problem& problem,
                                         const std::vector<double>& x_unit,
                                         const std::vector<double>& noise,
                                         EvaluationBudget& budget);

}  // namespace ramsa

#endif
