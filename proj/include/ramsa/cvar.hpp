#ifndef RAMSA_CVAR_HPP
#define RAMSA_CVAR_HPP

#include <string>
#include <vector>

#include "ramsa/errors.hpp"

namespace ramsa {

// Reliability level alpha in [0, 1). alpha = 0 degenerates to the plain
// expectation; levels close to 1 approach the worst case.
struct RiskLevel {
  double alpha = 0.0;

  RiskLevel() = default;
  explicit RiskLevel(double a) : alpha(a) {
    if (!(a >= 0.0) || !(a < 1.0))
      throw InputError("RiskLevel: alpha must lie in [0, 1)");
  }
};

struct SampleBatch {
  std::vector<double> values;
  std::string source;  // which output the samples came from

  SampleBatch() = default;
  explicit SampleBatch(std::vector<double> v, std::string tag = "");
};

// Single-sample Rockafellar-Uryasev integrand t + (c - t)^+ / (1 - alpha).
// Averaging it over samples of c gives the function whose minimum over t
// is the CVaR at the given level.
double rockafellar_uryasev(double c, double t, RiskLevel level);

// Left empirical quantile: the smallest sample value whose empirical CDF
// reaches alpha. alpha = 0 returns the batch minimum.
double mc_var(const SampleBatch& batch, RiskLevel level);

// Empirical CVaR through the Rockafellar-Uryasev identity evaluated at the
// empirical VaR: VaR + mean (value - VaR)^+ / (1 - alpha). Coincides with
// the exact minimizer over t of the empirical objective.
double mc_cvar(const SampleBatch& batch, RiskLevel level);

}  // namespace ramsa

#endif
