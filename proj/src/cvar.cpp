#include "ramsa/cvar.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace ramsa {

SampleBatch::SampleBatch(std::vector<double> v, std::string tag)
    : values(std::move(v)), source(std::move(tag)) {
  if (values.empty()) throw InputError("SampleBatch: empty batch");
  for (double x : values)
    if (!std::isfinite(x)) throw InputError("SampleBatch: non-finite entry");
}

double rockafellar_uryasev(double c, double t, RiskLevel level) {
  const double excess = c - t;
  if (excess <= 0.0) return t;
  return t + excess / (1.0 - level.alpha);
}

double mc_var(const SampleBatch& batch, RiskLevel level) {
  std::vector<double> sorted = batch.values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  // Smallest index k with (k+1)/n >= alpha; ties resolve to the smaller
  // index by the strictness of ceil.
  double pos = std::ceil(level.alpha * static_cast<double>(n)) - 1.0;
  std::size_t k = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
  if (k >= n) k = n - 1;
  return sorted[k];
}

double mc_cvar(const SampleBatch& batch, RiskLevel level) {
  const double var = mc_var(batch, level);
  double acc = 0.0;
  for (double v : batch.values) acc += std::max(0.0, v - var);
  acc /= static_cast<double>(batch.values.size());
  return var + acc / (1.0 - level.alpha);
}

}  // namespace ramsa
