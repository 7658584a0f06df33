#include "ramsa/smoothing.hpp"

#include <cmath>
#include <limits>

namespace ramsa {

namespace {

// Probability mass Phi(b) - Phi(a) evaluated in whichever tail keeps the
// difference free of cancellation.
double interval_mass(double a, double b) {
  if (a >= 0.0) return std_normal_ccdf(a) - std_normal_ccdf(b);
  if (b <= 0.0) return std_normal_cdf(b) - std_normal_cdf(a);
  return std_normal_cdf(b) - std_normal_cdf(a);
}

double pdf_or_zero(double z) {
  if (std::isinf(z)) return 0.0;
  return std_normal_pdf(z);
}

}  // namespace

TruncBounds::TruncBounds(std::vector<double> lo, std::vector<double> up)
    : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.size() != upper.size())
    throw InputError("TruncBounds: bound vectors differ in length");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]))
      throw InputError("TruncBounds: NaN bound");
    if (!(lower[i] < upper[i]))
      throw InputError("TruncBounds: lower must be below upper");
  }
}

TruncBounds standardized_bounds(const std::vector<double>& x, const Box& box,
                                double beta) {
  if (x.size() != box.size())
    throw InputError("standardized_bounds: dimension mismatch");
  if (!(beta > 0.0)) throw InputError("standardized_bounds: beta must be > 0");
  std::vector<double> lo(x.size()), up(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo[i] = (box.lower[i] - x[i]) / beta;
    up[i] = (box.upper[i] - x[i]) / beta;
  }
  return TruncBounds(std::move(lo), std::move(up));
}

std::vector<double> trunc_normal_mean(const TruncBounds& bounds) {
  std::vector<double> mean(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double a = bounds.lower[i];
    const double b = bounds.upper[i];
    const double mass = interval_mass(a, b);
    if (!(mass > 1e-300))
      throw DegenerateIntervalError(
          "trunc_normal_mean: interval carries no representable mass");
    mean[i] = (pdf_or_zero(a) - pdf_or_zero(b)) / mass;
  }
  return mean;
}

std::vector<double> sample_trunc_normal(const TruncBounds& bounds, Rng& rng) {
  std::vector<double> u(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    double a = bounds.lower[i];
    double b = bounds.upper[i];
    if (b - a < kDegenerateWidth)
      throw DegenerateIntervalError(
          "sample_trunc_normal: interval narrower than 1e-12");
    const double t = rng.uniform01();
    double draw;
    if (a >= 0.0) {
      // Right tail: interpolate upper-tail masses so Phi never saturates.
      const double qa = std_normal_ccdf(a);
      const double qb = std_normal_ccdf(b);
      draw = std_normal_cquantile(qa + t * (qb - qa));
    } else if (b <= 0.0) {
      // Left tail by symmetry of the standard normal.
      const double qa = std_normal_ccdf(-b);
      const double qb = std_normal_ccdf(-a);
      draw = -std_normal_cquantile(qa + t * (qb - qa));
    } else {
      const double pa = std_normal_cdf(a);
      const double pb = std_normal_cdf(b);
      draw = std_normal_quantile(pa + t * (pb - pa));
    }
    // Rounding can land exactly on an endpoint; nudge inward.
    if (draw <= a) draw = std::nextafter(a, b);
    if (draw >= b) draw = std::nextafter(b, a);
    u[i] = draw;
  }
  return u;
}

std::vector<double> one_sided_estimate(const GradientSample& s) {
  if (!(s.beta > 0.0)) throw InputError("one_sided_estimate: beta must be > 0");
  if (s.direction.size() != s.kernel_mean.size())
    throw InputError("one_sided_estimate: dimension mismatch");
  const double scale = (s.forward - s.base) / s.beta;
  std::vector<double> g(s.direction.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = (s.direction[i] - s.kernel_mean[i]) * scale;
  return g;
}

std::vector<double> two_sided_estimate(const GradientSample& forward,
                                       const GradientSample& backward) {
  if (forward.beta != backward.beta)
    throw InputError("two_sided_estimate: widths must match");
  if (forward.direction.size() != backward.direction.size())
    throw InputError("two_sided_estimate: dimension mismatch");
  const double beta = forward.beta;
  if (!(beta > 0.0)) throw InputError("two_sided_estimate: beta must be > 0");
  const double df = forward.forward - forward.base;
  const double db = backward.forward - backward.base;
  std::vector<double> g(forward.direction.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double wf = forward.direction[i] - forward.kernel_mean[i];
    const double wb = backward.direction[i] - backward.kernel_mean[i];
    g[i] = (wf * df - wb * db) / (2.0 * beta);
  }
  return g;
}

std::vector<double> gaussian_estimate(const std::vector<double>& u,
                                      double forward, double base,
                                      double beta) {
  if (!(beta > 0.0)) throw InputError("gaussian_estimate: beta must be > 0");
  const double scale = (forward - base) / beta;
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = u[i] * scale;
  return g;
}

}  // namespace ramsa
