#ifndef RAMSA_SMOOTHING_HPP
#define RAMSA_SMOOTHING_HPP

#include <vector>

#include "ramsa/box.hpp"
#include "ramsa/errors.hpp"
#include "ramsa/normal.hpp"
#include "ramsa/rng.hpp"

namespace ramsa {

// Truncation interval of a standardized (unit variance, zero mean before
// conditioning) Gaussian direction vector. Infinite endpoints are allowed.
struct TruncBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  TruncBounds() = default;
  TruncBounds(std::vector<double> lo, std::vector<double> up);
  std::size_t size() const { return lower.size(); }
};

// Standardized perturbation interval keeping x + beta*u inside [box]:
// componentwise ((lower - x)/beta, (upper - x)/beta).
TruncBounds standardized_bounds(const std::vector<double>& x, const Box& box,
                                double beta);

enum class KernelKind { TruncatedGaussian, Gaussian };

struct SmoothingKernel {
  KernelKind kind = KernelKind::TruncatedGaussian;
  double beta = 0.0;

  SmoothingKernel() = default;
  SmoothingKernel(KernelKind k, double b) : kind(k), beta(b) {
    if (!(beta > 0.0)) throw InputError("SmoothingKernel: beta must be > 0");
  }
};

// One forward/base evaluation pair along a sampled direction.
struct GradientSample {
  std::vector<double> direction;    // u
  std::vector<double> kernel_mean;  // mean of the conditioned direction
  double forward = 0.0;             // c(x + beta*u)
  double base = 0.0;                // c(x)
  double beta = 0.0;
};

/// Mean of the standard Gaussian conditioned to [lower, upper],
/// componentwise (phi(a) - phi(b)) / (Phi(b) - Phi(a)).
std::vector<double> trunc_normal_mean(const TruncBounds& bounds);

/// Inverse-CDF draw of the conditioned Gaussian vector. Every component is
/// strictly inside its interval. Uses the complementary parameterization
/// when the interval sits deep in one tail.
std::vector<double> sample_trunc_normal(const TruncBounds& bounds, Rng& rng);

/// One-sided estimate (u - mean) * (forward - base) / beta.
std::vector<double> one_sided_estimate(const GradientSample& s);

/// Two-sided estimate from a forward sample and a reflected backward
/// sample sharing the same base value and width.
std::vector<double> two_sided_estimate(const GradientSample& forward,
                                       const GradientSample& backward);

/// Unconstrained-direction baseline u * (forward - base) / beta.
std::vector<double> gaussian_estimate(const std::vector<double>& u,
                                      double forward, double base,
                                      double beta);

// Width below which the conditioned distribution has no representable mass
// and the mean formula loses all significant digits.
inline constexpr double kDegenerateWidth = 1e-12;

}  // namespace ramsa

#endif
