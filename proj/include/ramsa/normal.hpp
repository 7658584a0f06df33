#ifndef RAMSA_NORMAL_HPP
#define RAMSA_NORMAL_HPP

namespace ramsa {

/// Standard normal density φ(z).
double std_normal_pdf(double z);

/// Standard normal distribution function Φ(z), via erfc. Absolute error
/// below 1e-15 over the full range.
double std_normal_cdf(double z);

/// Upper tail Φ̄(z) = 1 - Φ(z) without cancellation for large z.
double std_normal_ccdf(double z);

/// Quantile Φ⁻¹(p) for p in (0, 1) (Wichura's PPND16 rational
/// approximations, ~1 ulp of double precision).
double std_normal_quantile(double p);

/// Upper-tail quantile: the z with Φ̄(z) = q. Accurate for tiny q where
/// forming 1 - q would lose the tail.
double std_normal_cquantile(double q);

}  // namespace ramsa

#endif
