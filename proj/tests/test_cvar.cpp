#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ramsa/cvar.hpp"
#include "ramsa/rng.hpp"
#include "ramsa/smoothing.hpp"

using namespace ramsa;

namespace {

std::vector<double> one_to_ten() {
  return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
}

// Brute-force minimum over a dense t-grid of the empirical objective
// mean(t + (v - t)^+ / (1 - alpha)).
double grid_min_cvar(const std::vector<double>& values, double alpha,
                     int grid = 4000) {
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  double best = std::numeric_limits<double>::infinity();
  for (int g = 0; g <= grid; ++g) {
    const double t = lo + (hi - lo) * g / grid;
    double acc = 0.0;
    for (double v : values) acc += std::max(0.0, v - t);
    best = std::min(best, t + acc / values.size() / (1.0 - alpha));
  }
  return best;
}

}  // namespace

TEST_CASE("risk level and batch validation") {
  CHECK_THROWS_AS(RiskLevel(1.0), InputError);
  CHECK_THROWS_AS(RiskLevel(-0.1), InputError);
  CHECK_NOTHROW(RiskLevel(0.0));
  CHECK_THROWS_AS(SampleBatch(std::vector<double>{}), InputError);
  CHECK_THROWS_AS(SampleBatch(std::vector<double>{1.0, std::nan("")}),
                  InputError);
}

TEST_CASE("single-sample surrogate") {
  CHECK(rockafellar_uryasev(0.5, 1.0, RiskLevel(0.3)) == 1.0);
  CHECK(rockafellar_uryasev(2.0, 1.0, RiskLevel(0.0)) == 2.0);
  CHECK(rockafellar_uryasev(2.0, 1.0, RiskLevel(0.5)) == 3.0);
}

TEST_CASE("empirical VaR") {
  SampleBatch batch(one_to_ten());
  CHECK(mc_var(batch, RiskLevel(0.5)) == 5.0);
  CHECK(mc_var(batch, RiskLevel(0.0)) == 1.0);
  SampleBatch same(std::vector<double>(7, 3.25));
  for (double a : {0.0, 0.4, 0.99})
    CHECK(mc_var(same, RiskLevel(a)) == 3.25);
}

TEST_CASE("empirical CVaR") {
  SampleBatch batch(one_to_ten());
  CHECK(mc_cvar(batch, RiskLevel(0.8)) == doctest::Approx(9.5));
  CHECK(mc_cvar(batch, RiskLevel(0.8)) ==
        doctest::Approx(grid_min_cvar(batch.values, 0.8)).epsilon(1e-3));
  CHECK(mc_cvar(batch, RiskLevel(0.0)) == doctest::Approx(5.5));

  Rng rng(11);
  std::vector<double> u(1000000);
  for (auto& v : u) v = rng.uniform01();
  SampleBatch uniform(std::move(u));
  CHECK(std::fabs(mc_cvar(uniform, RiskLevel(0.9)) - 0.95) < 2e-3);
}

TEST_CASE("monotone in the level and ordered against VaR and the mean") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> v(200);
    for (auto& x : v) x = rng.normal() * (1.0 + rep) + rng.uniform(-2, 2);
    SampleBatch batch(std::move(v));
    double mean = 0.0;
    for (double x : batch.values) mean += x;
    mean /= batch.values.size();

    double prev = -1e300;
    for (double a = 0.0; a < 0.95; a += 0.1) {
      const double cv = mc_cvar(batch, RiskLevel(a));
      CHECK(cv >= prev - 1e-12);
      CHECK(mc_var(batch, RiskLevel(a)) <= cv + 1e-12);
      CHECK(mean <= cv + 1e-12);
      prev = cv;
    }
  }
}

TEST_CASE("identity matches the dense-grid minimizer on random batches") {
  Rng rng(99);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> v(20 + rep % 40);
    for (auto& x : v) x = rng.normal() * 3.0 + rng.uniform(-1, 1);
    SampleBatch batch(std::move(v));
    const double alpha = rng.uniform(0.0, 0.9);
    const auto [lo, hi] =
        std::minmax_element(batch.values.begin(), batch.values.end());
    const double resolution = (*hi - *lo) / 4000.0 + 1e-12;
    const double direct = mc_cvar(batch, RiskLevel(alpha));
    const double bruteforce = grid_min_cvar(batch.values, alpha);
    CHECK(direct <= bruteforce + 1e-12);  // exact minimizer beats the grid
    CHECK(bruteforce - direct <= resolution / (1.0 - alpha) + 1e-9);
  }
}

TEST_CASE("smoothing perturbs the CVaR within the Lipschitz bound") {
  // c(y, xi) = L * (y1 + y2)/sqrt(2) + xi on the unit box: exactly
  // L-Lipschitz in y.
  const double L = 2.0, alpha = 0.8, beta1 = 0.05, beta2 = 0.01;
  const double noise_std = 0.3;
  const Box box = Box::cube(2, 0.0, 1.0);
  const double bound = (L * beta1 * std::sqrt(2.0) + beta2) / (1.0 - alpha);

  Rng rng(2024);
  for (int rep = 0; rep < 3; ++rep) {
    const std::vector<double> x = {rng.uniform(0.1, 0.9),
                                   rng.uniform(0.1, 0.9)};
    const long n = 200000;

    std::vector<double> plain(n), smooth(n);
    const auto bounds = standardized_bounds(x, box, beta1);
    for (long s = 0; s < n; ++s) {
      const double xi = noise_std * rng.normal();
      plain[s] = L * (x[0] + x[1]) / std::sqrt(2.0) + xi;
      const auto u = sample_trunc_normal(bounds, rng);
      const double v = rng.normal();
      const double xi2 = noise_std * rng.normal();
      smooth[s] = L * (x[0] + beta1 * u[0] + x[1] + beta1 * u[1]) /
                      std::sqrt(2.0) +
                  xi2 - beta2 * v;
    }
    const double plain_cvar = mc_cvar(SampleBatch(plain), RiskLevel(alpha));
    const double smooth_cvar = grid_min_cvar(smooth, alpha, 8000);
    // tail standard error of each estimate, loosely
    const double se = noise_std / std::sqrt(n * (1.0 - alpha)) * 2.0;
    CHECK(std::fabs(smooth_cvar - plain_cvar) <= bound + 4.0 * se);
  }
}
