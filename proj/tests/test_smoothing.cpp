#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "ramsa/rng.hpp"
#include "ramsa/smoothing.hpp"

using namespace ramsa;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double sample_mean(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / v.size();
}

double sample_std(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / (v.size() - 1));
}
}  // namespace

TEST_CASE("bounds validation") {
  CHECK_THROWS_AS(TruncBounds({0.0}, {0.0, 1.0}), InputError);
  CHECK_THROWS_AS(TruncBounds({1.0}, {0.5}), InputError);
  CHECK_NOTHROW(TruncBounds({-kInf}, {kInf}));
  CHECK_THROWS_AS(SmoothingKernel(KernelKind::Gaussian, 0.0), InputError);
}

TEST_CASE("conditioned mean formula") {
  const auto symmetric = trunc_normal_mean(TruncBounds({-1.7}, {1.7}));
  CHECK(symmetric[0] == doctest::Approx(0.0).epsilon(1e-14));

  const auto half = trunc_normal_mean(TruncBounds({0.0}, {kInf}));
  CHECK(half[0] == doctest::Approx(std::sqrt(2.0 / std::acos(-1.0))));

  const auto unbounded = trunc_normal_mean(TruncBounds({-kInf}, {kInf}));
  CHECK(unbounded[0] == 0.0);

  CHECK_THROWS_AS(trunc_normal_mean(TruncBounds({40.0}, {41.0})),
                  DegenerateIntervalError);
}

TEST_CASE("unbounded sampling matches the plain normal stream") {
  Rng a(77), b(77);
  TruncBounds open({-kInf, -kInf, -kInf}, {kInf, kInf, kInf});
  const auto u = sample_trunc_normal(open, a);
  for (double ui : u) CHECK(ui == b.normal());
}

TEST_CASE("sample means agree with symmetry and the half-normal value") {
  Rng rng(3);
  const long n = 100000;
  std::vector<double> sym(n), half(n);
  TruncBounds bs({-1.0}, {1.0});
  TruncBounds bh({0.0}, {kInf});
  for (long i = 0; i < n; ++i) {
    sym[i] = sample_trunc_normal(bs, rng)[0];
    half[i] = sample_trunc_normal(bh, rng)[0];
  }
  const double ms = sample_mean(sym);
  CHECK(std::fabs(ms) <= 3.0 * sample_std(sym, ms) / std::sqrt(double(n)));
  const double mh = sample_mean(half);
  CHECK(std::fabs(mh - 0.7978845608) <=
        3.0 * sample_std(half, mh) / std::sqrt(double(n)));
}

TEST_CASE("containment over random intervals") {
  Rng rng(8);
  long draws = 0;
  while (draws < 1000000) {
    const double lo = rng.uniform(-6.0, 5.9);
    const double hi = lo + rng.uniform(0.05, 6.0);
    TruncBounds b({lo}, {hi});
    for (int i = 0; i < 1000; ++i, ++draws) {
      const double u = sample_trunc_normal(b, rng)[0];
      REQUIRE(u > lo);
      REQUIRE(u < hi);
    }
  }
  CHECK_THROWS_AS(
      [&] {
        TruncBounds tiny({1.0}, {1.0 + 1e-13});
        return sample_trunc_normal(tiny, rng);
      }(),
      DegenerateIntervalError);
}

TEST_CASE("formula mean matches the empirical mean") {
  Rng rng(21);
  for (auto [lo, hi] : {std::pair{-0.8, 2.5}, {1.5, 4.0}, {-3.0, -0.5}}) {
    TruncBounds b({lo}, {hi});
    const double expected = trunc_normal_mean(b)[0];
    const long n = 1000000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_trunc_normal(b, rng)[0];
    const double m = sample_mean(draws);
    const double se = sample_std(draws, m) / std::sqrt(double(n));
    CHECK(std::fabs(m - expected) <= 4.0 * se);
  }
}

TEST_CASE("one-sided estimate arithmetic") {
  GradientSample s;
  s.direction = {0.4, -0.2};
  s.kernel_mean = {0.1, 0.1};
  s.beta = 0.5;
  s.forward = 1.0;
  s.base = 1.0;
  CHECK(one_sided_estimate(s) == std::vector<double>{0.0, 0.0});

  GradientSample linear;
  linear.direction = {1.0};
  linear.kernel_mean = {0.0};
  linear.beta = 0.5;
  linear.base = 0.0;     // c(x) = 2x at x = 0
  linear.forward = 1.0;  // c(0.5)
  CHECK(one_sided_estimate(linear)[0] == doctest::Approx(2.0));

  GradientSample centered = s;
  centered.kernel_mean = centered.direction;
  centered.forward = 42.0;
  centered.base = -3.0;
  for (double g : one_sided_estimate(centered)) CHECK(g == 0.0);
}

TEST_CASE("two-sided estimate arithmetic") {
  GradientSample f, b;
  f.direction = b.direction = {0.7};
  f.kernel_mean = b.kernel_mean = {0.0};
  f.beta = b.beta = 0.25;
  f.forward = f.base = b.forward = b.base = 3.0;
  CHECK(two_sided_estimate(f, b) == std::vector<double>{0.0});

  // symmetric bounds, linear c: equals the one-sided value
  auto c = [](double y) { return 2.0 * y + 1.0; };
  const double x = 0.5, beta = 0.1, u = 0.6;
  GradientSample fwd{{u}, {0.0}, c(x + beta * u), c(x), beta};
  GradientSample bwd{{u}, {0.0}, c(x - beta * u), c(x), beta};
  const double two = two_sided_estimate(fwd, bwd)[0];
  const double one = one_sided_estimate(fwd)[0];
  CHECK(two == doctest::Approx(one).epsilon(1e-12));
}

TEST_CASE("two-sided estimates track the smoothed derivative") {
  // c(y) = y^2 at x = 0.5 on [0, 1], beta = 0.1; reference by central
  // difference of the Monte-Carlo smoothed function with common draws.
  auto c = [](double y) { return y * y; };
  const double x = 0.5, beta = 0.1;
  const Box box = Box::cube(1, 0.0, 1.0);

  const long m = 400000;
  const double h = 1e-3;
  auto smoothed = [&](double at, Rng rng) {
    const auto bounds = standardized_bounds({at}, box, beta);
    double acc = 0.0;
    for (long i = 0; i < m; ++i)
      acc += c(at + beta * sample_trunc_normal(bounds, rng)[0]);
    return acc / m;
  };
  const double fd =
      (smoothed(x + h, Rng(31)) - smoothed(x - h, Rng(31))) / (2.0 * h);

  Rng rng(13);
  const long n = 100000;
  std::vector<double> est(n);
  const auto bounds = standardized_bounds({x}, box, beta);
  const auto mirrored = standardized_bounds({-x}, Box::cube(1, -1.0, 0.0), beta);
  const auto mu1 = trunc_normal_mean(bounds);
  const auto mu2 = trunc_normal_mean(mirrored);
  for (long i = 0; i < n; ++i) {
    const double u1 = sample_trunc_normal(bounds, rng)[0];
    const double u2 = sample_trunc_normal(mirrored, rng)[0];
    GradientSample f{{u1}, mu1, c(x + beta * u1), c(x), beta};
    GradientSample b{{u2}, mu2, c(x - beta * u2), c(x), beta};
    est[i] = two_sided_estimate(f, b)[0];
  }
  const double mean = sample_mean(est);
  const double se = sample_std(est, mean) / std::sqrt(double(n));
  CHECK(std::fabs(mean - fd) <= 3.0 * se);
}

TEST_CASE("unconstrained-direction baseline") {
  CHECK(gaussian_estimate({0.3, -1.0}, 2.0, 2.0, 0.1) ==
        std::vector<double>{0.0, 0.0});

  auto c = [](double y) { return 3.0 * y; };
  const double x = 0.2, beta = 0.2, u = 0.7;
  CHECK(gaussian_estimate({u}, c(x + beta * u), c(x), beta)[0] ==
        doctest::Approx(1.47));

  Rng rng(17);
  const long n = 100000;
  std::vector<double> est(n);
  for (auto& e : est) {
    const double ui = rng.normal();
    e = gaussian_estimate({ui}, c(x + beta * ui), c(x), beta)[0];
  }
  const double mean = sample_mean(est);
  const double se = sample_std(est, mean) / std::sqrt(double(n));
  CHECK(std::fabs(mean - 3.0) <= 3.0 * se);
}

TEST_CASE("one-sided estimates are unbiased for the smoothed gradient") {
  // Quadratic on a box with the evaluation point near a face so the
  // conditioning matters.
  auto c = [](const std::vector<double>& y) {
    return 1.5 * (y[0] - 0.2) * (y[0] - 0.2) + 0.8 * (y[1] - 0.9) * (y[1] - 0.9) +
           0.4 * y[0] * y[1];
  };
  const std::vector<double> x = {0.3, 0.8};
  const double beta = 0.3;
  const Box box = Box::cube(2, 0.0, 1.0);

  // Monte-Carlo smoothed value with common draws across the stencil.
  const long m = 2000000;
  auto smoothed = [&](std::vector<double> at, Rng rng) {
    const auto bounds = standardized_bounds(at, box, beta);
    double acc = 0.0;
    for (long i = 0; i < m; ++i) {
      const auto u = sample_trunc_normal(bounds, rng);
      acc += c({at[0] + beta * u[0], at[1] + beta * u[1]});
    }
    return acc / m;
  };
  const double h = 1e-3;
  std::vector<double> fd(2);
  for (int i = 0; i < 2; ++i) {
    auto hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    fd[i] = (smoothed(hi, Rng(101)) - smoothed(lo, Rng(101))) / (2.0 * h);
  }

  Rng rng(7);
  const long n = 100000;
  const auto bounds = standardized_bounds(x, box, beta);
  const auto mu = trunc_normal_mean(bounds);
  std::vector<std::vector<double>> draws(2, std::vector<double>(n));
  for (long i = 0; i < n; ++i) {
    const auto u = sample_trunc_normal(bounds, rng);
    GradientSample s{u, mu, c({x[0] + beta * u[0], x[1] + beta * u[1]}),
                     c(x), beta};
    const auto g = one_sided_estimate(s);
    draws[0][i] = g[0];
    draws[1][i] = g[1];
  }
  for (int i = 0; i < 2; ++i) {
    const double mean = sample_mean(draws[i]);
    const double se = sample_std(draws[i], mean) / std::sqrt(double(n));
    CHECK(std::fabs(mean - fd[i]) <= 3.0 * se);
  }
}

TEST_CASE("smoothing stays within the Lipschitz distance") {
  // c(y) = L * |y - a|_2 is exactly L-Lipschitz.
  const double L = 1.7;
  const std::vector<double> a = {0.7, 0.1, 0.5};
  auto c = [&](const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      acc += (y[i] - a[i]) * (y[i] - a[i]);
    return L * std::sqrt(acc);
  };
  const Box box = Box::cube(3, 0.0, 1.0);
  const double beta = 0.2;
  const double bound = L * beta * std::sqrt(3.0);

  Rng rng(55);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(3);
    for (auto& xi : x) xi = rng.uniform(0.0, 1.0);
    const auto bounds = standardized_bounds(x, box, beta);
    const long n = 4000;
    std::vector<double> vals(n);
    for (auto& v : vals) {
      const auto u = sample_trunc_normal(bounds, rng);
      v = c({x[0] + beta * u[0], x[1] + beta * u[1], x[2] + beta * u[2]});
    }
    const double mean = sample_mean(vals);
    const double se = sample_std(vals, mean) / std::sqrt(double(n));
    CHECK(std::fabs(mean - c(x)) <= bound + 3.0 * se);
  }
}
