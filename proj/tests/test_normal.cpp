#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ramsa/errors.hpp"
#include "ramsa/normal.hpp"

using namespace ramsa;

namespace {

// Simpson quadrature of the standard normal density on [0, z].
double cdf_by_quadrature(double z) {
  const int n = 20000;
  const double h = z / n;
  double acc = 0.0;
  auto pdf = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::acos(-1.0));
  };
  for (int i = 0; i < n; ++i) {
    const double a = i * h;
    acc += h / 6.0 * (pdf(a) + 4.0 * pdf(a + 0.5 * h) + pdf(a + h));
  }
  return 0.5 + acc;
}

}  // namespace

TEST_CASE("density and distribution values") {
  CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804).epsilon(1e-9));
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std_normal_cdf(1.96) ==
        doctest::Approx(cdf_by_quadrature(1.96)).epsilon(1e-12));
  CHECK(std_normal_cdf(1.96) == doctest::Approx(0.9750021).epsilon(1e-7));
  CHECK(std_normal_ccdf(3.0) ==
        doctest::Approx(1.0 - cdf_by_quadrature(3.0)).epsilon(1e-9));
}

TEST_CASE("quantile inverts the distribution") {
  for (double p = 1e-12; p < 1.0; p = p < 0.01 ? p * 10 : p + 0.0097) {
    CHECK(std_normal_cdf(std_normal_quantile(p)) ==
          doctest::Approx(p).epsilon(1e-11));
  }
  // deep upper tail through the complementary pair
  for (double q : {1e-30, 1e-100, 1e-250}) {
    const double z = std_normal_cquantile(q);
    CHECK(std_normal_ccdf(z) / q == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(std_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(std_normal_pdf(std::nan("")), InputError);
  CHECK_THROWS_AS(std_normal_cdf(std::nan("")), InputError);
  CHECK_THROWS_AS(std_normal_quantile(0.0), InputError);
  CHECK_THROWS_AS(std_normal_quantile(1.0), InputError);
  CHECK_THROWS_AS(std_normal_quantile(-0.3), InputError);
}
