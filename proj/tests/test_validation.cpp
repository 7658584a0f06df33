#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ramsa/config.hpp"
#include "ramsa/problems.hpp"
#include "ramsa/validation.hpp"

using namespace ramsa;

namespace {

Problem always_feasible() {
  Problem p;
  p.name = "safe";
  p.design_dim = 1;
  p.constraint_count = 1;
  p.box = Box({0.0}, {1.0});
  p.x0 = {0.5};
  p.evaluator = [](const std::vector<double>& x, const std::vector<double>&) {
    return std::vector<double>{x[0], -1.0};
  };
  return p;
}

Problem coin_flip_constraint() {
  Problem p;
  p.name = "coin";
  p.design_dim = 1;
  p.constraint_count = 1;
  p.box = Box({0.0}, {1.0});
  p.x0 = {0.5};
  p.uncertainty.components.push_back(UncertainComponent::normal(0.0, 1.0));
  p.evaluator = [](const std::vector<double>& x,
                   const std::vector<double>& e) {
    return std::vector<double>{x[0], e[0]};
  };
  return p;
}

}  // namespace

TEST_CASE("deterministic feasibility is exact") {
  const auto report = mc_feasibility(always_feasible(), {0.5}, 2000, 1);
  CHECK(report.constraint_probs[0] == 1.0);
  CHECK(report.success);
  CHECK(report.valid);
  CHECK(report.failures == 0);
  CHECK(report.mean_objective == doctest::Approx(0.5));
}

TEST_CASE("standard normal constraint sits at one half") {
  const auto report = mc_feasibility(coin_flip_constraint(), {0.5}, 1000000, 2);
  CHECK(std::fabs(report.constraint_probs[0] - 0.5) < 0.002);
  CHECK(report.prob_std_errors[0] == doctest::Approx(0.0005).epsilon(0.01));
  CHECK_FALSE(report.success);
}

TEST_CASE("published reference point checks out") {
  const Problem p = builtin_problem("SCD");
  const auto x = sora_reference_point("SCD");
  const auto report =
      mc_feasibility(p, unit_coordinates(x, p.box), 1000000, 5);
  CHECK(report.mean_objective == doctest::Approx(3989.0).epsilon(0.004));
  CHECK(std::fabs(report.constraint_probs[0] - 0.9947) < 0.002);
  CHECK(report.success);
}

TEST_CASE("failures are counted and can invalidate the report") {
  int counter = 0;
  Problem p = always_feasible();
  p.evaluator = [&counter](const std::vector<double>&,
                           const std::vector<double>&) {
    ++counter;
    if (counter % 25 == 0)  // 4% failures
      return std::vector<double>{std::nan(""), -1.0};
    return std::vector<double>{0.5, -1.0};
  };
  const auto report = mc_feasibility(p, {0.5}, 1000, 3);
  CHECK(report.failures == 40);
  CHECK_FALSE(report.valid);
  CHECK_FALSE(report.success);

  counter = 1;  // 0.4% failures now
  Problem q = always_feasible();
  q.evaluator = [&counter](const std::vector<double>&,
                           const std::vector<double>&) {
    ++counter;
    if (counter % 250 == 0)
      return std::vector<double>{std::nan(""), -1.0};
    return std::vector<double>{0.5, -1.0};
  };
  const auto fine = mc_feasibility(q, {0.5}, 1000, 3);
  CHECK(fine.failures == 4);
  CHECK(fine.valid);
  CHECK(fine.success);
}

TEST_CASE("single-run trial on the noise-free toy") {
  Problem p;
  p.name = "toy";
  p.design_dim = 1;
  p.constraint_count = 0;
  p.box = Box({0.0}, {1.0});
  p.x0 = {0.15};
  p.evaluator = [](const std::vector<double>& x, const std::vector<double>&) {
    return std::vector<double>{(x[0] - 0.6) * (x[0] - 0.6)};
  };
  SolverConfig config;
  config.seed = 9;
  const auto report = run_trial(p, config, 1, 5000, 500, 1);
  CHECK(report.success_count == 1);
  CHECK(std::fabs(report.runs[0].solve.x_unit[0] - 0.6) < 0.05);
}

TEST_CASE("trial statistics recompute from the per-run data") {
  const Problem p = builtin_problem("SCD");
  RunConfig rc = paper_row("SCD", KernelKind::Gaussian);
  rc.seed = 3;
  const auto report = run_trial(p, rc.materialize(p), 12, 2000, 2000, 2);
  REQUIRE(report.runs.size() == 12);

  int successes = 0;
  std::vector<double> mean(3, 0.0);
  double obj = 0.0;
  for (const auto& r : report.runs) {
    if (r.success) ++successes;
    obj += r.feasibility.mean_objective;
    for (int i = 0; i < 3; ++i) mean[i] += r.solve.x_original[i];
  }
  obj /= 12.0;
  for (auto& c : mean) c /= 12.0;
  CHECK(successes == report.success_count);
  CHECK(obj == doctest::Approx(report.mean_objective).epsilon(1e-12));
  for (int i = 0; i < 3; ++i)
    CHECK(mean[i] == doctest::Approx(report.mean_point[i]).epsilon(1e-12));

  std::vector<double> sd(3, 0.0);
  for (const auto& r : report.runs)
    for (int i = 0; i < 3; ++i) {
      const double d = r.solve.x_original[i] - report.mean_point[i];
      sd[i] += d * d;
    }
  for (int i = 0; i < 3; ++i)
    CHECK(std::sqrt(sd[i] / 11.0) ==
          doctest::Approx(report.point_std[i]).epsilon(1e-12));
}

TEST_CASE("trials replay identically and ignore the thread count") {
  const Problem p = builtin_problem("WBD");
  RunConfig rc = paper_row("WBD", KernelKind::Gaussian);
  rc.seed = 77;
  const auto sc = rc.materialize(p);
  const auto a = run_trial(p, sc, 6, 1500, 1000, 1);
  const auto b = run_trial(p, sc, 6, 1500, 1000, 3);
  CHECK(a.success_count == b.success_count);
  CHECK(a.mean_objective == b.mean_objective);
  for (int r = 0; r < 6; ++r) {
    CHECK(a.runs[r].seed == b.runs[r].seed);
    CHECK(a.runs[r].solve.x_unit == b.runs[r].solve.x_unit);
    CHECK(a.runs[r].feasibility.constraint_probs ==
          b.runs[r].feasibility.constraint_probs);
  }
}

TEST_CASE("worst-case grid search finds the bilinear corner") {
  Problem p;
  p.name = "bilinear";
  p.design_dim = 1;
  p.constraint_count = 1;
  p.box = Box({0.0}, {1.0});
  p.x0 = {0.5};
  auto& u = p.uncertainty.components;
  u.push_back(UncertainComponent::normal_mean_interval(0.0, 1.0, 0.01));
  u.push_back(UncertainComponent::normal_mean_interval(0.0, 1.0, 0.01));
  p.evaluator = [](const std::vector<double>& x,
                   const std::vector<double>& e) {
    return std::vector<double>{x[0], e[0] * e[1] - 2.0};
  };
  const auto grid = EpistemicGrid::for_problem(p, 11);
  const auto report = worst_case_epistemic(p, {0.5}, grid, 2000, 4);
  REQUIRE(report.per_constraint.size() == 1);
  CHECK(report.per_constraint[0].argmax_means == std::vector<double>{1.0, 1.0});
  CHECK(report.per_constraint[0].deterministic_value == doctest::Approx(-1.0));
  CHECK(report.feasible);  // 1*1 - 2 < 0 with tiny noise
}

TEST_CASE("reference point fails the interval worst case") {
  const Problem p = builtin_problem("VSI-epistemic-interval");
  const auto x = sora_reference_point("VSI");
  const auto grid = EpistemicGrid::for_problem(p, 15);
  const auto report =
      worst_case_epistemic(p, unit_coordinates(x, p.box), grid, 100000, 11);
  CHECK_FALSE(report.feasible);
  // the seventh constraint worsens as the first epistemic mean falls; it
  // does not involve the second one, so that coordinate is arbitrary
  const auto& row = report.per_constraint[6];
  CHECK(row.argmax_means[0] == doctest::Approx(0.192));
  CHECK(row.probability > 0.86);
  CHECK(row.probability < 0.90);
}

TEST_CASE("estimator comparison is deterministic and confined") {
  const Problem p = builtin_problem("SCD");
  RunConfig gauss = paper_row("SCD", KernelKind::Gaussian);
  RunConfig trunc = paper_row("SCD", KernelKind::TruncatedGaussian);
  gauss.seed = trunc.seed = 13;
  const auto pair1 =
      compare_estimators(p, gauss.materialize(p), trunc.materialize(p), 4,
                         1000, 1500, 1000, 2);
  const auto pair2 =
      compare_estimators(p, gauss.materialize(p), trunc.materialize(p), 4,
                         1000, 1500, 1000, 2);
  CHECK(pair1.first.mean_objective == pair2.first.mean_objective);
  CHECK(pair1.second.mean_objective == pair2.second.mean_objective);
  for (const auto& rec : pair1.second.runs)
    CHECK(rec.solve.queries_in_bounds);
}

TEST_CASE("epistemic trials apply their stricter per-run criteria") {
  // points variant: all four mean combinations must pass
  const Problem points = builtin_problem("VSI-epistemic-points");
  RunConfig rc = paper_row("VSI-epistemic-points", KernelKind::Gaussian);
  rc.seed = 2;
  const auto ptrial = run_trial(points, rc.materialize(points), 2, 3000, 1500, 2);
  CHECK(ptrial.runs.size() == 2);
  for (const auto& r : ptrial.runs)
    CHECK(r.feasibility.constraint_probs.size() == 10);

  // interval variant: worst-case grid verification decides success
  const Problem interval = builtin_problem("VSI-epistemic-interval");
  RunConfig ri = paper_row("VSI-epistemic-interval", KernelKind::Gaussian);
  ri.seed = 2;
  const auto itrial =
      run_trial(interval, ri.materialize(interval), 2, 3000, 1500, 2);
  CHECK(itrial.runs.size() == 2);

  // determinism across the epistemic verification paths
  const auto replay =
      run_trial(interval, ri.materialize(interval), 2, 3000, 1500, 1);
  CHECK(replay.success_count == itrial.success_count);
  CHECK(replay.runs[0].solve.x_unit == itrial.runs[0].solve.x_unit);
}
