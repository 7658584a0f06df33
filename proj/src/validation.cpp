#include "ramsa/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ramsa/rng.hpp"

namespace ramsa {

FeasibilityReport mc_feasibility(const Problem& problem,
                                 const std::vector<double>& x_unit,
                                 long n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw InputError("mc_feasibility: need samples");
  const auto m = static_cast<std::size_t>(problem.constraint_count);
  const auto x = scale_to_box(x_unit, problem.box);

  Rng rng(seed);
  FeasibilityReport report;
  report.n_samples = n_samples;
  report.constraint_probs.assign(m, 0.0);
  report.prob_std_errors.assign(m, 0.0);

  double obj_sum = 0.0, obj_sq = 0.0;
  std::vector<long> satisfied(m, 0);
  long valid = 0;
  for (long s = 0; s < n_samples; ++s) {
    const auto noise = problem.draw_noise(rng, x);
    std::vector<double> out;
    try {
      out = evaluate_raw(problem, x, noise);
    } catch (const EvaluationError&) {
      ++report.failures;
      continue;
    }
    ++valid;
    obj_sum += out[0];
    obj_sq += out[0] * out[0];
    for (std::size_t j = 0; j < m; ++j)
      if (out[j + 1] <= 0.0) ++satisfied[j];
  }

  report.valid = report.failures * 100 <= n_samples;
  if (valid > 0) {
    report.mean_objective = obj_sum / static_cast<double>(valid);
    if (valid > 1) {
      const double var =
          (obj_sq - obj_sum * obj_sum / static_cast<double>(valid)) /
          static_cast<double>(valid - 1);
      report.objective_std = var > 0.0 ? std::sqrt(var) : 0.0;
    }
    bool all_pass = true;
    for (std::size_t j = 0; j < m; ++j) {
      const double p =
          static_cast<double>(satisfied[j]) / static_cast<double>(valid);
      report.constraint_probs[j] = p;
      report.prob_std_errors[j] =
          std::sqrt(p * (1.0 - p) / static_cast<double>(valid));
      if (p < kSuccessProbability) all_pass = false;
    }
    report.success = all_pass && report.valid;
  } else {
    report.valid = false;
  }
  return report;
}

EpistemicGrid EpistemicGrid::for_problem(const Problem& problem,
                                         int resolution) {
  if (resolution < 2) throw InputError("EpistemicGrid: resolution >= 2");
  EpistemicGrid grid;
  grid.resolution = resolution;
  for (auto idx : problem.uncertainty.epistemic_indices()) {
    const auto& c = problem.uncertainty.components[idx];
    grid.bounds.emplace_back(std::min(c.p1, c.p2), std::max(c.p1, c.p2));
  }
  if (grid.bounds.empty())
    throw InputError("EpistemicGrid: problem has no epistemic components");
  return grid;
}

WorstCaseReport worst_case_epistemic(const Problem& problem,
                                     const std::vector<double>& x_unit,
                                     const EpistemicGrid& grid,
                                     long mc_samples, std::uint64_t seed) {
  if (grid.resolution < 2)
    throw InputError("worst_case_epistemic: resolution >= 2");
  const auto m = static_cast<std::size_t>(problem.constraint_count);
  const auto dims = grid.bounds.size();
  if (dims != problem.uncertainty.epistemic_indices().size())
    throw InputError("worst_case_epistemic: grid does not match the "
                     "problem's epistemic components");
  const auto x = scale_to_box(x_unit, problem.box);

  WorstCaseReport report;
  report.per_constraint.assign(m, WorstCaseRow{});
  std::vector<double> best(m, -std::numeric_limits<double>::infinity());

  // Walk the full cartesian grid of epistemic means.
  std::vector<int> counter(dims, 0);
  std::vector<double> means(dims, 0.0);
  while (true) {
    for (std::size_t d = 0; d < dims; ++d) {
      const auto [lo, hi] = grid.bounds[d];
      means[d] = lo + (hi - lo) * static_cast<double>(counter[d]) /
                          static_cast<double>(grid.resolution - 1);
    }
    const Problem pinned = problem.with_epistemic_means(means);
    const auto noise = pinned.uncertainty.mean_realization(x);
    const auto out = evaluate_raw(pinned, x, noise);
    for (std::size_t j = 0; j < m; ++j) {
      if (out[j + 1] > best[j]) {
        best[j] = out[j + 1];
        report.per_constraint[j].argmax_means = means;
        report.per_constraint[j].deterministic_value = out[j + 1];
      }
    }
    std::size_t d = 0;
    while (d < dims && ++counter[d] == grid.resolution) counter[d++] = 0;
    if (d == dims) break;
  }

  // Probabilistic re-check at every distinct argmax combination. The point
  // is feasible when every constraint clears the threshold at every
  // checked combination.
  report.feasible = true;
  std::vector<std::vector<double>> checked_means;
  std::vector<std::vector<double>> checked_probs;
  for (std::size_t j = 0; j < m; ++j) {
    auto& row = report.per_constraint[j];
    const std::vector<double>* probs = nullptr;
    for (std::size_t q = 0; q < checked_means.size(); ++q)
      if (checked_means[q] == row.argmax_means) {
        probs = &checked_probs[q];
        break;
      }
    if (probs == nullptr) {
      const Problem pinned = problem.with_epistemic_means(row.argmax_means);
      const auto check = mc_feasibility(pinned, x_unit, mc_samples,
                                        derive_seed(seed, 7, checked_means.size()));
      checked_means.push_back(row.argmax_means);
      checked_probs.push_back(check.constraint_probs);
      probs = &checked_probs.back();
      for (double p : check.constraint_probs)
        if (p < kSuccessProbability) report.feasible = false;
    }
    row.probability = (*probs)[j];
    row.feasible = row.probability >= kSuccessProbability;
  }
  return report;
}

namespace {

// Epistemic success criterion for one solved point.
bool epistemic_success(const Problem& problem,
                       const std::vector<double>& x_unit, long mc_samples,
                       std::uint64_t seed, FeasibilityReport& representative) {
  const auto idx = problem.uncertainty.epistemic_indices();
  const bool points =
      problem.uncertainty.components[idx.front()].kind ==
      DistKind::NormalMeanPoints;
  if (points) {
    // Every candidate combination of the point means must pass; the report
    // with the weakest constraint is kept as the representative.
    const auto dims = idx.size();
    std::vector<int> counter(dims, 0);
    bool ok = true;
    double rep_worst = 2.0;
    std::uint64_t combo = 0;
    while (true) {
      std::vector<double> means(dims);
      for (std::size_t d = 0; d < dims; ++d) {
        const auto& c = problem.uncertainty.components[idx[d]];
        means[d] = counter[d] == 0 ? c.p1 : c.p2;
      }
      const Problem pinned = problem.with_epistemic_means(means);
      const auto rep =
          mc_feasibility(pinned, x_unit, mc_samples, derive_seed(seed, 11, combo));
      double worst = 1.0;
      for (double p : rep.constraint_probs) worst = std::min(worst, p);
      if (worst < rep_worst) {
        rep_worst = worst;
        representative = rep;
      }
      if (!rep.success) ok = false;
      ++combo;
      std::size_t d = 0;
      while (d < dims && ++counter[d] == 2) counter[d++] = 0;
      if (d == dims) break;
    }
    return ok;
  }
  const auto grid = EpistemicGrid::for_problem(problem);
  const auto report =
      worst_case_epistemic(problem, x_unit, grid, mc_samples, seed);
  // Representative numbers at the midpoint means for reporting.
  std::vector<double> mid;
  for (auto i : idx) {
    const auto& c = problem.uncertainty.components[i];
    mid.push_back(0.5 * (c.p1 + c.p2));
  }
  representative = mc_feasibility(problem.with_epistemic_means(mid), x_unit,
                                  mc_samples, derive_seed(seed, 13));
  representative.success = report.feasible;
  return report.feasible;
}

}  // namespace

TrialReport run_trial(const Problem& problem, const SolverConfig& config,
                      int runs, long budget_per_run, long mc_samples,
                      int jobs) {
  if (runs < 1) throw InputError("run_trial: runs >= 1");
  const auto n = static_cast<std::size_t>(problem.design_dim);
  const auto m = static_cast<std::size_t>(problem.constraint_count);
  const bool epistemic = !problem.uncertainty.epistemic_indices().empty();

  TrialReport report;
  report.runs.resize(static_cast<std::size_t>(runs));
  report.evals_per_run = budget_per_run;

  const std::uint64_t master = config.seed;
  auto worker = [&](int r) {
    RunRecord& rec = report.runs[static_cast<std::size_t>(r)];
    rec.run_id = r;
    rec.seed = derive_seed(master, 1, static_cast<std::uint64_t>(r));
    SolverConfig run_config = config;
    run_config.seed = rec.seed;
    run_config.budget = budget_per_run;
    try {
      rec.solve = run(problem, run_config);
    } catch (const Error& e) {
      rec.solve.status = RunStatus::Aborted;
      rec.solve.diagnostic = e.what();
      rec.success = false;
      return;
    }
    if (rec.solve.status == RunStatus::Aborted) {
      rec.success = false;
      return;
    }
    const std::uint64_t mc_seed =
        derive_seed(master, 2, static_cast<std::uint64_t>(r));
    if (epistemic) {
      rec.success = epistemic_success(problem, rec.solve.x_unit, mc_samples,
                                      mc_seed, rec.feasibility);
    } else {
      rec.feasibility =
          mc_feasibility(problem, rec.solve.x_unit, mc_samples, mc_seed);
      rec.success = rec.feasibility.success;
    }
  };

  int threads = jobs > 0 ? jobs
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (threads > runs) threads = runs;
  if (threads == 1) {
    for (int r = 0; r < runs; ++r) worker(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1))
          worker(r);
      });
    for (auto& th : pool) th.join();
  }

  // Fixed-order aggregation, independent of scheduling.
  report.mean_constraint_probs.assign(m, 0.0);
  report.mean_point.assign(n, 0.0);
  report.point_std.assign(n, 0.0);
  long completed = 0;
  for (const auto& rec : report.runs) {
    if (rec.solve.status == RunStatus::Aborted) continue;
    ++completed;
    if (rec.success) ++report.success_count;
    report.mean_objective += rec.feasibility.mean_objective;
    for (std::size_t j = 0; j < m; ++j)
      report.mean_constraint_probs[j] += rec.feasibility.constraint_probs[j];
    for (std::size_t i = 0; i < n; ++i)
      report.mean_point[i] += rec.solve.x_original[i];
  }
  if (completed > 0) {
    report.mean_objective /= static_cast<double>(completed);
    for (auto& p : report.mean_constraint_probs)
      p /= static_cast<double>(completed);
    for (auto& c : report.mean_point) c /= static_cast<double>(completed);
    if (completed > 1) {
      for (const auto& rec : report.runs) {
        if (rec.solve.status == RunStatus::Aborted) continue;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = rec.solve.x_original[i] - report.mean_point[i];
          report.point_std[i] += d * d;
        }
      }
      for (auto& s : report.point_std)
        s = std::sqrt(s / static_cast<double>(completed - 1));
    }
  }
  return report;
}

std::pair<TrialReport, TrialReport> compare_estimators(
    const Problem& problem, const SolverConfig& gaussian_config,
    const SolverConfig& truncated_config, int runs, long gaussian_budget,
    long truncated_budget, long mc_samples, int jobs) {
  SolverConfig gauss = gaussian_config;
  gauss.kernel = KernelKind::Gaussian;
  TrialReport plain =
      run_trial(problem, gauss, runs, gaussian_budget, mc_samples, jobs);

  Problem bounded = problem;
  bounded.uncertainty.truncate_design_noise = true;
  SolverConfig trunc = truncated_config;
  trunc.kernel = KernelKind::TruncatedGaussian;
  TrialReport confined =
      run_trial(bounded, trunc, runs, truncated_budget, mc_samples, jobs);
  for (const auto& rec : confined.runs)
    if (!rec.solve.queries_in_bounds)
      throw Error("compare_estimators: truncated run queried outside the "
                  "unit cube");
  return {std::move(plain), std::move(confined)};
}

}  // namespace ramsa
