#include "ramsa/solver.hpp"

#include <cassert>
#include <cmath>

#include "ramsa/rng.hpp"

namespace ramsa {

double step_size(const StepSchedule& schedule, long k) {
  if (k < 0) throw InputError("step_size: negative iteration index");
  return schedule.s0 / std::pow(static_cast<double>(k) + 1.0, schedule.tau);
}

void update_moments(std::vector<double>& moment_avg,
                    std::vector<double>& moment_sq,
                    const std::vector<double>& gradient, double s4) {
  if (!(s4 > 0.0) || !(s4 <= 1.0))
    throw InputError("update_moments: s4 must lie in (0, 1]");
  if (moment_avg.size() != gradient.size() ||
      moment_sq.size() != gradient.size())
    throw InputError("update_moments: dimension mismatch");
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    const double g = gradient[i];
    moment_avg[i] = s4 * g + (1.0 - s4) * moment_avg[i];
    moment_sq[i] = s4 * g * g + (1.0 - s4) * moment_sq[i];
  }
}

std::vector<double> projected_update(const std::vector<double>& z,
                                     const std::vector<double>& moment_avg,
                                     const std::vector<double>& moment_sq,
                                     double step, double epsilon,
                                     const Box& box, UpdateDirection dir) {
  if (z.size() != moment_avg.size() || z.size() != moment_sq.size() ||
      z.size() != box.size())
    throw InputError("projected_update: dimension mismatch");
  std::vector<double> out(z.size());
  const double sign = dir == UpdateDirection::Descent ? -1.0 : 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (moment_sq[i] < 0.0)
      throw InputError("projected_update: negative squared moment");
    const double delta =
        step * moment_avg[i] / (std::sqrt(moment_sq[i]) + epsilon);
    out[i] = box.clamp(z[i] + sign * delta, i);
  }
  return out;
}

double alpha_step(double alpha_k, double alpha_target, double gamma) {
  if (!(gamma >= 0.0) || !(gamma < 1.0))
    throw InputError("alpha_step: gamma must lie in [0, 1)");
  return alpha_target + gamma * (alpha_k - alpha_target);
}

SolverResult run(const Problem& problem, const SolverConfig& config) {
  const auto n = static_cast<std::size_t>(problem.design_dim);
  const auto m = static_cast<std::size_t>(problem.constraint_count);

  if (!(config.lambda_step.tau > config.x_step.tau &&
        config.x_step.tau > config.t_step.tau &&
        config.t_step.tau > config.moment_step.tau))
    throw InputError("run: decay exponents must order the timescales "
                     "(lambda slowest ... moments fastest)");
  if (!(config.epsilon > 0.0)) throw InputError("run: epsilon must be > 0");

  const long per_iter = config.calls_per_iteration();
  long iterations = config.budget / per_iter;
  if (config.max_iterations >= 0 && config.max_iterations < iterations)
    iterations = config.max_iterations;
  if (iterations < 1)
    throw InputError("run: budget below one iteration's worth of calls");

  const double gamma = config.gamma >= 0.0
                           ? config.gamma
                           : 1.0 - 5.0 / (2.0 * static_cast<double>(iterations));
  if (!(gamma >= 0.0) || !(gamma < 1.0))
    throw InputError("run: gamma must lie in [0, 1)");

  std::vector<double> alpha_target = config.alpha_target;
  if (alpha_target.empty()) alpha_target.assign(m + 1, 0.99);
  if (alpha_target.size() == 1) alpha_target.assign(m + 1, alpha_target[0]);
  if (alpha_target.size() != m + 1)
    throw InputError("run: one reliability target per output required");
  for (double a : alpha_target)
    if (!(a >= 0.0) || !(a < 1.0))
      throw InputError("run: reliability targets must lie in [0, 1)");

  const Box unit_box = Box::cube(n, 0.0, 1.0);
  const Box t_box = config.t_box.empty() && m + 1 > 0
                        ? Box::cube(m + 1, -2.0, 2.0)
                        : config.t_box;
  const Box lambda_box =
      config.lambda_box.empty() && m > 0 ? Box::cube(m, 0.0, 20.0)
                                         : config.lambda_box;
  if (t_box.size() != m + 1) throw InputError("run: t box dimension");
  if (lambda_box.size() != m) throw InputError("run: lambda box dimension");
  for (std::size_t j = 0; j < m; ++j)
    if (lambda_box.lower[j] != 0.0)
      throw InputError("run: lambda box must have zero lower bounds");

  Rng rng(config.seed);
  EvaluationBudget budget(config.budget);

  const std::size_t dim = n + 2 * m + 1;
  SolverState state;
  state.x = problem.x0_unit();
  for (std::size_t i = 0; i < n; ++i) state.x[i] = unit_box.clamp(state.x[i], i);
  state.t.assign(m + 1, 0.0);
  state.lambda.assign(m, 0.0);
  state.moment_avg.assign(dim, 0.0);
  state.moment_sq.assign(dim, 0.0);
  state.alpha.assign(m + 1, 0.0);

  SolverResult result;
  GradientEstimator estimator(problem, config.kernel, config.estimator,
                              config.beta1, config.beta2, t_box,
                              config.strict_two_eval);

  for (state.k = 0; state.k < iterations; ++state.k) {
    const long k = state.k;
    const double s1 = step_size(config.lambda_step, k);
    const double s2 = step_size(config.x_step, k);
    const double s3 = step_size(config.t_step, k);
    const double s4 = step_size(config.moment_step, k);

    std::vector<RiskLevel> levels(m + 1);
    for (std::size_t j = 0; j <= m; ++j) levels[j] = RiskLevel(state.alpha[j]);

    StackedGradient gradient;
    try {
      gradient = estimator.estimate({state.x, state.t, state.lambda}, levels,
                                    rng, budget);
    } catch (const EvaluationError& e) {
      result.status = RunStatus::Aborted;
      result.diagnostic = std::string("evaluation failed twice at k=") +
                          std::to_string(k) + ": " + e.what();
      break;
    } catch (const BudgetError& e) {
      result.status = RunStatus::BudgetExhausted;
      result.diagnostic = e.what();
      break;
    }

    const auto flat = gradient.flatten();
    if (k == 0) {
      state.moment_avg = flat;
      for (std::size_t i = 0; i < dim; ++i)
        state.moment_sq[i] = flat[i] * flat[i];
    }
    update_moments(state.moment_avg, state.moment_sq, flat, s4);

    const auto span = [&](const std::vector<double>& w, std::size_t lo,
                          std::size_t len) {
      return std::vector<double>(w.begin() + static_cast<long>(lo),
                                 w.begin() + static_cast<long>(lo + len));
    };
    state.t = projected_update(state.t, span(state.moment_avg, n, m + 1),
                               span(state.moment_sq, n, m + 1), s3,
                               config.epsilon, t_box,
                               UpdateDirection::Descent);
    state.x = projected_update(state.x, span(state.moment_avg, 0, n),
                               span(state.moment_sq, 0, n), s2, config.epsilon,
                               unit_box, UpdateDirection::Descent);
    state.lambda = projected_update(
        state.lambda, span(state.moment_avg, n + m + 1, m),
        span(state.moment_sq, n + m + 1, m), s1, config.epsilon, lambda_box,
        UpdateDirection::Ascent);

    for (std::size_t j = 0; j <= m; ++j)
      state.alpha[j] = alpha_step(state.alpha[j], alpha_target[j], gamma);

    assert(unit_box.contains(state.x));
    assert(t_box.contains(state.t));
    assert(lambda_box.contains(state.lambda));

    if (config.record_trace) {
      TraceRow row;
      row.k = k;
      row.x = state.x;
      row.t = state.t;
      row.lambda = state.lambda;
      row.alpha = state.alpha;
      row.s1 = s1;
      row.s2 = s2;
      row.s3 = s3;
      row.s4 = s4;
      row.gradient = flat;
      row.moment_avg = state.moment_avg;
      row.moment_sq = state.moment_sq;
      result.trace.push_back(std::move(row));
    }
  }

  result.x_unit = state.x;
  result.x_original = scale_to_box(state.x, problem.box);
  result.t = state.t;
  result.lambda = state.lambda;
  result.alpha = state.alpha;
  result.iterations = state.k;
  result.budget_used = budget.used;
  result.queries_in_bounds = estimator.out_of_bounds_queries() == 0;
  return result;
}

}  // namespace ramsa
