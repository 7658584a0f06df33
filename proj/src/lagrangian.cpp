#include "ramsa/lagrangian.hpp"

#include <cmath>

namespace ramsa {

namespace {

void check_state(const Problem& problem, const LagrangeState& state,
                 const std::vector<RiskLevel>& levels) {
  const auto n = static_cast<std::size_t>(problem.design_dim);
  const auto m = static_cast<std::size_t>(problem.constraint_count);
  if (state.x.size() != n) throw InputError("lagrangian: x dimension");
  if (state.t.size() != m + 1) throw InputError("lagrangian: t dimension");
  if (state.lambda.size() != m)
    throw InputError("lagrangian: lambda dimension");
  if (levels.size() != m + 1)
    throw InputError("lagrangian: one risk level per output required");
}

}  // namespace

double lagrangian_value(const std::vector<double>& transformed_outputs,
                        const std::vector<double>& t,
                        const std::vector<double>& lambda,
                        const std::vector<RiskLevel>& levels) {
  if (transformed_outputs.size() != t.size() || t.size() != lambda.size() + 1 ||
      levels.size() != t.size())
    throw InputError("lagrangian_value: dimension mismatch");
  double value = rockafellar_uryasev(transformed_outputs[0], t[0], levels[0]);
  for (std::size_t j = 0; j < lambda.size(); ++j)
    value += lambda[j] * rockafellar_uryasev(transformed_outputs[j + 1],
                                             t[j + 1], levels[j + 1]);
  return value;
}

std::vector<double> StackedGradient::flatten() const {
  std::vector<double> flat;
  flat.reserve(flat_size());
  flat.insert(flat.end(), x.begin(), x.end());
  flat.insert(flat.end(), t.begin(), t.end());
  flat.insert(flat.end(), lambda.begin(), lambda.end());
  return flat;
}

double noisy_lagrangian(const Problem& problem, const LagrangeState& state,
                        const std::vector<double>& noise,
                        const std::vector<RiskLevel>& levels,
                        EvaluationBudget& budget) {
  check_state(problem, state, levels);
  const auto outputs = evaluate_transformed(problem, state.x, noise, budget);
  return lagrangian_value(outputs, state.t, state.lambda, levels);
}

StackedGradient stacked_gradient(
    const Problem& problem, const LagrangeState& state,
    const std::vector<double>& u, const std::vector<double>& v,
    const std::vector<double>& mu1, const std::vector<double>& mu2,
    double beta1, double beta2, const std::vector<double>& noise1,
    const std::vector<double>& noise2, const std::vector<RiskLevel>& levels,
    EvaluationBudget& budget, bool reuse_base_for_dual) {
  check_state(problem, state, levels);
  const auto n = state.x.size();
  const auto mp1 = state.t.size();
  if (u.size() != n || mu1.size() != n)
    throw InputError("stacked_gradient: direction dimension (x)");
  if (v.size() != mp1 || mu2.size() != mp1)
    throw InputError("stacked_gradient: direction dimension (t)");
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw InputError("stacked_gradient: widths must be > 0");

  std::vector<double> x_fwd(n), t_fwd(mp1);
  for (std::size_t i = 0; i < n; ++i) x_fwd[i] = state.x[i] + beta1 * u[i];
  for (std::size_t j = 0; j < mp1; ++j) t_fwd[j] = state.t[j] + beta2 * v[j];

  const auto out_fwd = evaluate_transformed(problem, x_fwd, noise1, budget);
  const double lag_fwd = lagrangian_value(out_fwd, t_fwd, state.lambda, levels);

  const auto out_base = evaluate_transformed(problem, state.x, noise2, budget);
  const double lag_base =
      lagrangian_value(out_base, state.t, state.lambda, levels);

  // Dual block: the risk surrogate of each constraint at the base point.
  // Production mode reuses the base call; the literal mode re-evaluates the
  // base point under the forward realization.
  const std::vector<double>* dual_outputs = &out_base;
  std::vector<double> out_dual;
  if (!reuse_base_for_dual) {
    out_dual = evaluate_transformed(problem, state.x, noise1, budget);
    dual_outputs = &out_dual;
  }

  StackedGradient g;
  const double diff = lag_fwd - lag_base;
  g.x.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g.x[i] = diff * (u[i] - mu1[i]) / beta1;
  g.t.resize(mp1);
  for (std::size_t j = 0; j < mp1; ++j)
    g.t[j] = diff * (v[j] - mu2[j]) / beta2;
  g.lambda.resize(state.lambda.size());
  for (std::size_t j = 0; j < g.lambda.size(); ++j)
    g.lambda[j] = rockafellar_uryasev((*dual_outputs)[j + 1], state.t[j + 1],
                                      levels[j + 1]);
  return g;
}

namespace {

std::vector<double> normal_vector(Rng& rng, std::size_t dim) {
  std::vector<double> z(dim);
  for (auto& zi : z) zi = rng.normal();
  return z;
}

// Keeps x + sign*beta*u inside [0,1] against final-rounding overshoot;
// genuine excursions (beyond 1e-9) are counted as containment violations.
void confine(const std::vector<double>& x, std::vector<double>& u, double beta,
             double sign, long& out_of_bounds) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double q = x[i] + sign * beta * u[i];
    if (q >= 0.0 && q <= 1.0) continue;
    if (q < -1e-9 || q > 1.0 + 1e-9) ++out_of_bounds;
    const double target = q < 0.0 ? 0.0 : 1.0;
    u[i] = (target - x[i]) / (sign * beta);
    q = x[i] + sign * beta * u[i];
    int guard = 0;
    while ((q < 0.0 || q > 1.0) && guard++ < 8) {
      u[i] = std::nextafter(u[i], 0.0);
      q = x[i] + sign * beta * u[i];
    }
  }
}

TruncBounds reflect(const TruncBounds& b) {
  TruncBounds r = b;
  for (std::size_t i = 0; i < b.size(); ++i) {
    r.lower[i] = -b.upper[i];
    r.upper[i] = -b.lower[i];
  }
  return r;
}

}  // namespace

GradientEstimator::GradientEstimator(const Problem& problem, KernelKind kernel,
                                     EstimatorForm form, double beta1,
                                     double beta2, Box t_box, bool strict)
    : problem_(problem),
      kernel_(kernel),
      form_(form),
      beta1_(beta1),
      beta2_(beta2),
      unit_box_(Box::cube(static_cast<std::size_t>(problem.design_dim), 0.0,
                          1.0)),
      t_box_(std::move(t_box)),
      strict_(strict) {
  if (!(beta1_ > 0.0) || !(beta2_ > 0.0))
    throw InputError("GradientEstimator: widths must be > 0");
  if (t_box_.size() != static_cast<std::size_t>(problem.constraint_count + 1))
    throw InputError("GradientEstimator: t box dimension");
}

long GradientEstimator::calls_per_estimate() const {
  long calls = 2;
  if (form_ == EstimatorForm::TwoSided &&
      kernel_ == KernelKind::TruncatedGaussian)
    calls = 3;
  return strict_ ? calls : calls + 1;
}

StackedGradient GradientEstimator::estimate(const LagrangeState& state,
                                            const std::vector<RiskLevel>& levels,
                                            Rng& rng,
                                            EvaluationBudget& budget) {
  const auto n = state.x.size();
  const auto mp1 = state.t.size();
  const bool truncated = kernel_ == KernelKind::TruncatedGaussian;

  std::vector<double> u, mu1, v, mu2;
  if (truncated) {
    const auto bx = standardized_bounds(state.x, unit_box_, beta1_);
    u = sample_trunc_normal(bx, rng);
    mu1 = trunc_normal_mean(bx);
    const auto bt = standardized_bounds(state.t, t_box_, beta2_);
    v = sample_trunc_normal(bt, rng);
    mu2 = trunc_normal_mean(bt);
    confine(state.x, u, beta1_, +1.0, out_of_bounds_);
  } else {
    u = normal_vector(rng, n);
    mu1.assign(n, 0.0);
    v = normal_vector(rng, mp1);
    mu2.assign(mp1, 0.0);
  }

  std::vector<double> u_back, mu1_back, v_back, mu2_back;
  if (form_ == EstimatorForm::TwoSided) {
    if (truncated) {
      const auto rx = reflect(standardized_bounds(state.x, unit_box_, beta1_));
      u_back = sample_trunc_normal(rx, rng);
      mu1_back = trunc_normal_mean(rx);
      const auto rt = reflect(standardized_bounds(state.t, t_box_, beta2_));
      v_back = sample_trunc_normal(rt, rng);
      mu2_back = trunc_normal_mean(rt);
      confine(state.x, u_back, beta1_, -1.0, out_of_bounds_);
    } else {
      u_back = u;
      mu1_back = mu1;
      v_back = v;
      mu2_back = mu2;
    }
  }

  // A failed evaluation is retried once with fresh noise along the same
  // directions; a second failure propagates and aborts the run.
  try {
    return assemble(state, levels, u, mu1, v, mu2, u_back, mu1_back, v_back,
                    mu2_back, rng, budget);
  } catch (const EvaluationError&) {
    return assemble(state, levels, u, mu1, v, mu2, u_back, mu1_back, v_back,
                    mu2_back, rng, budget);
  }
}

StackedGradient GradientEstimator::assemble(
    const LagrangeState& state, const std::vector<RiskLevel>& levels,
    const std::vector<double>& u, const std::vector<double>& mu1,
    const std::vector<double>& v, const std::vector<double>& mu2,
    const std::vector<double>& u_back, const std::vector<double>& mu1_back,
    const std::vector<double>& v_back, const std::vector<double>& mu2_back,
    Rng& rng, EvaluationBudget& budget) {
  const auto n = state.x.size();
  const auto mp1 = state.t.size();
  const bool truncated = kernel_ == KernelKind::TruncatedGaussian;

  const auto x_ref = scale_to_box(state.x, problem_.box);
  const auto noise1 = problem_.draw_noise(rng, x_ref);
  const auto noise2 = problem_.draw_noise(rng, x_ref);

  if (form_ == EstimatorForm::OneSided)
    return stacked_gradient(problem_, state, u, v, mu1, mu2, beta1_, beta2_,
                            noise1, noise2, levels, budget, strict_);

  LagrangeState fwd = state, bwd = state;
  for (std::size_t i = 0; i < n; ++i) {
    fwd.x[i] = state.x[i] + beta1_ * u[i];
    bwd.x[i] = state.x[i] - beta1_ * u_back[i];
  }
  for (std::size_t j = 0; j < mp1; ++j) {
    fwd.t[j] = state.t[j] + beta2_ * v[j];
    bwd.t[j] = state.t[j] - beta2_ * v_back[j];
  }
  const auto out_fwd = evaluate_transformed(problem_, fwd.x, noise1, budget);
  const double lag_fwd = lagrangian_value(out_fwd, fwd.t, state.lambda, levels);
  const auto out_bwd = evaluate_transformed(problem_, bwd.x, noise2, budget);
  const double lag_bwd = lagrangian_value(out_bwd, bwd.t, state.lambda, levels);

  // With the shared-direction central difference the common Lagrangian
  // level cancels; the independently mirrored truncated form centers each
  // side with a base call instead.
  double base = 0.0;
  const std::vector<double>* dual = &out_fwd;
  std::vector<double> out_base;
  if (truncated) {
    const auto noise3 = problem_.draw_noise(rng, x_ref);
    out_base = evaluate_transformed(problem_, state.x, noise3, budget);
    base = lagrangian_value(out_base, state.t, state.lambda, levels);
    dual = &out_base;
  }
  std::vector<double> out_dual;
  if (!strict_) {
    out_dual = evaluate_transformed(problem_, state.x, noise1, budget);
    dual = &out_dual;
  }

  StackedGradient g;
  g.x.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g.x[i] = ((u[i] - mu1[i]) * (lag_fwd - base) -
              (u_back[i] - mu1_back[i]) * (lag_bwd - base)) /
             (2.0 * beta1_);
  g.t.resize(mp1);
  for (std::size_t j = 0; j < mp1; ++j)
    g.t[j] = ((v[j] - mu2[j]) * (lag_fwd - base) -
              (v_back[j] - mu2_back[j]) * (lag_bwd - base)) /
             (2.0 * beta2_);
  g.lambda.resize(state.lambda.size());
  for (std::size_t j = 0; j < state.lambda.size(); ++j)
    g.lambda[j] =
        rockafellar_uryasev((*dual)[j + 1], state.t[j + 1], levels[j + 1]);
  return g;
}

}  // namespace ramsa
