#include "ramsa/blackbox.hpp"

#include <cmath>

#include "ramsa/smoothing.hpp"

namespace ramsa {

UncertainComponent UncertainComponent::fixed(double v) {
  UncertainComponent c;
  c.kind = DistKind::Fixed;
  c.p1 = v;
  return c;
}

UncertainComponent UncertainComponent::normal(double mean, double std,
                                              int design_index,
                                              bool scale_std_by_design) {
  if (!(std > 0.0)) throw InputError("normal component: std must be > 0");
  UncertainComponent c;
  c.kind = DistKind::Normal;
  c.p1 = mean;
  c.p2 = std;
  c.design_index = design_index;
  c.scale_std_by_design = scale_std_by_design;
  return c;
}

UncertainComponent UncertainComponent::uniform(double lo, double hi,
                                               int design_index) {
  if (!(lo < hi)) throw InputError("uniform component: lo must be below hi");
  UncertainComponent c;
  c.kind = DistKind::Uniform;
  c.p1 = lo;
  c.p2 = hi;
  c.design_index = design_index;
  return c;
}

UncertainComponent UncertainComponent::truncated_normal(double mean,
                                                        double std, double lo,
                                                        double hi) {
  if (!(std > 0.0))
    throw InputError("truncated normal component: std must be > 0");
  if (!(lo < hi))
    throw InputError("truncated normal component: lo must be below hi");
  UncertainComponent c;
  c.kind = DistKind::TruncatedNormal;
  c.p1 = mean;
  c.p2 = std;
  c.p3 = lo;
  c.p4 = hi;
  return c;
}

UncertainComponent UncertainComponent::bernoulli_pair(double v1, double v2) {
  UncertainComponent c;
  c.kind = DistKind::BernoulliPair;
  c.p1 = v1;
  c.p2 = v2;
  return c;
}

UncertainComponent UncertainComponent::normal_mean_points(double m1, double m2,
                                                          double std) {
  if (!(std > 0.0))
    throw InputError("normal_mean_points component: std must be > 0");
  UncertainComponent c;
  c.kind = DistKind::NormalMeanPoints;
  c.p1 = m1;
  c.p2 = m2;
  c.p3 = std;
  return c;
}

UncertainComponent UncertainComponent::normal_mean_interval(double lo,
                                                            double hi,
                                                            double std) {
  if (!(lo < hi))
    throw InputError("normal_mean_interval component: lo must be below hi");
  if (!(std > 0.0))
    throw InputError("normal_mean_interval component: std must be > 0");
  UncertainComponent c;
  c.kind = DistKind::NormalMeanInterval;
  c.p1 = lo;
  c.p2 = hi;
  c.p3 = std;
  return c;
}

namespace {

double draw_component(const UncertainComponent& c, Rng& rng,
                      const std::vector<double>& x_original) {
  switch (c.kind) {
    case DistKind::Fixed:
      return c.p1;
    case DistKind::Normal: {
      double std = c.p2;
      if (c.scale_std_by_design) {
        if (c.design_index < 0 ||
            static_cast<std::size_t>(c.design_index) >= x_original.size())
          throw InputError("uncertainty: design index out of range");
        std = c.p2 * x_original[static_cast<std::size_t>(c.design_index)];
      }
      return c.p1 + std * rng.normal();
    }
    case DistKind::Uniform:
      return rng.uniform(c.p1, c.p2);
    case DistKind::TruncatedNormal: {
      TruncBounds bounds({(c.p3 - c.p1) / c.p2}, {(c.p4 - c.p1) / c.p2});
      return c.p1 + c.p2 * sample_trunc_normal(bounds, rng)[0];
    }
    case DistKind::BernoulliPair:
      return rng.bernoulli() ? c.p2 : c.p1;
    case DistKind::NormalMeanPoints: {
      const double mean = rng.bernoulli() ? c.p2 : c.p1;
      return mean + c.p3 * rng.normal();
    }
    case DistKind::NormalMeanInterval: {
      const double mean = rng.uniform(c.p1, c.p2);
      return mean + c.p3 * rng.normal();
    }
  }
  throw InputError("uncertainty: unknown component kind");
}

}  // namespace

std::vector<double> UncertaintyModel::sample(
    Rng& rng, const std::vector<double>& x_original, const Box& box) const {
  std::vector<double> noise(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    double value = draw_component(c, rng, x_original);
    const bool design_noise =
        c.design_index >= 0 &&
        (c.kind == DistKind::Normal || c.kind == DistKind::Uniform);
    if (truncate_design_noise && design_noise) {
      const auto j = static_cast<std::size_t>(c.design_index);
      if (j >= box.size())
        throw InputError("uncertainty: design index out of range");
      const double lo = box.lower[j] - x_original[j];
      const double hi = box.upper[j] - x_original[j];
      int retries = 0;
      while ((value < lo || value > hi) && retries < 100) {
        value = draw_component(c, rng, x_original);
        ++retries;
      }
      if (value < lo) value = lo;
      if (value > hi) value = hi;
    }
    noise[i] = value;
  }
  return noise;
}

std::vector<double> UncertaintyModel::mean_realization(
    const std::vector<double>& x_original) const {
  std::vector<double> mean(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    switch (c.kind) {
      case DistKind::Fixed:
      case DistKind::Normal:
        mean[i] = c.p1;
        break;
      case DistKind::Uniform:
      case DistKind::BernoulliPair:
      case DistKind::NormalMeanPoints:
      case DistKind::NormalMeanInterval:
        mean[i] = 0.5 * (c.p1 + c.p2);
        break;
      case DistKind::TruncatedNormal: {
        TruncBounds bounds({(c.p3 - c.p1) / c.p2}, {(c.p4 - c.p1) / c.p2});
        mean[i] = c.p1 + c.p2 * trunc_normal_mean(bounds)[0];
        break;
      }
    }
  }
  (void)x_original;
  return mean;
}

std::vector<std::size_t> UncertaintyModel::epistemic_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].epistemic()) idx.push_back(i);
  return idx;
}

void UncertaintyModel::set_epistemic_means(const std::vector<double>& means) {
  const auto idx = epistemic_indices();
  if (means.size() != idx.size())
    throw InputError("set_epistemic_means: expected one mean per epistemic "
                     "component");
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto& c = components[idx[k]];
    c = UncertainComponent::normal(means[k], c.p3);
  }
}

std::vector<double> Problem::x0_unit() const {
  return unit_coordinates(x0, box);
}

std::vector<double> Problem::draw_noise(
    Rng& rng, const std::vector<double>& x_original) const {
  return uncertainty.sample(rng, x_original, box);
}

Problem Problem::with_epistemic_means(const std::vector<double>& means) const {
  Problem copy = *this;
  copy.uncertainty.set_epistemic_means(means);
  return copy;
}

void EvaluationBudget::charge() {
  if (used >= max_calls)
    throw BudgetError("evaluation budget exhausted (" +
                      std::to_string(max_calls) + " calls)");
  ++used;
}

std::vector<double> scale_to_box(const std::vector<double>& x_unit,
                                 const Box& box) {
  if (x_unit.size() != box.size())
    throw InputError("scale_to_box: dimension mismatch");
  std::vector<double> x(x_unit.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * x_unit[i];
  return x;
}

std::vector<double> unit_coordinates(const std::vector<double>& x_original,
                                     const Box& box) {
  if (x_original.size() != box.size())
    throw InputError("unit_coordinates: dimension mismatch");
  std::vector<double> x(x_original.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = (x_original[i] - box.lower[i]) / (box.upper[i] - box.lower[i]);
  return x;
}

double output_transform(double c) {
  if (std::isnan(c)) throw InputError("output_transform: NaN input");
  return std::atan(std::cbrt(c));
}

std::vector<double> evaluate_raw(const Problem& problem,
                                 const std::vector<double>& x_original,
                                 const std::vector<double>& noise) {
  if (noise.size() != problem.uncertainty.dim())
    throw InputError("evaluate_raw: noise dimension mismatch");
  std::vector<double> out = problem.evaluator(x_original, noise);
  if (out.size() != static_cast<std::size_t>(problem.output_count()))
    throw EvaluationError("evaluate_raw: evaluator returned wrong output "
                          "count",
                          -1);
  for (std::size_t j = 0; j < out.size(); ++j)
    if (!std::isfinite(out[j]))
      throw EvaluationError("evaluate_raw: non-finite output " +
                                std::to_string(j) + " from problem " +
                                problem.name,
                            static_cast<int>(j));
  return out;
}

std::vector<double> evaluate_transformed(const Problem& problem,
                                         const std::vector<double>& x_unit,
                                         const std::vector<double>& noise,
                                         EvaluationBudget& budget) {
  budget.charge();
  std::vector<double> out =
      evaluate_raw(problem, scale_to_box(x_unit, problem.box), noise);
  for (double& v : out) v = output_transform(v);
  return out;
}

}  // namespace ramsa
