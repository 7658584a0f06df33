#include "ramsa/problems.hpp"

#include <cmath>

namespace ramsa {

namespace {

constexpr double kPi = 3.14159265358979323846;

Problem steel_column() {
  Problem p;
  p.name = "SCD";
  p.design_dim = 3;
  p.constraint_count = 1;
  p.box = Box({200.0, 10.0, 100.0}, {400.0, 30.0, 500.0});
  p.x0 = {200.0, 10.5, 100.0};
  auto& u = p.uncertainty.components;
  u.push_back(UncertainComponent::normal(0.0, 0.1, 0, true));
  u.push_back(UncertainComponent::normal(0.0, 0.1, 1, true));
  u.push_back(UncertainComponent::normal(0.0, 0.1, 2, true));
  u.push_back(UncertainComponent::normal(400.0, 40.0));
  u.push_back(UncertainComponent::normal(5.0e5, 5.0e4));
  u.push_back(UncertainComponent::normal(6.0e5, 6.0e4));
  u.push_back(UncertainComponent::normal(6.0e5, 6.0e4));
  u.push_back(UncertainComponent::normal(30.0, 3.0));
  u.push_back(UncertainComponent::normal(21000.0, 2100.0));
  p.evaluator = [](const std::vector<double>& x,
                   const std::vector<double>& e) -> std::vector<double> {
    const double span = 7500.0;  // column length constant
    const double y1 = x[0] + e[0];
    const double y2 = x[1] + e[1];
    const double y3 = x[2] + e[2];
    const double c0 = y1 * y2 + 5.0 * y3;
    const double area = 2.0 * y1 * y2;
    const double section = y1 * y2 * y3;
    const double inertia = 0.5 * y1 * y2 * y3 * y3;
    const double buckling = kPi * kPi * e[8] * inertia / (span * span);
    const double load = e[4] + e[5] + e[6];
    const double c1 =
        load * (1.0 / area + e[7] * buckling / (section * (buckling - load))) -
        e[3];
    return {c0, c1};
  };
  return p;
}

Problem welded_beam() {
  Problem p;
  p.name = "WBD";
  p.design_dim = 4;
  p.constraint_count = 5;
  p.box = Box({3.175, 0.0, 0.0, 0.0}, {50.8, 254.0, 254.0, 50.8});
  p.x0 = {6.208, 157.82, 210.62, 6.208};
  auto& u = p.uncertainty.components;
  u.push_back(UncertainComponent::uniform(-0.1693, 0.1693, 0));
  u.push_back(UncertainComponent::uniform(-0.1693, 0.1693, 1));
  u.push_back(UncertainComponent::uniform(-0.0107, 0.0107, 2));
  u.push_back(UncertainComponent::uniform(-0.0107, 0.0107, 3));
  p.evaluator = [](const std::vector<double>& x,
                   const std::vector<double>& e) -> std::vector<double> {
    const double k1 = 6.74135e-5, k2 = 2.93585e-6, k3 = 3.556e2;
    const double k4 = 2.6688e4, k5 = 2.0685e5, k6 = 8.274e4;
    const double y1 = x[0] + e[0];
    const double y2 = x[1] + e[1];
    const double y3 = x[2] + e[2];
    const double y4 = x[3] + e[3];
    const double c0 = k1 * y1 * y1 * y2 + k2 * y3 * y4 * (k3 + y2);
    const double tau1 = k4 / (std::sqrt(2.0) * y1 * y2);
    const double r = std::sqrt(y2 * y2 + (y1 + y3) * (y1 + y3)) / 2.0;
    const double moment = k4 * (k3 + y2 / 2.0);
    const double j = std::sqrt(2.0) * y1 * y2 *
                     (y2 * y2 / 12.0 + (y1 + y3) * (y1 + y3) / 4.0);
    const double tau2 = moment * r / j;
    const double tau = std::sqrt(tau1 * tau1 +
                                 2.0 * tau1 * tau2 * y2 / (2.0 * r) +
                                 tau2 * tau2);
    const double c1 = tau / 93.77 - 1.0;
    const double sigma = 6.0 * k4 * k3 / (y3 * y3 * y4);
    const double c2 = sigma / 206.85 - 1.0;
    const double c3 = y1 / y4 - 1.0;
    const double defl = 4.0 * k4 * k3 * k3 * k3 / (k5 * y3 * y3 * y3 * y4);
    const double c4 = defl / 6.35 - 1.0;
    const double pcrit = 4.013 * y3 * y4 * y4 * y4 * std::sqrt(k5 * k6) /
                         (6.0 * k3 * k3) *
                         (1.0 - y3 / (4.0 * k3) * std::sqrt(k5 / k6));
    const double c5 = 1.0 - pcrit / k4;
    return {c0, c1, c2, c3, c4, c5};
  };
  return p;
}

Problem vehicle_side_impact() {
  Problem p;
  p.name = "VSI";
  p.design_dim = 7;
  p.constraint_count = 10;
  p.box = Box({0.5, 0.45, 0.5, 0.5, 0.875, 0.4, 0.4},
              {1.5, 1.35, 1.5, 1.5, 2.625, 1.2, 1.2});
  p.x0 = {1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0};
  auto& u = p.uncertainty.components;
  u.push_back(UncertainComponent::normal(0.0, 0.03, 0));
  u.push_back(UncertainComponent::normal(0.0, 0.03, 1));
  u.push_back(UncertainComponent::normal(0.0, 0.03, 2));
  u.push_back(UncertainComponent::normal(0.0, 0.03, 3));
  u.push_back(UncertainComponent::normal(0.0, 0.05, 4));
  u.push_back(UncertainComponent::normal(0.0, 0.03, 5));
  u.push_back(UncertainComponent::normal(0.0, 0.03, 6));
  u.push_back(UncertainComponent::normal(0.345, 0.006));
  u.push_back(UncertainComponent::normal(0.345, 0.006));
  u.push_back(UncertainComponent::normal(0.0, 10.0));
  u.push_back(UncertainComponent::normal(0.0, 10.0));
  p.evaluator = [](const std::vector<double>& x,
                   const std::vector<double>& e) -> std::vector<double> {
    const double y1 = x[0] + e[0];
    const double y2 = x[1] + e[1];
    const double y3 = x[2] + e[2];
    const double y4 = x[3] + e[3];
    const double y5 = x[4] + e[4];
    const double y6 = x[5] + e[5];
    const double y7 = x[6] + e[6];
    const double e8 = e[7], e9 = e[8], e10 = e[9], e11 = e[10];
    std::vector<double> c(11);
    c[0] = 1.98 + 4.9 * y1 + 6.67 * y2 + 6.98 * y3 + 4.01 * y4 + 1.78 * y5 +
           2.73 * y7;
    c[1] = 1.16 - 0.3717 * y2 * y4 - 0.00931 * y2 * e10 - 0.484 * y3 * e9 +
           0.01343 * y6 * e10 - 1.0;
    c[2] = 0.261 - 0.0159 * y1 * y2 - 0.188 * y1 * e8 - 0.019 * y2 * y7 +
           0.0144 * y3 * y5 + 0.0008757 * y5 * e10 + 0.08045 * y6 * e9 +
           0.00139 * e8 * e11 + 1.575e-6 * e10 * e11 - 0.32;
    c[3] = 0.2147 + 0.00817 * y5 - 0.131 * y1 * e8 - 0.0704 * y1 * e9 +
           0.03099 * y2 * y6 - 0.018 * y2 * y7 + 0.0208 * y3 * e8 +
           0.121 * y3 * e9 - 0.00364 * y5 * y6 + 0.0007715 * y5 * e10 -
           0.0005354 * y6 * e10 + 0.00121 * e8 * e11 + 0.00184 * e9 * e10 -
           0.02 * y2 * y2 - 0.32;
    c[4] = 0.74 - 0.61 * y2 - 0.163 * y3 * e8 + 0.001232 * y3 * e10 -
           0.166 * y7 * e9 + 0.227 * y2 * y2 - 0.32;
    c[5] = 28.98 + 3.818 * y3 - 4.2 * y1 * y2 + 0.0207 * y5 * e10 +
           6.63 * y6 * e9 - 7.77 * y7 * e8 + 0.32 * e9 * e10 - 32.0;
    c[6] = 33.86 + 2.95 * y3 + 0.1792 * e10 - 5.057 * y1 * y2 -
           11.0 * y2 * e8 - 0.0215 * y5 * e10 - 9.98 * y7 * e8 +
           22.0 * e8 * e9 - 32.0;
    c[7] = 46.36 - 9.9 * y2 - 12.9 * y1 * e8 + 0.1107 * y3 * e10 - 32.0;
    c[8] = 4.72 - 0.54 * y4 - 0.19 * y2 * y3 - 0.0122 * y4 * e10 +
           0.009325 * y6 * e10 + 0.000191 * e11 * e11 - 4.0;
    c[9] = 10.58 - 0.674 * y1 * y2 - 1.95 * y2 * e8 + 0.028 * y6 * e10 +
           0.02054 * y3 * e10 - 0.0198 * y4 * e10 - 9.9;
    c[10] = 16.45 - 0.489 * y3 * y7 - 0.843 * y5 * y6 + 0.0432 * e9 * e10 -
            0.0556 * e9 * e11 - 0.000786 * e11 * e11 - 15.69;
    return c;
  };
  return p;
}

Problem speed_reducer() {
  Problem p;
  p.name = "SRD";
  p.design_dim = 7;
  p.constraint_count = 11;
  p.box = Box({2.6, 0.7, 17.0, 7.3, 7.3, 2.9, 5.0},
              {3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5});
  p.x0 = {3.5, 0.7, 17.0, 7.3, 7.72, 3.35, 5.29};
  auto& u = p.uncertainty.components;
  for (int i = 0; i < 7; ++i)
    u.push_back(UncertainComponent::normal(0.0, 0.005, i));
  p.evaluator = [](const std::vector<double>& x,
                   const std::vector<double>& e) -> std::vector<double> {
    const double y1 = x[0] + e[0];
    const double y2 = x[1] + e[1];
    const double y3 = x[2] + e[2];
    const double y4 = x[3] + e[3];
    const double y5 = x[4] + e[4];
    const double y6 = x[5] + e[5];
    const double y7 = x[6] + e[6];
    std::vector<double> c(12);
    c[0] = 0.7854 * y1 * y2 * y2 *
               (3.3333 * y3 * y3 + 14.9334 * y3 - 43.0934) -
           1.508 * y1 * (y6 * y6 + y7 * y7) +
           7.477 * (y6 * y6 * y6 + y7 * y7 * y7) +
           0.7854 * (y4 * y6 * y6 + y5 * y7 * y7);
    c[1] = 27.0 / (y1 * y2 * y2 * y3) - 1.0;
    c[2] = 397.5 / (y1 * y2 * y2 * y3 * y3) - 1.0;
    c[3] = 1.93 * y4 * y4 * y4 / (y2 * y3 * y6 * y6 * y6 * y6) - 1.0;
    c[4] = 1.93 * y5 * y5 * y5 / (y2 * y3 * y7 * y7 * y7 * y7) - 1.0;
    const double shaft = 745.0 * y5 / (y2 * y3);
    c[5] = std::sqrt(shaft * shaft + 16.9e6) / (0.1 * y6 * y6 * y6) - 1100.0;
    c[6] = std::sqrt(shaft * shaft + 157.5e6) / (0.1 * y7 * y7 * y7) - 850.0;
    c[7] = y2 * y3 - 40.0;
    c[8] = 5.0 - y1 / y2;
    c[9] = y1 / y2 - 12.0;
    c[10] = (1.5 * y6 + 1.9) / y4 - 1.0;
    c[11] = (1.1 * y7 + 1.9) / y5 - 1.0;
    return c;
  };
  return p;
}

Problem vsi_epistemic(DistKind kind) {
  Problem p = vehicle_side_impact();
  p.name = kind == DistKind::NormalMeanPoints ? "VSI-epistemic-points"
                                              : "VSI-epistemic-interval";
  auto make = kind == DistKind::NormalMeanPoints
                  ? UncertainComponent::normal_mean_points
                  : UncertainComponent::normal_mean_interval;
  p.uncertainty.components[7] = make(0.192, 0.345, 0.006);
  p.uncertainty.components[8] = make(0.192, 0.345, 0.006);
  return p;
}

}  // namespace

Problem builtin_problem(const std::string& name) {
  if (name == "SCD") return steel_column();
  if (name == "WBD") return welded_beam();
  if (name == "VSI") return vehicle_side_impact();
  if (name == "SRD") return speed_reducer();
  if (name == "VSI-epistemic-points")
    return vsi_epistemic(DistKind::NormalMeanPoints);
  if (name == "VSI-epistemic-interval")
    return vsi_epistemic(DistKind::NormalMeanInterval);
  throw LookupError("unknown problem '" + name + "'");
}

const std::vector<std::string>& builtin_problem_names() {
  static const std::vector<std::string> names = {
      "SCD",  "WBD", "VSI", "SRD", "VSI-epistemic-points",
      "VSI-epistemic-interval"};
  return names;
}

std::vector<double> sora_reference_point(const std::string& name) {
  if (name == "SCD") return {257.7806, 13.5335, 100.0};
  if (name == "WBD") return {5.9188, 181.2849, 210.6114, 6.2253};
  if (name == "VSI" || name == "VSI-epistemic-points" ||
      name == "VSI-epistemic-interval")
    return {0.7872, 1.35, 0.6887, 1.5, 1.0706, 1.2, 0.7284};
  if (name == "SRD") return {3.5765, 0.7, 17.0, 7.3, 7.7541, 3.3652, 5.3017};
  throw LookupError("no reference point for problem '" + name + "'");
}

}  // namespace ramsa
