#ifndef RAMSA_BOX_HPP
#define RAMSA_BOX_HPP

#include <cstddef>
#include <vector>

#include "ramsa/errors.hpp"

namespace ramsa {

// Hyperrectangle [lower, upper], componentwise lower < upper.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  Box() = default;
  Box(std::vector<double> lo, std::vector<double> up)
      : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.size() != upper.size())
      throw InputError("Box: bound vectors differ in length");
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (!(lower[i] < upper[i]))
        throw InputError("Box: lower bound must be below upper bound");
  }

  static Box cube(std::size_t dim, double lo, double hi) {
    return Box(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
  }

  std::size_t size() const { return lower.size(); }
  bool empty() const { return lower.empty(); }

  double clamp(double v, std::size_t i) const {
    if (v < lower[i]) return lower[i];
    if (v > upper[i]) return upper[i];
    return v;
  }

  bool contains(const std::vector<double>& x, double tol = 0.0) const {
    if (x.size() != size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
    return true;
  }
};

}  // namespace ramsa

#endif
