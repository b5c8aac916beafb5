#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "jetlag/error.hpp"
#include "jetlag/expr/scalar_field.hpp"

namespace jetlag {

/// Base step for numeric derivatives of derived fields; the actual step at a
/// coordinate c is base * (1 + |c|).
inline constexpr double kDefaultStep = 1e-3;

inline JetPoint shifted(const JetPoint& p, int var, double delta) {
  JetPoint q = p;
  const int n = p.dim();
  if (var == 0) q.t += delta;
  else if (var <= n) q.x[static_cast<std::size_t>(var - 1)] += delta;
  else q.y[static_cast<std::size_t>(var - 1 - n)] += delta;
  return q;
}

inline double coordinate(const JetPoint& p, int var) {
  const int n = p.dim();
  if (var == 0) return p.t;
  if (var <= n) return p.x[static_cast<std::size_t>(var - 1)];
  return p.y[static_cast<std::size_t>(var - 1 - n)];
}

/// Partial derivative of a vector-valued function of the jet point in one
/// coordinate: five-point central differences at h and h/2 combined by one
/// Richardson step.
template <class F>
std::vector<double> richardson_partial(const F& f, const JetPoint& p, int var, double base = kDefaultStep) {
  if (!(base > 0.0)) throw InvalidArgument("numeric derivative step must be positive");
  const double h = base * (1.0 + std::abs(coordinate(p, var)));
  const std::vector<double> m2 = f(shifted(p, var, -2 * h));
  const std::vector<double> m1 = f(shifted(p, var, -h));
  const std::vector<double> mh = f(shifted(p, var, -h / 2));
  const std::vector<double> ph = f(shifted(p, var, h / 2));
  const std::vector<double> p1 = f(shifted(p, var, h));
  const std::vector<double> p2 = f(shifted(p, var, 2 * h));
  std::vector<double> out(m1.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double coarse = (m2[i] - 8 * m1[i] + 8 * p1[i] - p2[i]) / (12 * h);
    const double fine = (m1[i] - 8 * mh[i] + 8 * ph[i] - p1[i]) / (6 * h);
    out[i] = (16 * fine - coarse) / 15;
  }
  return out;
}

}  // namespace jetlag
