#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jetlag/geometry/local.hpp"

namespace jetlag {

/// d2x/dt2 = -2 G^(i)_(1)1 - 2 H^(i)_(1)1 on a harmonic curve.
inline Eigen::VectorXd harmonic_rhs(const LagrangeSpace& sp, const JetPoint& p) {
  const auto s = canonical_spray(sp, p);
  return -2.0 * s.Gspat - 2.0 * s.Htemp;
}

/// Samples (t, x, y) with y = dx/dt.
struct Curve {
  std::vector<JetPoint> samples;
  double step = 0.0;
  std::string method;

  std::size_t size() const { return samples.size(); }
  const JetPoint& back() const { return samples.back(); }

  void write_csv(std::ostream& os) const {
    if (samples.empty()) return;
    const int n = samples.front().dim();
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    for (int i = 1; i <= n; ++i) os << ",y" << i;
    os << "\n";
    std::ostringstream row;
    row << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& s : samples) {
      row.str("");
      row << s.t;
      for (double v : s.x) row << "," << v;
      for (double v : s.y) row << "," << v;
      os << row.str() << "\n";
    }
  }
};

/// Builds a curve from a closed form x(t) with its derivative, on N uniform intervals.
inline Curve sample_curve(const std::function<std::pair<std::vector<double>, std::vector<double>>(double)>& xy,
                          double t0, double t1, int intervals) {
  if (intervals < 1) throw InvalidArgument("need at least one interval");
  Curve c;
  c.step = (t1 - t0) / intervals;
  c.method = "sampled";
  for (int k = 0; k <= intervals; ++k) {
    const double t = k == intervals ? t1 : t0 + k * c.step;
    auto [x, y] = xy(t);
    c.samples.push_back(JetPoint{t, std::move(x), std::move(y)});
  }
  return c;
}

/// Classical RK4 on (x, y) with ceil((t1 - t0) / step) uniform steps.
inline Curve integrate_harmonic(const LagrangeSpace& sp, const std::vector<double>& x0, const std::vector<double>& y0,
                                double t0, double t1, double step) {
  const int n = sp.dim();
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("step must be positive");
  if (!(t1 > t0)) throw InvalidArgument("t1 must exceed t0");
  if (static_cast<int>(x0.size()) != n || static_cast<int>(y0.size()) != n)
    throw InvalidArgument("initial data must have " + std::to_string(n) + " components");
  const auto steps = static_cast<long>(std::ceil((t1 - t0) / step - 1e-12));
  const double h = (t1 - t0) / static_cast<double>(steps);
  Curve c;
  c.step = h;
  c.method = "rk4";
  c.samples.reserve(static_cast<std::size_t>(steps) + 1);

  using V = Eigen::VectorXd;
  auto point = [n](double t, const V& x, const V& y) {
    return JetPoint{t, std::vector<double>(x.data(), x.data() + n), std::vector<double>(y.data(), y.data() + n)};
  };
  auto accel = [&](double t, const V& x, const V& y) {
    try {
      return harmonic_rhs(sp, point(t, x, y));
    } catch (const NonRegularError& e) {
      throw NonRegularError(std::string(e.what()) + " (at t = " + std::to_string(t) + ")");
    }
  };
  V x = Eigen::Map<const V>(x0.data(), n);
  V y = Eigen::Map<const V>(y0.data(), n);
  c.samples.push_back(point(t0, x, y));
  for (long k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const V k1x = y, k1y = accel(t, x, y);
    const V k2x = y + 0.5 * h * k1y, k2y = accel(t + 0.5 * h, x + 0.5 * h * k1x, k2x);
    const V k3x = y + 0.5 * h * k2y, k3y = accel(t + 0.5 * h, x + 0.5 * h * k2x, k3x);
    const V k4x = y + h * k3y, k4y = accel(t + h, x + h * k3x, k4x);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    const double tn = k + 1 == steps ? t1 : t0 + static_cast<double>(k + 1) * h;
    if (!x.allFinite() || !y.allFinite())
      throw DomainError("non-finite state at t = " + std::to_string(tn), "harmonic curve");
    c.samples.push_back(point(tn, x, y));
  }
  return c;
}

struct ActionResult {
  double value = 0.0;
  std::string method;
  std::optional<std::string> warning;
};

/// Energy action: integral of L(t, x, y) sqrt|h11| dt by composite Simpson,
/// falling back to the trapezoid rule on odd interval counts or uneven steps.
inline ActionResult action(const LagrangeSpace& sp, const Curve& curve) {
  const auto& s = curve.samples;
  if (s.size() < 2) throw InvalidArgument("action needs at least two samples");
  std::vector<double> f;
  f.reserve(s.size());
  for (const auto& p : s) f.push_back(sp.L().evaluate(p) * std::sqrt(std::abs(sp.h11().evaluate(p))));
  const std::size_t intervals = s.size() - 1;
  const double h = (s.back().t - s.front().t) / static_cast<double>(intervals);
  bool uniform = true;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (std::abs((s[k].t - s[k - 1].t) - h) > 1e-9 * std::abs(h)) uniform = false;
  ActionResult r;
  if (uniform && intervals % 2 == 0) {
    double acc = f.front() + f.back();
    for (std::size_t k = 1; k < intervals; ++k) acc += (k % 2 ? 4.0 : 2.0) * f[k];
    r.value = acc * h / 3.0;
    r.method = "simpson";
    return r;
  }
  for (std::size_t k = 1; k < s.size(); ++k) r.value += 0.5 * (s[k].t - s[k - 1].t) * (f[k] + f[k - 1]);
  r.method = "trapezoid";
  r.warning = uniform ? "odd number of intervals; used the trapezoid rule" : "uneven steps; used the trapezoid rule";
  return r;
}

/// Left-hand side of the Euler-Lagrange equations of L sqrt|h11| for a given
/// acceleration: d2L/dy^k dy^j a^j + d2L/dy^k dx^j y^j - dL/dx^k + d2L/dt dy^k
/// + dL/dy^k H^1_11.
inline Eigen::VectorXd euler_lagrange_lhs(const LagrangeSpace& sp, const JetPoint& p, const Eigen::VectorXd& accel) {
  const auto j = sp.evaluate_jet(p);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(p.y.data(), static_cast<Eigen::Index>(p.y.size()));
  const double H = 0.5 * j.dh / j.h;
  return j.Lyy * accel + j.Lxy.transpose() * y - j.Lx + j.Lty + j.Ly * H;
}

/// Euler-Lagrange residual at the interior samples 1..N-2, with velocity and
/// acceleration taken from central differences of x alone.
inline std::vector<Eigen::VectorXd> el_residual(const LagrangeSpace& sp, const Curve& curve) {
  const auto& s = curve.samples;
  if (s.size() < 5) throw InvalidArgument("el_residual needs at least five samples");
  const int n = sp.dim();
  std::vector<Eigen::VectorXd> out;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double hl = s[k].t - s[k - 1].t, hr = s[k + 1].t - s[k].t;
    JetPoint p{s[k].t, s[k].x, std::vector<double>(static_cast<std::size_t>(n))};
    Eigen::VectorXd a(n);
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double xl = s[k - 1].x[ui], xc = s[k].x[ui], xr = s[k + 1].x[ui];
      p.y[ui] = (xr * hl * hl - xl * hr * hr + xc * (hr * hr - hl * hl)) / (hl * hr * (hl + hr));
      a(i) = 2.0 * (xr * hl + xl * hr - xc * (hl + hr)) / (hl * hr * (hl + hr));
    }
    out.push_back(euler_lagrange_lhs(sp, p, a));
  }
  return out;
}

inline double max_abs(const std::vector<Eigen::VectorXd>& v) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, e.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace jetlag
