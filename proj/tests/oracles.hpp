#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the geometry code; derivatives are plain finite differences and the
// Riemannian quantities come from textbook closed forms.

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Fn = std::function<double(const std::vector<double>&)>;

/// Central difference of order 4, Richardson-extrapolated once.
inline double richardson(const std::function<double(double)>& f, double x, double h) {
  auto d = [&](double s) { return (f(x - 2 * s) - 8 * f(x - s) + 8 * f(x + s) - f(x + 2 * s)) / (12 * s); };
  const double coarse = d(h);
  const double fine = d(h / 2);
  return (16 * fine - coarse) / 15;
}

inline double partial(const Fn& f, std::vector<double> at, int var, double h = 1e-3) {
  const double base = at[static_cast<std::size_t>(var)];
  return richardson(
      [&](double v) {
        at[static_cast<std::size_t>(var)] = v;
        return f(at);
      },
      base, h);
}

/// Christoffel symbols of the unit 2-sphere metric diag(1, sin^2 x1), zero-based gamma[i][j][k].
inline std::vector<std::vector<std::vector<double>>> sphere_christoffel(double theta) {
  std::vector<std::vector<std::vector<double>>> g(2, std::vector<std::vector<double>>(2, std::vector<double>(2, 0.0)));
  g[0][1][1] = -std::sin(theta) * std::cos(theta);
  g[1][0][1] = g[1][1][0] = std::cos(theta) / std::sin(theta);
  return g;
}

/// Christoffel symbols of an arbitrary metric given as a function of x, via finite differences.
inline std::vector<std::vector<std::vector<double>>> christoffel_fd(
    const std::function<std::vector<std::vector<double>>(const std::vector<double>&)>& metric,
    const std::vector<double>& x) {
  const std::size_t n = x.size();
  auto g = metric(x);
  // 2x2 and 3x3 inverse by cofactors keeps this independent of Eigen.
  std::vector<std::vector<double>> gi(n, std::vector<double>(n, 0.0));
  if (n == 1) {
    gi[0][0] = 1 / g[0][0];
  } else if (n == 2) {
    const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    gi = {{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}};
  } else {
    const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                       g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                       g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        gi[i][j] = (g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0]) / det;
      }
  }
  std::vector<std::vector<std::vector<double>>> dg(n, std::vector<std::vector<double>>(n, std::vector<double>(n)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k)
        dg[a][b][k] = partial([&](const std::vector<double>& v) { return metric(v)[a][b]; }, x, static_cast<int>(k));
  std::vector<std::vector<std::vector<double>>> gam(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
          gam[i][j][k] += 0.5 * gi[i][m] * (dg[j][m][k] + dg[k][m][j] - dg[j][k][m]);
  return gam;
}

using Metric = std::function<std::vector<std::vector<double>>(const std::vector<double>&)>;
using Tensor4 = std::vector<std::vector<std::vector<std::vector<double>>>>;

/// Riemann tensor R[l][i][j][k] = d_k G^l_ij - d_j G^l_ik + G^m_ij G^l_mk - G^m_ik G^l_mj,
/// with the Christoffel symbols and their derivatives both from finite differences.
inline Tensor4 riemann_fd(const Metric& metric, const std::vector<double>& x) {
  const std::size_t n = x.size();
  const auto gam = christoffel_fd(metric, x);
  std::vector<decltype(christoffel_fd(metric, x))> dgam(n);
  const double h = 1e-3;
  for (std::size_t k = 0; k < n; ++k) {
    auto at = [&](double s) {
      auto y = x;
      y[k] += s;
      return christoffel_fd(metric, y);
    };
    const auto m2 = at(-2 * h), m1 = at(-h), p1 = at(h), p2 = at(2 * h);
    dgam[k] = gam;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          dgam[k][a][b][c] = (m2[a][b][c] - 8 * m1[a][b][c] + 8 * p1[a][b][c] - p2[a][b][c]) / (12 * h);
  }
  Tensor4 R(n, std::vector<std::vector<std::vector<double>>>(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double v = dgam[k][l][i][j] - dgam[j][l][i][k];
          for (std::size_t m = 0; m < n; ++m) v += gam[m][i][j] * gam[l][m][k] - gam[m][i][k] * gam[l][m][j];
          R[l][i][j][k] = v;
        }
  return R;
}

/// Solves A a = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> A, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> a(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= A[r][k] * a[k];
    a[r] = s / A[r][r];
  }
  return a;
}

/// Acceleration of an extremal of the integral of L sqrt|h| dt, from the
/// Euler-Lagrange equations with every partial of L taken by finite differences.
/// Coordinates are packed as (t, x1..xn, y1..yn).
inline std::vector<double> el_acceleration(const Fn& L, const std::function<double(double)>& h,
                                           const std::vector<double>& c) {
  const std::size_t n = (c.size() - 1) / 2;
  const double hs = 1e-3;
  auto d1 = [&](int var) { return partial(L, c, var, hs); };
  auto d2 = [&](int a, int b) {
    return partial([&](const std::vector<double>& v) { return partial(L, v, b, hs); }, c, a, hs);
  };
  const double H = 0.5 * richardson(h, c[0], hs) / h(c[0]);
  std::vector<std::vector<double>> A(n, std::vector<double>(n));
  std::vector<double> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int yk = static_cast<int>(1 + n + k);
    double r = d1(static_cast<int>(1 + k));
    r -= d2(0, yk) + d1(yk) * H;
    for (std::size_t j = 0; j < n; ++j) {
      A[k][j] = d2(yk, static_cast<int>(1 + n + j));
      r -= d2(static_cast<int>(1 + j), yk) * c[1 + n + j];
    }
    rhs[k] = r;
  }
  return solve(A, rhs);
}

/// Great circle through (theta0, phi0) with initial velocity (vtheta, vphi),
/// evaluated at time s. Works by rotating in the embedding R^3.
inline std::vector<double> great_circle(double theta0, double phi0, double vtheta, double vphi, double s) {
  const double st = std::sin(theta0), ct = std::cos(theta0), sp = std::sin(phi0), cp = std::cos(phi0);
  const double p[3] = {st * cp, st * sp, ct};
  const double et[3] = {ct * cp, ct * sp, -st};
  const double ep[3] = {-sp, cp, 0.0};
  double v[3];
  for (int i = 0; i < 3; ++i) v[i] = vtheta * et[i] + vphi * st * ep[i];
  const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  double q[3];
  for (int i = 0; i < 3; ++i) q[i] = p[i] * std::cos(speed * s) + v[i] / speed * std::sin(speed * s);
  return {std::acos(q[2]), std::atan2(q[1], q[0])};
}

/// Random DSL expression of bounded depth, kept in the domain of every function
/// on the sampling box [-1, 1]^k.
class ExprGen {
 public:
  ExprGen(int n, std::uint64_t seed) : n_(n), rng_(seed) {}

  std::string gen(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 11);
    switch (pick(rng_)) {
      case 0: return var();
      case 1: return num();
      case 2: return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
      case 3: return "(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
      case 4: return "(" + gen(depth - 1) + " * " + gen(depth - 1) + ")";
      case 5: return "(" + gen(depth - 1) + " / (2.5 + sin(" + gen(depth - 1) + ")))";
      case 6: return "sin(" + gen(depth - 1) + ")";
      case 7: return "cos(" + gen(depth - 1) + ")";
      case 8: return "exp(0.3 * sin(" + gen(depth - 1) + "))";
      case 9: return "log(2 + cos(" + gen(depth - 1) + "))";
      case 10: return "sqrt(1.5 + sin(" + gen(depth - 1) + "))";
      default: {
        std::uniform_int_distribution<int> e(2, 3);
        return "(" + gen(depth - 1) + ")^" + std::to_string(e(rng_));
      }
    }
  }

  std::string var() {
    std::uniform_int_distribution<int> v(0, 2 * n_);
    const int k = v(rng_);
    if (k == 0) return "t";
    if (k <= n_) return "x" + std::to_string(k);
    return "y" + std::to_string(k - n_);
  }

  std::string num() {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::abs(d(rng_)) + 0.1);
    return buf;
  }

  std::vector<double> point() {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> p(static_cast<std::size_t>(2 * n_ + 1));
    for (auto& v : p) v = d(rng_);
    return p;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  int n_;
  std::mt19937_64 rng_;
};

}  // namespace oracle
