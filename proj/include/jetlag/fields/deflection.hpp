#pragma once

#include <Eigen/Dense>

#include "jetlag/dtensor/covariant.hpp"
#include "jetlag/geometry/local.hpp"

namespace jetlag {

/// Deflection d-tensors of the Liouville field and their metrical versions.
/// Dbar(i) = Dbar^(i)_(1)1, D(i, j) = D^(i)_(1)j, d(i, j) = d^(i)(1)_(1)(j);
/// the *_m members carry the first index lowered with h^11 g.
struct DeflectionSet {
  Eigen::VectorXd Dbar;
  Eigen::MatrixXd D;
  Eigen::MatrixXd d;
  Eigen::VectorXd Dbar_m;
  Eigen::MatrixXd D_m;
  Eigen::MatrixXd d_m;
};

namespace detail {

inline DeflectionSet with_metrical(DeflectionSet s, const MetricValue& m) {
  const Eigen::MatrixXd lower = m.h_inv * m.g;
  s.Dbar_m = lower * s.Dbar;
  s.D_m = lower * s.D;
  s.d_m = lower * s.d;
  return s;
}

}  // namespace detail

/// Closed forms: Dbar = G^i_m1 y^m, D = -N + L^i_jm y^m, d = delta + C^i_m(j) y^m.
inline DeflectionSet deflections(const PointGeometry& g) {
  const int n = g.dim();
  const auto y = detail::y_vector(g.point);
  const auto& c = g.cartan;
  DeflectionSet s;
  s.Dbar = c.Gt * y;
  s.D = -g.nl.N;
  s.d = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        s.D(i, j) += c.L(i, j, m) * y(m);
        s.d(i, j) += c.C(i, m, j) * y(m);
      }
  return detail::with_metrical(std::move(s), g.metric);
}

inline DeflectionSet deflections(const LagrangeSpace& sp, const JetPoint& p) { return deflections(local_geometry(sp, p)); }

/// Deflections as covariant derivatives y^i/1, y^i|j, y^i|(1)(j) of the Liouville field.
inline DeflectionSet deflections_from_liouville(const PointGeometry& g) {
  const int n = g.dim();
  const auto y = liouville_field(n);
  const auto bar1 = covariant_derivative(y, g.point, g.cartan, g.nl, CovariantKind::Time);
  const auto bar = covariant_derivative(y, g.point, g.cartan, g.nl, CovariantKind::Horizontal);
  const auto vbar = covariant_derivative(y, g.point, g.cartan, g.nl, CovariantKind::Vertical);
  DeflectionSet s;
  s.Dbar.resize(n);
  s.D.resize(n, n);
  s.d.resize(n, n);
  for (int i = 0; i < n; ++i) {
    s.Dbar(i) = bar1(i, 0);
    for (int j = 0; j < n; ++j) {
      s.D(i, j) = bar(i, j);
      s.d(i, j) = vbar(i, j);
    }
  }
  return detail::with_metrical(std::move(s), g.metric);
}

/// Electromagnetic d-form: F(i, j) = F^(1)_(i)j, f(i, j) = f^(1)(1)_(i)(j).
struct EmForm {
  Eigen::MatrixXd F;
  Eigen::MatrixXd f;
};

inline EmForm em_form(const DeflectionSet& s) {
  return {0.5 * (s.D_m - s.D_m.transpose()), 0.5 * (s.d_m - s.d_m.transpose())};
}

inline EmForm em_form(const PointGeometry& g) { return em_form(deflections(g)); }

inline EmForm em_form(const LagrangeSpace& sp, const JetPoint& p) { return em_form(local_geometry(sp, p)); }

/// F from the connection coefficients directly:
/// (h^11/2)[g_jm N^m_i - g_im N^m_j + (g_ik L^k_jm - g_jk L^k_im) y^m].
inline Eigen::MatrixXd em_form_from_connection(const PointGeometry& g) {
  const int n = g.dim();
  const auto y = detail::y_vector(g.point);
  const auto& gm = g.metric.g;
  const auto& N = g.nl.N;
  const auto& L = g.cartan.L;
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) {
        s += gm(j, m) * N(m, i) - gm(i, m) * N(m, j);
        for (int k = 0; k < n; ++k) s += (gm(i, k) * L(k, j, m) - gm(j, k) * L(k, i, m)) * y(m);
      }
      F(i, j) = 0.5 * g.metric.h_inv * s;
    }
  return F;
}

}  // namespace jetlag
