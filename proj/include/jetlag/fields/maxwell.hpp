#pragma once

#include <algorithm>
#include <vector>

#include "jetlag/fields/deflection.hpp"
#include "jetlag/geometry/curvature.hpp"

namespace jetlag {

/// Everything at one point that needs a single numeric derivative: the
/// connection jet, torsion and curvature, deflections and the covariant
/// derivatives of the deflection family.
struct PointAnalysis {
  ConnectionJet conn;
  TorsionTable torsion;
  CurvatureTable curvature;
  DeflectionSet defl;
  EmForm em;
  CovariantJet Dbar, D, d;        // VertUp x {TimeDown, SpaceDown, VertDown}
  CovariantJet Dbar_m, D_m, d_m;  // VertDown x {...}
  CovariantJet F;                 // VertDown x SpaceDown
  CovariantJet T1;                // SpaceUp x TimeDown x SpaceDown
  CovariantJet C;                 // SpaceUp x SpaceDown x VertDown

  int dim() const { return conn.dim(); }
  const PointGeometry& geo() const { return conn.geo; }
};

namespace detail {

inline std::vector<DTensorValue> deflection_values(const PointGeometry& g) {
  using K = SlotKind;
  const int n = g.dim();
  const auto s = deflections(g);
  const auto em = em_form(s);
  auto col = [n](const Eigen::VectorXd& v, K a, K b) {
    DTensorValue r({a, b}, n);
    for (int i = 0; i < n; ++i) r(i, 0) = v(i);
    return r;
  };
  DTensorValue t1({K::SpaceUp, K::TimeDown, K::SpaceDown}, n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j) t1(m, 0, j) = -g.cartan.Gt(m, j);
  return {col(s.Dbar, K::VertUp, K::TimeDown),     as_dtensor(s.D, K::VertUp, K::SpaceDown),
          as_dtensor(s.d, K::VertUp, K::VertDown),   col(s.Dbar_m, K::VertDown, K::TimeDown),
          as_dtensor(s.D_m, K::VertDown, K::SpaceDown), as_dtensor(s.d_m, K::VertDown, K::VertDown),
          as_dtensor(em.F, K::VertDown, K::SpaceDown), t1};
}

}  // namespace detail

inline PointAnalysis analyze(const LagrangeSpace& sp, const JetPoint& p, const GeometryOptions& opt = {},
                             double step = kDefaultStep) {
  PointAnalysis a;
  a.conn.geo = local_geometry(sp, p, opt);
  auto bundle = [&](const JetPoint& q) {
    const auto g = local_geometry(sp, q, opt);
    auto v = connection_values(g);
    auto w = detail::deflection_values(g);
    v.insert(v.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
    return v;
  };
  auto jets = adapted_jets(bundle, p, a.conn.geo.nl, step);
  a.conn.M = jets[0];
  a.conn.N = jets[1];
  a.conn.Gt = jets[2];
  a.conn.L = jets[3];
  a.conn.C = jets[4];
  a.torsion = torsion(a.conn);
  a.curvature = curvature(a.conn, a.torsion);
  a.defl = deflections(a.conn.geo);
  a.em = em_form(a.defl);
  const auto& c = a.conn.geo.cartan;
  CovariantJet* targets[] = {&a.Dbar, &a.D, &a.d, &a.Dbar_m, &a.D_m, &a.d_m, &a.F, &a.T1};
  for (std::size_t k = 0; k < 8; ++k) *targets[k] = covariant_derivatives(jets[5 + k], c);
  a.C = covariant_derivatives(a.conn.C, c);
  return a;
}

/// Cyclic sum X(i,j,k) + X(j,k,i) + X(k,i,j) over the last three indices.
inline Array3 cyclic_sum(const Array3& X) {
  const int n = X.n();
  Array3 r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r(i, j, k) = X(i, j, k) + X(j, k, i) + X(k, i, j);
  return r;
}

inline Array4 cyclic_sum(const Array4& X) {
  const int n = X.n();
  Array4 r(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) r(l, i, j, k) = X(l, i, j, k) + X(l, j, k, i) + X(l, k, i, j);
  return r;
}

/// Alternate sum X(i,k) - X(k,i).
inline Eigen::MatrixXd alternate_sum(const Eigen::MatrixXd& X) { return X - X.transpose(); }

/// LHS - RHS of the three Maxwell equations: first(i,k), second(i,j,k), third(i,j,k).
/// `second` uses C^(1)(1)(1) = (h^11/2) d3L/dy^3 with coefficient -1/2;
/// `second_via_cartan` uses h^11 g_lq C^q_i(m) with coefficient -1. The two
/// coincide when h11 = 1.
struct MaxwellResiduals {
  Eigen::MatrixXd first;
  Array3 second;
  Array3 third;
  Array3 second_via_cartan;

  double max_abs() const { return std::max({first.cwiseAbs().maxCoeff(), second.max_abs(), third.max_abs()}); }
};

inline MaxwellResiduals maxwell_residuals(const PointAnalysis& a) {
  const int n = a.dim();
  const auto& g = a.geo();
  const auto& c = g.cartan;
  const auto& tor = a.torsion;
  const auto& s = a.defl;
  const Eigen::VectorXd y = detail::y_vector(g.point);
  const Eigen::VectorXd y_low = g.metric.h_inv * g.metric.g * y;

  Eigen::MatrixXd X(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double v = a.Dbar_m.bar(i, 0, k);
      for (int m = 0; m < n; ++m) v += s.D_m(i, m) * -c.Gt(m, k) + s.d_m(i, m) * tor.R1(m, k);
      for (int p = 0; p < n; ++p) {
        double br = a.T1.bar(p, 0, i, k);
        for (int m = 0; m < n; ++m) br += c.C(p, k, m) * tor.R1(m, i);
        v -= br * y_low(p);
      }
      X(i, k) = v;
    }
  MaxwellResiduals r{Eigen::MatrixXd(n, n), Array3(n), Array3(n), Array3(n)};
  const Eigen::MatrixXd A = alternate_sum(X);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) r.first(i, k) = a.F.slash1(i, k, 0) - 0.5 * A(i, k);
  const Eigen::MatrixXd g_low = g.metric.h_inv * g.metric.g;

  // C^(1)(1)(1)_(i)(l)(m) = (h^11 / 2) d3L / dy^i dy^l dy^m
  const auto& Lyyy = g.jet.Lyyy;
  Array3 rhs(n), rhs_c(n), Fbar(n), Fvbar(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = 0.0, w = 0.0;
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            v += 0.5 * g.metric.h_inv * Lyyy[static_cast<std::size_t>(i)](l, m) * tor.R(m, j, k) * y(l);
            double gc = 0.0;
            for (int q = 0; q < n; ++q) gc += g_low(l, q) * c.C(q, i, m);
            w += gc * tor.R(m, j, k) * y(l);
          }
        rhs(i, j, k) = v;
        rhs_c(i, j, k) = w;
        Fbar(i, j, k) = a.F.bar(i, j, k);
        Fvbar(i, j, k) = a.F.vbar(i, j, k);
      }
  const auto lhs2 = cyclic_sum(Fbar);
  const auto rhs2 = cyclic_sum(rhs);
  const auto rhs2c = cyclic_sum(rhs_c);
  for (std::size_t f = 0; f < lhs2.data().size(); ++f) {
    r.second.data()[f] = lhs2.data()[f] + 0.5 * rhs2.data()[f];
    r.second_via_cartan.data()[f] = lhs2.data()[f] + rhs2c.data()[f];
  }
  r.third = cyclic_sum(Fvbar);
  return r;
}

inline MaxwellResiduals maxwell_residuals(const LagrangeSpace& sp, const JetPoint& p) {
  return maxwell_residuals(analyze(sp, p));
}

/// Residuals of the reduced equations valid for autonomous electrodynamics:
/// F/1 - (1/2) A h^11 g_im R^(m)_(1)1k, cyclic F|k, cyclic F|(1)(k).
inline MaxwellResiduals maxwell_simple_residuals(const PointAnalysis& a) {
  const int n = a.dim();
  const auto& g = a.geo();
  const Eigen::MatrixXd X = g.metric.h_inv * g.metric.g * a.torsion.R1;
  const Eigen::MatrixXd A = alternate_sum(X);
  MaxwellResiduals r{Eigen::MatrixXd(n, n), Array3(n), Array3(n), Array3(n)};
  Array3 Fbar(n), Fvbar(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      r.first(i, k) = a.F.slash1(i, k, 0) - 0.5 * A(i, k);
      for (int j = 0; j < n; ++j) {
        Fbar(i, j, k) = a.F.bar(i, j, k);
        Fvbar(i, j, k) = a.F.vbar(i, j, k);
      }
    }
  r.second = cyclic_sum(Fbar);
  r.second_via_cartan = r.second;
  r.third = cyclic_sum(Fvbar);
  return r;
}

/// Residuals of the three Bianchi identities, indexed (l,j,k), (l,i,j,k) and (l,j,k,p).
struct BianchiResiduals {
  Array3 b1;
  Array4 b2;
  Array4 b3;

  double max_abs() const { return std::max({b1.max_abs(), b2.max_abs(), b3.max_abs()}); }
};

inline BianchiResiduals bianchi_residuals(const PointAnalysis& a) {
  const int n = a.dim();
  const auto& c = a.geo().cartan;
  const auto& tor = a.torsion;
  const auto& cur = a.curvature;
  Array3 X1(n);
  Array4 X2(n), X3(n);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = cur.R1(l, j, k) + a.T1.bar(l, 0, j, k);
        for (int m = 0; m < n; ++m) v += c.C(l, k, m) * tor.R1(m, j);
        X1(l, j, k) = v;
        for (int q = 0; q < n; ++q) {
          // X2(l, j, k, q) = R^l_jkq - C^l_q(m) R^(m)_(1)jk
          double w = cur.R(l, j, k, q);
          double u = cur.P(l, j, k, q) + a.C.bar(l, j, q, k);
          for (int m = 0; m < n; ++m) {
            w -= c.C(l, q, m) * tor.R(m, j, k);
            u += c.C(l, k, m) * tor.P(m, j, q);
          }
          X2(l, j, k, q) = w;
          X3(l, j, k, q) = u;
        }
      }
  BianchiResiduals r{Array3(n), cyclic_sum(X2), Array4(n)};
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        r.b1(l, j, k) = X1(l, j, k) - X1(l, k, j);
        for (int q = 0; q < n; ++q) r.b3(l, j, k, q) = X3(l, j, k, q) - X3(l, k, j, q);
      }
  return r;
}

/// Residuals of the deflection identities: d1-d3 with the first index up,
/// m1-m3 for the metrical versions with the first index down.
struct DeflectionIdentityResiduals {
  Eigen::MatrixXd d1;
  Array3 d2;
  Array3 d3;
  Eigen::MatrixXd m1;
  Array3 m2;
  Array3 m3;

  double max_abs() const {
    return std::max({d1.cwiseAbs().maxCoeff(), d2.max_abs(), d3.max_abs(), m1.cwiseAbs().maxCoeff(), m2.max_abs(),
                     m3.max_abs()});
  }
};

inline DeflectionIdentityResiduals deflection_identity_residuals(const PointAnalysis& a) {
  const int n = a.dim();
  const auto& g = a.geo();
  const auto& c = g.cartan;
  const auto& tor = a.torsion;
  const auto& cur = a.curvature;
  const auto& s = a.defl;
  const Eigen::VectorXd y = detail::y_vector(g.point);
  const Eigen::VectorXd y_low = g.metric.h_inv * g.metric.g * y;
  DeflectionIdentityResiduals r{Eigen::MatrixXd(n, n), Array3(n), Array3(n), Eigen::MatrixXd(n, n), Array3(n),
                                Array3(n)};
  for (int p = 0; p < n; ++p)
    for (int k = 0; k < n; ++k) {
      double rhs = 0.0, rhs_m = 0.0;
      for (int m = 0; m < n; ++m) {
        rhs += y(m) * cur.R1(p, m, k) + s.D(p, m) * c.Gt(m, k) - s.d(p, m) * tor.R1(m, k);
        rhs_m += -y_low(m) * cur.R1(m, p, k) + s.D_m(p, m) * c.Gt(m, k) - s.d_m(p, m) * tor.R1(m, k);
      }
      r.d1(p, k) = a.Dbar.bar(p, 0, k) - a.D.slash1(p, k, 0) - rhs;
      r.m1(p, k) = a.Dbar_m.bar(p, 0, k) - a.D_m.slash1(p, k, 0) - rhs_m;
      for (int j = 0; j < n; ++j) {
        double r2 = 0.0, r2m = 0.0, r3 = 0.0, r3m = 0.0;
        for (int m = 0; m < n; ++m) {
          r2 += y(m) * cur.R(p, m, j, k) - s.d(p, m) * tor.R(m, j, k);
          r2m += -y_low(m) * cur.R(m, p, j, k) - s.d_m(p, m) * tor.R(m, j, k);
          r3 += y(m) * cur.P(p, m, j, k) - s.D(p, m) * c.C(m, j, k) - s.d(p, m) * tor.P(m, j, k);
          r3m += -y_low(m) * cur.P(m, p, j, k) - s.D_m(p, m) * c.C(m, j, k) - s.d_m(p, m) * tor.P(m, j, k);
        }
        r.d2(p, j, k) = a.D.bar(p, j, k) - a.D.bar(p, k, j) - r2;
        r.m2(p, j, k) = a.D_m.bar(p, j, k) - a.D_m.bar(p, k, j) - r2m;
        r.d3(p, j, k) = a.D.vbar(p, j, k) - a.d.bar(p, k, j) - r3;
        r.m3(p, j, k) = a.D_m.vbar(p, j, k) - a.d_m.bar(p, k, j) - r3m;
      }
    }
  return r;
}

}  // namespace jetlag
