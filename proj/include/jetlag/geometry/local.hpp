#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "jetlag/dtensor/connection.hpp"
#include "jetlag/dtensor/field.hpp"
#include "jetlag/error.hpp"
#include "jetlag/geometry/lagrange_space.hpp"

namespace jetlag {

inline constexpr double kRegularityCutoff = 1e-10;

struct MetricValue {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  double h11 = 1.0;
  double h_inv = 1.0;
  int signature = 0;  // number of negative eigenvalues of g
};

/// Regularity checks on a candidate vertical metric; returns its inverse.
inline MetricValue make_metric(const Eigen::MatrixXd& g, double h11) {
  if (h11 == 0.0 || !std::isfinite(h11)) throw NonRegularError("temporal metric h11 vanishes");
  const int n = static_cast<int>(g.rows());
  const double scale = g.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale)) throw NonRegularError("vertical metric vanishes");
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > kRegularityCutoff * scale)
    throw NonRegularError("vertical metric is not symmetric (asymmetry " + std::to_string(asym) + ")");
  Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  int negative = 0;
  double det = 1.0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev(i)) < kRegularityCutoff * scale)
      throw NonRegularError("vertical metric is degenerate (eigenvalue " + std::to_string(ev(i)) + ")");
    if (ev(i) < 0) ++negative;
    det *= ev(i);
  }
  if (std::abs(det) < kRegularityCutoff * std::pow(scale, n))
    throw NonRegularError("vertical metric is degenerate (det " + std::to_string(det) + ")");
  MetricValue m;
  m.g = sym;
  m.g_inv = sym.inverse();
  m.h11 = h11;
  m.h_inv = 1.0 / h11;
  m.signature = negative;
  return m;
}

/// g_ij = h11 * (1/2) d2L/dy^i dy^j.
inline MetricValue fundamental_metric(const LagrangeSpace& sp, const JetPoint& p) {
  const auto j = sp.evaluate_jet(p);
  return make_metric(j.h * 0.5 * j.Lyy, j.h);
}

/// H^1_11 = (1/2) h^11 dh11/dt.
inline double temporal_christoffel(const ScalarField& h11, double t) {
  const int n = h11.dimension();
  std::vector<double> c(static_cast<std::size_t>(2 * n + 1), 0.0);
  c[0] = t;
  const double h = h11.evaluate(c);
  if (h == 0.0) throw NonRegularError("temporal metric h11 vanishes at t = " + std::to_string(t));
  const double dh = expr::evaluate(*h11.derivative_ast(MultiIndex::of(n, {0})), c, n);
  return 0.5 * dh / h;
}

/// Hook for replacing the canonical nonlinear connection and for perturbing the
/// Cartan blocks after they are computed.
struct GeometryOptions {
  std::function<NonlinearConnectionValue(const JetPoint&)> nonlinear;
  std::function<void(CartanCoefficients&)> perturb;
};

/// Every object that needs only symbolic partials of L and h11 at one point.
struct PointGeometry {
  JetPoint point;
  LagrangianJet jet;
  MetricValue metric;
  double H = 0.0;
  Eigen::MatrixXd dtg;                // d g_ij / dt
  std::vector<Eigen::MatrixXd> dxg;   // [k] = d g / dx^k
  std::vector<Eigen::MatrixXd> dyg;   // [k] = d g / dy^k
  Eigen::VectorXd B;                  // bracket of the spatial spray
  SprayValue spray;
  NonlinearConnectionValue nl;
  Eigen::MatrixXd dtg_adapted;            // delta g / delta t
  std::vector<Eigen::MatrixXd> dxg_adapted;  // [k] = delta g / delta x^k
  CartanCoefficients cartan;

  int dim() const { return static_cast<int>(metric.g.rows()); }
};

namespace detail {

inline Eigen::VectorXd y_vector(const JetPoint& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.y.data(), static_cast<Eigen::Index>(p.y.size()));
}

inline Array3 christoffel_from(const Eigen::MatrixXd& g_inv, const std::vector<Eigen::MatrixXd>& d) {
  const int n = static_cast<int>(g_inv.rows());
  Array3 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          s += g_inv(i, m) *
               (d[static_cast<std::size_t>(k)](j, m) + d[static_cast<std::size_t>(j)](k, m) -
                d[static_cast<std::size_t>(m)](j, k));
        out(i, j, k) = 0.5 * s;
      }
  return out;
}

}  // namespace detail

inline PointGeometry local_geometry(const LagrangeSpace& sp, const JetPoint& p, const GeometryOptions& opt = {}) {
  const int n = sp.dim();
  PointGeometry G;
  G.point = p;
  G.jet = sp.evaluate_jet(p);
  const auto& J = G.jet;
  G.metric = make_metric(J.h * 0.5 * J.Lyy, J.h);
  const auto& g = G.metric.g;
  const auto& gi = G.metric.g_inv;
  const double h = J.h, hinv = G.metric.h_inv;
  const double H = 0.5 * J.dh / h;
  G.H = H;
  const Eigen::VectorXd y = detail::y_vector(p);

  G.dtg = J.dh * 0.5 * J.Lyy + h * 0.5 * J.Ltyy;
  for (int k = 0; k < n; ++k) {
    G.dxg.push_back(h * 0.5 * J.Lxyy[static_cast<std::size_t>(k)]);
    G.dyg.push_back(h * 0.5 * J.Lyyy[static_cast<std::size_t>(k)]);
  }

  // B_k = L_{x^j y^k} y^j - L_{x^k} + L_{t y^k} + L_{y^k} H + 2 h^11 H g_kl y^l
  const Eigen::VectorXd gy = g * y;
  G.B = J.Lxy.transpose() * y - J.Lx + J.Lty + J.Ly * H + 2.0 * hinv * H * gy;
  G.spray.Htemp = -0.5 * H * y;
  G.spray.Gspat = 0.25 * h * gi * G.B;

  if (opt.nonlinear) {
    G.nl = opt.nonlinear(p);
    if (G.nl.M.size() != n || G.nl.N.rows() != n || G.nl.N.cols() != n)
      throw SignatureError("custom nonlinear connection has the wrong shape");
  } else {
    G.nl.M = -H * y;
    G.nl.N.resize(n, n);
    // N^i_j = dG^i/dy^j = (h/4) [d(g^-1)/dy^j B + g^-1 dB/dy^j]
    for (int j = 0; j < n; ++j) {
      const auto& dgj = G.dyg[static_cast<std::size_t>(j)];
      Eigen::VectorXd dB(n);
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += J.Lxyy[static_cast<std::size_t>(m)](k, j) * y(m);
        s += J.Lxy(j, k) - J.Lxy(k, j) + J.Ltyy(k, j) + J.Lyy(k, j) * H;
        s += 2.0 * hinv * H * (dgj.row(k).dot(y) + g(k, j));
        dB(k) = s;
      }
      G.nl.N.col(j) = 0.25 * h * (-gi * dgj * gi * G.B + gi * dB);
    }
  }

  G.dtg_adapted = G.dtg;
  for (int l = 0; l < n; ++l) G.dtg_adapted -= G.nl.M(l) * G.dyg[static_cast<std::size_t>(l)];
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd d = G.dxg[static_cast<std::size_t>(k)];
    for (int l = 0; l < n; ++l) d -= G.nl.N(l, k) * G.dyg[static_cast<std::size_t>(l)];
    G.dxg_adapted.push_back(std::move(d));
  }

  G.cartan.H = H;
  G.cartan.Gt = 0.5 * gi * G.dtg_adapted;
  G.cartan.L = detail::christoffel_from(gi, G.dxg_adapted);
  G.cartan.C = detail::christoffel_from(gi, G.dyg);
  if (opt.perturb) opt.perturb(G.cartan);
  return G;
}

inline SprayValue canonical_spray(const LagrangeSpace& sp, const JetPoint& p) { return local_geometry(sp, p).spray; }

inline NonlinearConnectionValue canonical_nonlinear_connection(const LagrangeSpace& sp, const JetPoint& p) {
  return local_geometry(sp, p).nl;
}

inline CartanCoefficients cartan_connection(const LagrangeSpace& sp, const JetPoint& p,
                                            const GeometryOptions& opt = {}) {
  return local_geometry(sp, p, opt).cartan;
}

/// Berwald connection of the pair (h11, g): (H^1_11, 0, gamma^i_jk, 0), where
/// gamma are the Christoffel symbols of g in x.
inline CartanCoefficients berwald_connection(const ScalarField& h11, const std::vector<std::vector<ScalarField>>& g,
                                             const JetPoint& p) {
  const int n = h11.dimension();
  if (static_cast<int>(g.size()) != n) throw InvalidArgument("metric must be n x n");
  const auto c = p.coords();
  Eigen::MatrixXd gm(n, n);
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(g[static_cast<std::size_t>(i)].size()) != n) throw InvalidArgument("metric must be n x n");
    for (int j = 0; j < n; ++j) {
      const auto& f = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      gm(i, j) = f.evaluate(c);
      for (int k = 0; k < n; ++k)
        dg[static_cast<std::size_t>(k)](i, j) = expr::evaluate(*f.partial(x_var(k)).ast(), c, n);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gm);
  if (!lu.isInvertible()) throw NonRegularError("spatial metric is singular");
  CartanCoefficients r = CartanCoefficients::zero(n);
  r.H = temporal_christoffel(h11, p.t);
  r.L = detail::christoffel_from(lu.inverse(), dg);
  return r;
}

/// g_ij as a SpaceDown x SpaceDown field with analytic partials.
inline DTensorField metric_field(const LagrangeSpace& sp) {
  const int n = sp.dim();
  const std::vector<SlotKind> sig{SlotKind::SpaceDown, SlotKind::SpaceDown};
  auto eval = [sp, sig, n](const JetPoint& q) {
    const auto j = sp.evaluate_jet(q);
    return as_dtensor(Eigen::MatrixXd(j.h * 0.5 * j.Lyy), sig[0], sig[1]);
  };
  auto partial = [sp, sig, n](const JetPoint& q, int var) {
    const auto j = sp.evaluate_jet(q);
    Eigen::MatrixXd d;
    if (var == 0)
      d = j.dh * 0.5 * j.Lyy + j.h * 0.5 * j.Ltyy;
    else if (var <= n)
      d = j.h * 0.5 * j.Lxyy[static_cast<std::size_t>(var - 1)];
    else
      d = j.h * 0.5 * j.Lyyy[static_cast<std::size_t>(var - 1 - n)];
    return as_dtensor(d, sig[0], sig[1]);
  };
  return DTensorField(sig, n, eval, partial);
}

/// h11 as a TimeDown x TimeDown field with analytic partials.
inline DTensorField temporal_metric_field(const LagrangeSpace& sp) {
  const int n = sp.dim();
  const std::vector<SlotKind> sig{SlotKind::TimeDown, SlotKind::TimeDown};
  auto eval = [sp, sig, n](const JetPoint& q) {
    DTensorValue v(sig, n);
    v(0, 0) = sp.h11().evaluate(q);
    return v;
  };
  auto partial = [sp, sig, n](const JetPoint& q, int var) {
    DTensorValue v(sig, n);
    if (var == 0) v(0, 0) = sp.evaluate_jet(q).dh;
    return v;
  };
  return DTensorField(sig, n, eval, partial);
}

/// The Liouville field y^i as a VertUp field with analytic partials.
inline DTensorField liouville_field(int n) {
  const std::vector<SlotKind> sig{SlotKind::VertUp};
  auto eval = [sig, n](const JetPoint& q) {
    DTensorValue v(sig, n);
    for (int i = 0; i < n; ++i) v(i) = q.y[static_cast<std::size_t>(i)];
    return v;
  };
  auto partial = [sig, n](const JetPoint&, int var) {
    DTensorValue v(sig, n);
    if (var > n) v(var - 1 - n) = 1.0;
    return v;
  };
  return DTensorField(sig, n, eval, partial);
}

}  // namespace jetlag
