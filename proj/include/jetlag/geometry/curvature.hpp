#pragma once

#include <vector>

#include "jetlag/dtensor/covariant.hpp"
#include "jetlag/geometry/local.hpp"

namespace jetlag {

/// Point geometry together with adapted derivatives of the nonlinear and
/// Cartan connection coefficients.
struct ConnectionJet {
  PointGeometry geo;
  AdaptedJet M;   // VertUp
  AdaptedJet N;   // VertUp x SpaceDown
  AdaptedJet Gt;  // SpaceUp x SpaceDown
  AdaptedJet L;   // SpaceUp x SpaceDown x SpaceDown
  AdaptedJet C;   // SpaceUp x SpaceDown x VertDown

  int dim() const { return geo.dim(); }
};

inline std::vector<DTensorValue> connection_values(const PointGeometry& g) {
  using K = SlotKind;
  return {as_dtensor(g.nl.M, K::VertUp), as_dtensor(g.nl.N, K::VertUp, K::SpaceDown),
          as_dtensor(g.cartan.Gt, K::SpaceUp, K::SpaceDown),
          as_dtensor(g.cartan.L, K::SpaceUp, K::SpaceDown, K::SpaceDown),
          as_dtensor(g.cartan.C, K::SpaceUp, K::SpaceDown, K::VertDown)};
}

inline ConnectionJet connection_jet(const LagrangeSpace& sp, const JetPoint& p, const GeometryOptions& opt = {},
                                    double step = kDefaultStep) {
  ConnectionJet cj;
  cj.geo = local_geometry(sp, p, opt);
  auto jets = adapted_jets([&](const JetPoint& q) { return connection_values(local_geometry(sp, q, opt)); }, p,
                           cj.geo.nl, step);
  cj.M = std::move(jets[0]);
  cj.N = std::move(jets[1]);
  cj.Gt = std::move(jets[2]);
  cj.L = std::move(jets[3]);
  cj.C = std::move(jets[4]);
  return cj;
}

/// The eight torsion d-tensors of an h-normal connection:
/// T1(m,j) = T^m_1j, T(m,i,j) = T^m_ij, Pc(m,i,j) = P^m_i(j),
/// P1(m,j) = P^(m)_(1)1(j), P(m,i,j) = P^(m)_(1)i(j),
/// R1(m,j) = R^(m)_(1)1j, R(m,i,j) = R^(m)_(1)ij, S(m,i,j) = S^(m)_(1)(i)(j).
struct TorsionTable {
  Eigen::MatrixXd T1;
  Array3 T;
  Array3 Pc;
  Eigen::MatrixXd P1;
  Array3 P;
  Eigen::MatrixXd R1;
  Array3 R;
  Array3 S;
};

inline TorsionTable torsion(const ConnectionJet& cj) {
  const int n = cj.dim();
  const auto& c = cj.geo.cartan;
  TorsionTable t{Eigen::MatrixXd(n, n), Array3(n), c.C, Eigen::MatrixXd(n, n), Array3(n), Eigen::MatrixXd(n, n),
                 Array3(n), Array3(n)};
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      t.T1(m, j) = -c.Gt(m, j);
      t.P1(m, j) = cj.M.dy[uj](m) - c.Gt(m, j) + (m == j ? c.H : 0.0);
      t.R1(m, j) = cj.M.dx[uj](m) - cj.N.dt(m, j);
      for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        t.T(m, i, j) = c.L(m, i, j) - c.L(m, j, i);
        t.P(m, i, j) = cj.N.dy[uj](m, i) - c.L(m, j, i);
        t.R(m, i, j) = cj.N.dx[uj](m, i) - cj.N.dx[ui](m, j);
        t.S(m, i, j) = c.C(m, i, j) - c.C(m, j, i);
      }
    }
  return t;
}

inline TorsionTable torsion(const LagrangeSpace& sp, const JetPoint& p, const GeometryOptions& opt = {}) {
  return torsion(connection_jet(sp, p, opt));
}

/// The five curvature d-tensors: R1(l,i,k) = R^l_i1k, R(l,i,j,k) = R^l_ijk,
/// P1(l,i,k) = P^l_i1(k), P(l,i,j,k) = P^l_ij(k), S(l,i,j,k) = S^l_i(j)(k).
struct CurvatureTable {
  Array3 R1;
  Array4 R;
  Array3 P1;
  Array4 P;
  Array4 S;
};

inline CurvatureTable curvature(const ConnectionJet& cj, const TorsionTable& tor) {
  const int n = cj.dim();
  const auto& c = cj.geo.cartan;
  const auto dC = covariant_derivatives(cj.C, c);
  CurvatureTable r{Array3(n), Array4(n), Array3(n), Array4(n), Array4(n)};
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        double r1 = cj.Gt.dx[uk](l, i) - cj.L.dt(l, i, k);
        double p1 = cj.Gt.dy[uk](l, i) - dC.slash1(l, i, k, 0);
        for (int m = 0; m < n; ++m) {
          r1 += c.Gt(m, i) * c.L(l, m, k) - c.L(m, i, k) * c.Gt(l, m) + c.C(l, i, m) * tor.R1(m, k);
          p1 += c.C(l, i, m) * tor.P1(m, k);
        }
        r.R1(l, i, k) = r1;
        r.P1(l, i, k) = p1;
        for (int j = 0; j < n; ++j) {
          const auto uj = static_cast<std::size_t>(j);
          double rr = cj.L.dx[uk](l, i, j) - cj.L.dx[uj](l, i, k);
          double pp = cj.L.dy[uk](l, i, j) - dC.bar(l, i, k, j);
          double ss = cj.C.dy[uk](l, i, j) - cj.C.dy[uj](l, i, k);
          for (int m = 0; m < n; ++m) {
            rr += c.L(m, i, j) * c.L(l, m, k) - c.L(m, i, k) * c.L(l, m, j) + c.C(l, i, m) * tor.R(m, j, k);
            pp += c.C(l, i, m) * tor.P(m, j, k);
            ss += c.C(m, i, j) * c.C(l, m, k) - c.C(m, i, k) * c.C(l, m, j);
          }
          r.R(l, i, j, k) = rr;
          r.P(l, i, j, k) = pp;
          r.S(l, i, j, k) = ss;
        }
      }
  return r;
}

inline CurvatureTable curvature(const LagrangeSpace& sp, const JetPoint& p, const GeometryOptions& opt = {}) {
  const auto cj = connection_jet(sp, p, opt);
  return curvature(cj, torsion(cj));
}

/// R_{mijk} = g_ip R^p_mjk (first index is the original covariant one).
inline Array4 lowered(const Array4& R, const Eigen::MatrixXd& g) {
  const int n = R.n();
  Array4 out(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) s += g(i, p) * R(p, m, j, k);
          out(m, i, j, k) = s;
        }
  return out;
}

inline Array3 lowered(const Array3& R, const Eigen::MatrixXd& g) {
  const int n = R.n();
  Array3 out(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int p = 0; p < n; ++p) s += g(i, p) * R(p, m, k);
        out(m, i, k) = s;
      }
  return out;
}

}  // namespace jetlag
