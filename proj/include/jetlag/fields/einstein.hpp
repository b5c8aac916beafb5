#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "jetlag/dtensor/covariant.hpp"
#include "jetlag/geometry/curvature.hpp"

namespace jetlag {

/// Effective Ricci d-tensors of the Cartan connection and its scalar curvature.
/// P_i_j(i, j) = P_i(j), P_i1(i) = P_(i)1, P_ij(i, j) = P_(i)j, S_ij(i, j) = S_(i)(j).
struct RicciSet {
  double H11 = 0.0;
  Eigen::VectorXd R_i1;
  Eigen::MatrixXd R_ij;
  Eigen::MatrixXd P_i_j;
  Eigen::VectorXd P_i1;
  Eigen::MatrixXd P_ij;
  Eigen::MatrixXd S_ij;
  double H = 0.0;
  double R = 0.0;
  double S = 0.0;
  double Sc = 0.0;
};

inline RicciSet ricci_and_scalar(const CurvatureTable& c, const MetricValue& metric) {
  const int n = c.R.n();
  RicciSet r;
  r.R_i1 = Eigen::VectorXd::Zero(n);
  r.P_i1 = Eigen::VectorXd::Zero(n);
  r.R_ij = r.P_i_j = r.P_ij = r.S_ij = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m) {
      r.R_i1(i) += c.R1(m, i, m);
      r.P_i1(i) += c.P1(m, i, m);
      for (int j = 0; j < n; ++j) {
        r.R_ij(i, j) += c.R(m, i, j, m);
        r.P_i_j(i, j) -= c.P(m, i, m, j);
        r.P_ij(i, j) += c.P(m, i, j, m);
        r.S_ij(i, j) += c.S(m, i, j, m);
      }
    }
  r.R = (metric.g_inv.cwiseProduct(r.R_ij)).sum();
  r.S = metric.h11 * (metric.g_inv.cwiseProduct(r.S_ij)).sum();
  r.Sc = r.H + r.R + r.S;
  return r;
}

inline RicciSet ricci_and_scalar(const LagrangeSpace& sp, const JetPoint& p, const GeometryOptions& opt = {}) {
  const auto cj = connection_jet(sp, p, opt);
  return ricci_and_scalar(curvature(cj, torsion(cj)), cj.geo.metric);
}

/// Left-hand sides of the Einstein blocks and the stress-energy they imply.
struct EinsteinReport {
  double K = 1.0;
  double E1_tt = 0.0;          // -(R+S)/2 h11
  Eigen::MatrixXd E1_ij;       // R_ij - (R+S)/2 g_ij
  Eigen::MatrixXd E1_vert;     // S_(i)(j) - (R+S)/2 h^11 g_ij
  Eigen::VectorXd E2_i1;       // R_i1
  Eigen::VectorXd E2_vi1;      // P_(i)1
  Eigen::MatrixXd E2_i_j;      // P_i(j)
  Eigen::MatrixXd E2_vij;      // P_(i)j
  // T = LHS / K
  double T_11 = 0.0;
  Eigen::MatrixXd T_ij, T_vert;
  Eigen::VectorXd T_1i, T_i1, T_vi1, T_1vi;
  Eigen::MatrixXd T_i_j, T_vij;
  std::vector<std::string> forced_zero;  // components the equations force to vanish

  double max_abs_E2() const {
    return std::max({T_1i.cwiseAbs().maxCoeff(), T_i1.cwiseAbs().maxCoeff(), T_vi1.cwiseAbs().maxCoeff(),
                     T_1vi.cwiseAbs().maxCoeff(), T_i_j.cwiseAbs().maxCoeff(), T_vij.cwiseAbs().maxCoeff()});
  }
};

inline EinsteinReport einstein_system(const RicciSet& r, const MetricValue& metric, double K = 1.0) {
  if (K == 0.0) throw InvalidArgument("Einstein constant K must be nonzero");
  const int n = static_cast<int>(r.R_ij.rows());
  const double half = 0.5 * (r.R + r.S);
  EinsteinReport e;
  e.K = K;
  e.E1_tt = -half * metric.h11;
  e.E1_ij = r.R_ij - half * metric.g;
  e.E1_vert = r.S_ij - half * metric.h_inv * metric.g;
  e.E2_i1 = r.R_i1;
  e.E2_vi1 = r.P_i1;
  e.E2_i_j = r.P_i_j;
  e.E2_vij = r.P_ij;
  e.T_11 = e.E1_tt / K;
  e.T_ij = e.E1_ij / K;
  e.T_vert = e.E1_vert / K;
  e.T_1i = Eigen::VectorXd::Zero(n);
  e.T_1vi = Eigen::VectorXd::Zero(n);
  e.T_i1 = r.R_i1 / K;
  e.T_vi1 = r.P_i1 / K;
  e.T_i_j = r.P_i_j / K;
  e.T_vij = r.P_ij / K;
  e.forced_zero = {"T_1i", "T_1(i)"};
  return e;
}

inline EinsteinReport einstein_system(const LagrangeSpace& sp, const JetPoint& p, double K = 1.0) {
  const auto cj = connection_jet(sp, p);
  return einstein_system(ricci_and_scalar(curvature(cj, torsion(cj)), cj.geo.metric), cj.geo.metric, K);
}

/// Residuals (LHS - RHS) of the three conservation laws: a scalar and two
/// covectors indexed by j.
struct ConservationResiduals {
  double first = 0.0;
  Eigen::VectorXd second;
  Eigen::VectorXd third;

  double max_abs() const {
    return std::max({std::abs(first), second.cwiseAbs().maxCoeff(), third.cwiseAbs().maxCoeff()});
  }
};

namespace detail {

// Mixed Ricci components entering the conservation laws, as d-tensors.
inline std::vector<DTensorValue> mixed_ricci_values(const LagrangeSpace& sp, const JetPoint& q,
                                                    const GeometryOptions& opt, double step) {
  using K = SlotKind;
  const auto cj = connection_jet(sp, q, opt, step);
  const auto& m = cj.geo.metric;
  const auto r = ricci_and_scalar(curvature(cj, torsion(cj)), m);
  const int n = cj.dim();
  const double half = 0.5 * (r.R + r.S);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  auto col = [n](const Eigen::VectorXd& v, K a) {
    DTensorValue t({a, K::TimeDown}, n);
    for (int i = 0; i < n; ++i) t(i, 0) = v(i);
    return t;
  };
  return {DTensorValue::scalar(half, n),
          col(m.g_inv * r.R_i1, K::SpaceUp),
          col(m.h11 * m.g_inv * r.P_i1, K::VertUp),
          as_dtensor(Eigen::MatrixXd(m.g_inv * r.R_ij - half * I), K::SpaceUp, K::SpaceDown),
          as_dtensor(Eigen::MatrixXd(m.h11 * m.g_inv * r.P_ij), K::VertUp, K::SpaceDown),
          as_dtensor(Eigen::MatrixXd(m.h11 * m.g_inv * r.S_ij - half * I), K::VertUp, K::VertDown),
          as_dtensor(Eigen::MatrixXd(m.g_inv * r.P_i_j), K::SpaceUp, K::VertDown)};
}

}  // namespace detail

inline ConservationResiduals conservation_residuals(const LagrangeSpace& sp, const JetPoint& p,
                                                    const GeometryOptions& opt = {}, double step = kDefaultStep) {
  const auto g = local_geometry(sp, p, opt);
  const int n = g.dim();
  auto jets = adapted_jets([&](const JetPoint& q) { return detail::mixed_ricci_values(sp, q, opt, step); }, p, g.nl,
                           step);
  const auto& c = g.cartan;
  std::vector<CovariantJet> cov;
  for (const auto& j : jets) cov.push_back(covariant_derivatives(j, c));
  ConservationResiduals r;
  r.second = Eigen::VectorXd::Zero(n);
  r.third = Eigen::VectorXd::Zero(n);
  double div_R1 = 0.0, div_P1 = 0.0;
  for (int m = 0; m < n; ++m) {
    div_R1 += cov[1].bar(m, 0, m);
    div_P1 += cov[2].vbar(m, 0, m);
  }
  r.first = cov[0].slash1(0) - (div_R1 - div_P1);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) {
      r.second(j) += cov[3].bar(m, j, m) + cov[4].vbar(m, j, m);
      r.third(j) += cov[5].vbar(m, j, m) + cov[6].bar(m, j, m);
    }
  return r;
}

}  // namespace jetlag
