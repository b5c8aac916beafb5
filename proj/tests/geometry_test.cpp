#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jetlag/dtensor/covariant.hpp"
#include "jetlag/dynamics/harmonic.hpp"
#include "jetlag/geometry/curvature.hpp"
#include "oracles.hpp"

using namespace jetlag;

namespace {

constexpr double kPi = std::numbers::pi;

JetPoint pt(double t, std::vector<double> x, std::vector<double> y) { return JetPoint{t, std::move(x), std::move(y)}; }

LagrangeSpace sphere(const std::string& h = "1") {
  return LagrangeSpace::from_family(Family::L1, 2, h, {{"1", ""}, {"", "sin(x1)^2"}}, {}, "");
}

LagrangeSpace flat_electro() { return LagrangeSpace::from_family(Family::L2, 2, "1", {{"1", ""}, {"", "1"}}, {"0", "x1"}, ""); }

// L3 on a deformed sphere with t-dependent metric and potentials.
LagrangeSpace l3() {
  return LagrangeSpace::from_family(Family::L3, 2, "exp(0.2*t)", {{"1 + 0.1*t", ""}, {"", "(1 + 0.1*t)*sin(x1)^2"}},
                                    {"t*sin(x2)", "t*x1"}, "0.1*t*x1");
}

// A genuinely Finslerian Lagrangian (C != 0) in dimension 3.
LagrangeSpace finsler3() {
  return LagrangeSpace::general("(1 + 0.1*t*x1)*(y1^2 + y2^2 + y3^2) + 0.2*y1^2*y2^2/(1 + y3^2) + x2*y3 + t*x3",
                                "1 + t^2", 3);
}

std::vector<JetPoint> random_points(int n, int count, std::uint64_t seed, double xlo = -1, double xhi = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<JetPoint> out;
  for (int k = 0; k < count; ++k) {
    JetPoint p{0.1 + 0.8 * u(rng), std::vector<double>(static_cast<std::size_t>(n)),
               std::vector<double>(static_cast<std::size_t>(n))};
    for (auto& v : p.x) v = xlo + (xhi - xlo) * u(rng);
    for (auto& v : p.y) v = -1 + 2 * u(rng);
    out.push_back(p);
  }
  return out;
}

double metricity(const LagrangeSpace& sp, const JetPoint& p, const CartanCoefficients& c,
                 const NonlinearConnectionValue& nl) {
  const auto g = metric_field(sp);
  double m = 0;
  for (auto kind : {CovariantKind::Horizontal, CovariantKind::Vertical, CovariantKind::Time})
    m = std::max(m, covariant_derivative(g, p, c, nl, kind).max_abs());
  return m;
}

}  // namespace

TEST(Metric, FlatIsIdentity) {
  const auto sp = LagrangeSpace::general("y1^2 + y2^2", "1", 2);
  const auto m = fundamental_metric(sp, pt(0, {0.3, 0.1}, {0.2, 0.5}));
  EXPECT_TRUE(m.g.isApprox(Eigen::Matrix2d::Identity(), 1e-15));
  EXPECT_EQ(m.signature, 0);
}

TEST(Metric, SphereAtQuarterPi) {
  const auto m = fundamental_metric(sphere(), pt(0, {kPi / 4, 0}, {0, 1}));
  EXPECT_NEAR(m.g(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(m.g(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(m.g(0, 1), 0.0, 1e-15);
  EXPECT_TRUE((m.g * m.g_inv).isApprox(Eigen::Matrix2d::Identity(), 1e-12));
  // finite-difference oracle on L itself
  const auto sp = sphere();
  const std::vector<double> c{0, kPi / 4, 0, 0, 1};
  const double g22 = 0.5 * oracle::partial(
                               [&](const std::vector<double>& v) {
                                 return oracle::partial([&](const std::vector<double>& w) { return sp.L().evaluate(w); },
                                                        v, 4);
                               },
                               c, 4);
  EXPECT_NEAR(m.g(1, 1), g22, 1e-8);
}

TEST(Metric, DegenerateHessianIsNonRegular) {
  const auto sp = LagrangeSpace::general("y1^3", "1", 1);
  EXPECT_THROW(fundamental_metric(sp, pt(0, {0}, {0})), NonRegularError);
  EXPECT_NO_THROW(fundamental_metric(sp, pt(0, {0}, {1})));
  const auto deg = LagrangeSpace::general("(y1 + y2)^2", "1", 2);
  EXPECT_THROW(fundamental_metric(deg, pt(0, {0, 0}, {1, 1})), NonRegularError);
  EXPECT_THROW(local_geometry(deg, pt(0, {0, 0}, {1, 1})), NonRegularError);
}

TEST(Metric, LorentzianSignature) {
  const auto sp = LagrangeSpace::general("y1^2 - y2^2", "1", 2);
  EXPECT_EQ(fundamental_metric(sp, pt(0, {0, 0}, {1, 0})).signature, 1);
}

TEST(Space, RejectsTimeDependenceOfH11OnX) {
  EXPECT_THROW(LagrangeSpace::general("y1^2", "1 + x1^2", 1), InvalidArgument);
  EXPECT_THROW(LagrangeSpace::from_family(Family::L1, 1, "1", {{"t"}}, {}, ""), InvalidArgument);
  EXPECT_THROW(LagrangeSpace::from_family(Family::L2, 1, "1", {{"1"}}, {"y1"}, ""), InvalidArgument);
  EXPECT_THROW(LagrangeSpace::general("y1^2", "1", 1, 2), OrderError);
}

TEST(TemporalChristoffel, Examples) {
  EXPECT_EQ(temporal_christoffel(parse("1", 1), 0.7), 0.0);
  for (double t : {-1.0, 0.0, 0.5, 2.0}) EXPECT_NEAR(temporal_christoffel(parse("exp(2*t)", 1), t), 1.0, 1e-14);
  EXPECT_NEAR(temporal_christoffel(parse("t", 1), 2.0), 0.25, 1e-15);
  EXPECT_THROW(temporal_christoffel(parse("t", 1), 0.0), NonRegularError);
  // finite-difference oracle
  auto h = [](double t) { return 1 + t * t; };
  const double fd = 0.5 * oracle::richardson(h, 0.7, 1e-3) / h(0.7);
  EXPECT_NEAR(temporal_christoffel(parse("1 + t^2", 1), 0.7), fd, 1e-10);
}

TEST(Spray, FlatIsZero) {
  const auto s = canonical_spray(LagrangeSpace::general("y1^2 + y2^2", "1", 2), pt(0.2, {1, 2}, {3, -1}));
  EXPECT_EQ(s.Htemp.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(s.Gspat.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Spray, SphereAtQuarterPi) {
  const auto s = canonical_spray(sphere(), pt(0, {kPi / 4, 0}, {0, 1}));
  const auto gam = oracle::sphere_christoffel(kPi / 4);
  EXPECT_NEAR(s.Gspat(0), 0.5 * gam[0][1][1], 1e-15);
  EXPECT_NEAR(s.Gspat(0), -0.25, 1e-15);
  EXPECT_NEAR(s.Gspat(1), 0.0, 1e-15);
}

TEST(Spray, ElectrodynamicsFlatMetric) {
  const auto g = local_geometry(flat_electro(), pt(0, {0.3, 0.4}, {1, 0}));
  EXPECT_NEAR(g.spray.Gspat(0), 0.0, 1e-15);
  EXPECT_NEAR(g.spray.Gspat(1), 0.25, 1e-15);
  EXPECT_NEAR(g.nl.N(1, 0), 0.25, 1e-15);
  EXPECT_NEAR(g.nl.N(0, 1), -0.25, 1e-15);
  EXPECT_NEAR(g.nl.N(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(g.nl.N(1, 1), 0.0, 1e-15);
}

TEST(Spray, ElectrodynamicsReducedForm) {
  // G = 1/2 gamma y y + (h g^-1 / 4)[U_(l)j y^j + dU_l/dt + U_l H - dF/dx^l] and
  // N = gamma y + (h g^-1 / 4) U_(k)j, with U_(k)j = dU_k/dx^j - dU_j/dx^k.
  const auto sp = LagrangeSpace::from_family(Family::L2, 2, "exp(0.4*t)", {{"1", ""}, {"", "sin(x1)^2"}},
                                             {"x2*cos(x1)", "x1^2"}, "x1*x2");
  auto U = [](const std::vector<double>& x) { return std::vector<double>{x[1] * std::cos(x[0]), x[0] * x[0]}; };
  auto metric = [](const std::vector<double>& x) {
    return std::vector<std::vector<double>>{{1, 0}, {0, std::sin(x[0]) * std::sin(x[0])}};
  };
  for (const auto& p : random_points(2, 10, 7, 0.6, 2.4)) {
    const auto g = local_geometry(sp, p);
    const auto gam = oracle::christoffel_fd(metric, p.x);
    double Uf[2][2];
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        Uf[k][j] = oracle::partial([&](const std::vector<double>& x) { return U(x)[static_cast<std::size_t>(k)]; }, p.x, j) -
                   oracle::partial([&](const std::vector<double>& x) { return U(x)[static_cast<std::size_t>(j)]; }, p.x, k);
    const double h = std::exp(0.4 * p.t), H = 0.2;
    const auto u = U(p.x);
    const double dF[2] = {p.x[1], p.x[0]};
    const auto gi = g.metric.g_inv;
    for (int i = 0; i < 2; ++i) {
      double G = 0, N[2] = {0, 0};
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          G += 0.5 * gam[i][j][k] * p.y[j] * p.y[k];
          N[j] += gam[i][j][k] * p.y[k];
        }
      for (int l = 0; l < 2; ++l) {
        double br = u[l] * H - dF[l];
        for (int j = 0; j < 2; ++j) {
          br += Uf[l][j] * p.y[j];
          N[j] += 0.25 * h * gi(i, l) * Uf[l][j];
        }
        G += 0.25 * h * gi(i, l) * br;
      }
      EXPECT_NEAR(g.spray.Gspat(i), G, 1e-9);
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(g.nl.N(i, j), N[j], 1e-9);
    }
  }
}

TEST(Spray, ExpTimeTemporalComponents) {
  const auto sp = LagrangeSpace::from_family(Family::L1, 2, "exp(2*t)", {{"1", ""}, {"", "1"}}, {}, "");
  const auto g = local_geometry(sp, pt(0.3, {0, 0}, {0.7, -1.1}));
  EXPECT_NEAR(g.nl.M(0), -0.7, 1e-14);
  EXPECT_NEAR(g.nl.M(1), 1.1, 1e-14);
  EXPECT_NEAR(g.spray.Htemp(0), -0.35, 1e-14);
}

TEST(GeometryProperty, SprayMatchesEulerLagrangeOracle) {
  // h11 G from the Poisson form equals the spray; acceleration from a
  // finite-difference Euler-Lagrange solve.
  struct Case {
    LagrangeSpace sp;
    oracle::Fn L;
    std::function<double(double)> h;
  };
  std::vector<Case> cases{
      {l3(),
       [](const std::vector<double>& c) {
         const double t = c[0], x1 = c[1], x2 = c[2], y1 = c[3], y2 = c[4];
         const double s = (1 + 0.1 * t);
         return (s * y1 * y1 + s * std::sin(x1) * std::sin(x1) * y2 * y2) / std::exp(0.2 * t) + t * std::sin(x2) * y1 +
                t * x1 * y2 + 0.1 * t * x1;
       },
       [](double t) { return std::exp(0.2 * t); }},
      {finsler3(),
       [](const std::vector<double>& c) {
         const double t = c[0], x1 = c[1], x2 = c[2], x3 = c[3], y1 = c[4], y2 = c[5], y3 = c[6];
         return (1 + 0.1 * t * x1) * (y1 * y1 + y2 * y2 + y3 * y3) + 0.2 * y1 * y1 * y2 * y2 / (1 + y3 * y3) + x2 * y3 +
                t * x3;
       },
       [](double t) { return 1 + t * t; }},
  };
  for (const auto& cs : cases) {
    const int n = cs.sp.dim();
    for (const auto& p : random_points(n, 15, 13, 0.5, 1.5)) {
      const auto acc = harmonic_rhs(cs.sp, p);
      const auto ref = oracle::el_acceleration(cs.L, cs.h, p.coords());
      for (int i = 0; i < n; ++i) EXPECT_NEAR(acc(i), ref[static_cast<std::size_t>(i)], 1e-6 * (1 + std::abs(acc(i))));
      // Euler-Lagrange equations evaluated at the spray acceleration
      const auto el = euler_lagrange_lhs(cs.sp, p, acc);
      EXPECT_LT(el.cwiseAbs().maxCoeff(), 1e-11);
    }
  }
}

TEST(GeometryProperty, NonlinearConnectionIsSprayDerivative) {
  for (const auto& sp : {l3(), finsler3(), sphere("1 + t")}) {
    const int n = sp.dim();
    for (const auto& p : random_points(n, 10, 17, 0.5, 1.5)) {
      const auto g = local_geometry(sp, p);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const double fd = oracle::partial(
              [&](const std::vector<double>& c) { return canonical_spray(sp, JetPoint::from_coords(c, n)).Gspat(i); },
              p.coords(), y_var(n, j));
          EXPECT_NEAR(g.nl.N(i, j), fd, 1e-6 * (1 + std::abs(fd)));
        }
      EXPECT_LT((g.nl.M + g.H * detail::y_vector(p)).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(Cartan, FlatIsZero) {
  const auto c = cartan_connection(LagrangeSpace::general("y1^2 + y2^2", "1", 2), pt(0, {1, 2}, {3, 4}));
  EXPECT_EQ(c.H, 0.0);
  EXPECT_EQ(c.Gt.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(c.L.max_abs(), 0.0);
  EXPECT_EQ(c.C.max_abs(), 0.0);
}

TEST(Cartan, SphereChristoffels) {
  const auto c = cartan_connection(sphere(), pt(0, {kPi / 4, 0}, {0, 1}));
  EXPECT_NEAR(c.L(0, 1, 1), -0.5, 1e-14);
  EXPECT_NEAR(c.L(1, 0, 1), 1.0, 1e-14);
  EXPECT_NEAR(c.L(1, 1, 0), 1.0, 1e-14);
  const auto gam = oracle::christoffel_fd(
      [](const std::vector<double>& x) {
        return std::vector<std::vector<double>>{{1, 0}, {0, std::sin(x[0]) * std::sin(x[0])}};
      },
      {kPi / 4, 0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) EXPECT_NEAR(c.L(i, j, k), gam[i][j][k], 1e-9);
}

TEST(Cartan, ElectrodynamicsIsBerwald) {
  const auto sp = LagrangeSpace::from_family(Family::L2, 2, "exp(t)", {{"1", ""}, {"", "sin(x1)^2"}}, {"0", "cos(x1)"},
                                             "0.3*x1");
  for (const auto& p : random_points(2, 10, 3, 0.6, 2.4)) {
    const auto c = cartan_connection(sp, p);
    const auto b = berwald_connection(sp.h11(), sp.family_data().g, p);
    EXPECT_NEAR(c.H, b.H, 1e-14);
    EXPECT_LT(c.Gt.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((c.L - b.L).max_abs(), 1e-12);
    EXPECT_LT(c.C.max_abs(), 1e-12);
  }
}

TEST(Berwald, Examples) {
  const auto flat = parse("1", 2);
  std::vector<std::vector<ScalarField>> g{{parse("1", 2), parse("0", 2)}, {parse("0", 2), parse("1", 2)}};
  const auto b = berwald_connection(flat, g, pt(0, {0, 0}, {0, 0}));
  EXPECT_EQ(b.H, 0.0);
  EXPECT_EQ(b.L.max_abs(), 0.0);
  EXPECT_NEAR(berwald_connection(parse("exp(2*t)", 2), g, pt(0.3, {0, 0}, {0, 0})).H, 1.0, 1e-14);
  std::vector<std::vector<ScalarField>> s{{parse("1", 2), parse("0", 2)}, {parse("0", 2), parse("sin(x1)^2", 2)}};
  const auto bs = berwald_connection(flat, s, pt(0, {kPi / 4, 0}, {0, 0}));
  EXPECT_NEAR(bs.L(0, 1, 1), -0.5, 1e-14);
  EXPECT_NEAR(bs.L(1, 0, 1), 1.0, 1e-14);
  std::vector<std::vector<ScalarField>> z{{parse("0", 2), parse("0", 2)}, {parse("0", 2), parse("1", 2)}};
  EXPECT_THROW(berwald_connection(flat, z, pt(0, {0, 0}, {0, 0})), NonRegularError);
}

TEST(CartanProperty, MetricityAndSymmetry) {
  for (const auto& sp : {l3(), finsler3(), sphere("exp(t)")}) {
    const int n = sp.dim();
    for (const auto& p : random_points(n, 20, 5, 0.5, 1.5)) {
      const auto g = local_geometry(sp, p);
      EXPECT_LT(metricity(sp, p, g.cartan, g.nl), 1e-8);
      const auto hm = covariant_derivative(temporal_metric_field(sp), p, g.cartan, g.nl, CovariantKind::Time);
      EXPECT_LT(hm.max_abs(), 1e-12);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            EXPECT_EQ(g.cartan.L(i, j, k), g.cartan.L(i, k, j));
            EXPECT_NEAR(g.cartan.C(i, j, k), g.cartan.C(i, k, j), 1e-14);
          }
      // h-normal derived block
      const auto v = g.cartan.vertical_time_block();
      EXPECT_NEAR(v(0, 0), g.cartan.Gt(0, 0) - g.cartan.H, 1e-15);
    }
  }
}

TEST(CartanProperty, UniquenessProbe) {
  // Perturbing any single L or C coefficient breaks metricity or symmetry.
  const auto sp = finsler3();
  const int n = 3;
  const auto p = pt(0.4, {0.7, 1.1, 0.9}, {0.3, -0.6, 0.8});
  const auto g = local_geometry(sp, p);
  for (int block = 0; block < 2; ++block)
    for (int f = 0; f < n * n * n; ++f) {
      auto c = g.cartan;
      (block == 0 ? c.L : c.C).data()[static_cast<std::size_t>(f)] += 1e-3;
      double sym = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            sym = std::max({sym, std::abs(c.L(i, j, k) - c.L(i, k, j)), std::abs(c.C(i, j, k) - c.C(i, k, j))});
      EXPECT_GE(std::max(sym, metricity(sp, p, c, g.nl)), 1e-4) << "block " << block << " entry " << f;
    }
}

TEST(CartanProperty, CustomNonlinearConnection) {
  // With a general nonlinear connection the metrical construction still applies.
  const auto sp = finsler3();
  GeometryOptions opt;
  opt.nonlinear = [](const JetPoint& q) {
    NonlinearConnectionValue nl;
    nl.M = Eigen::Vector3d(0.1 * q.y[0], -0.2, q.x[1]);
    nl.N = Eigen::Matrix3d::Identity() * 0.3 + Eigen::Matrix3d::Constant(0.05 * q.t);
    return nl;
  };
  for (const auto& p : random_points(3, 5, 29, 0.5, 1.5)) {
    const auto g = local_geometry(sp, p, opt);
    EXPECT_LT(metricity(sp, p, g.cartan, g.nl), 1e-8);
  }
}

TEST(Torsion, FlatIsZero) {
  const auto t = torsion(LagrangeSpace::general("y1^2 + y2^2", "1", 2), pt(0.1, {0.2, 0.3}, {0.4, 0.5}));
  EXPECT_EQ(t.T1.cwiseAbs().maxCoeff() + t.P1.cwiseAbs().maxCoeff() + t.R1.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(t.T.max_abs() + t.Pc.max_abs() + t.P.max_abs() + t.R.max_abs() + t.S.max_abs(), 0.0);
}

TEST(Torsion, ElectrodynamicsFlatMetricVanishes) {
  const auto t = torsion(flat_electro(), pt(0.2, {0.3, 0.4}, {1, 0.5}));
  EXPECT_LT(t.R1.cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(t.R.max_abs(), 1e-9);
}

TEST(Torsion, SphereSpatialComponent) {
  const auto t = torsion(sphere(), pt(0, {kPi / 4, 0}, {0, 1}));
  // R^(m)_(1)ij = r^m_ijl y^l; |R^(1)_(1)21| = |r^1_212 y^2| = 0.5
  EXPECT_NEAR(std::abs(t.R(0, 1, 0)), 0.5, 1e-8);
  EXPECT_NEAR(t.R(0, 1, 0), -t.R(0, 0, 1), 1e-12);
  const auto r = oracle::riemann_fd(
      [](const std::vector<double>& x) {
        return std::vector<std::vector<double>>{{1, 0}, {0, std::sin(x[0]) * std::sin(x[0])}};
      },
      {kPi / 4, 0});
  for (int m = 0; m < 2; ++m)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(t.R(m, i, j), r[m][1][i][j], 1e-6);
}

TEST(Curvature, SphereRiemann) {
  const auto sp = sphere();
  for (double th : {kPi / 4, 1.0, 2.0}) {
    const auto p = pt(0.3, {th, 0.2}, {0.4, -0.7});
    const auto cj = connection_jet(sp, p);
    const auto c = curvature(cj, torsion(cj));
    const auto low = lowered(c.R, cj.geo.metric.g);
    EXPECT_NEAR(low(0, 1, 0, 1), std::sin(th) * std::sin(th), 1e-6);
    const auto r = oracle::riemann_fd(
        [](const std::vector<double>& x) {
          return std::vector<std::vector<double>>{{1, 0}, {0, std::sin(x[0]) * std::sin(x[0])}};
        },
        p.x);
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) EXPECT_NEAR(c.R(l, i, j, k), r[l][i][j][k], 1e-6);
    EXPECT_LT(c.R1.max_abs() + c.P1.max_abs() + c.P.max_abs() + c.S.max_abs(), 1e-8);
  }
}

TEST(Curvature, ThreeDimensionalRiemannOracle) {
  const auto sp = LagrangeSpace::from_family(
      Family::L1, 3, "1", {{"1 + x2^2", "0.1*x3", ""}, {"0.1*x3", "2 + sin(x1)", ""}, {"", "", "1 + x1^2*x2^2"}}, {},
      "");
  auto metric = [](const std::vector<double>& x) {
    return std::vector<std::vector<double>>{
        {1 + x[1] * x[1], 0.1 * x[2], 0}, {0.1 * x[2], 2 + std::sin(x[0]), 0}, {0, 0, 1 + x[0] * x[0] * x[1] * x[1]}};
  };
  for (const auto& p : random_points(3, 3, 37)) {
    const auto c = curvature(sp, p);
    const auto r = oracle::riemann_fd(metric, p.x);
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) EXPECT_NEAR(c.R(l, i, j, k), r[l][i][j][k], 1e-6);
  }
}

TEST(CurvatureProperty, Antisymmetries) {
  for (const auto& sp : {l3(), finsler3()}) {
    const int n = sp.dim();
    for (const auto& p : random_points(n, 8, 43, 0.5, 1.5)) {
      const auto cj = connection_jet(sp, p);
      const auto t = torsion(cj);
      const auto c = curvature(cj, t);
      const auto& g = cj.geo.metric.g;
      const auto R = lowered(c.R, g), P = lowered(c.P, g), S = lowered(c.S, g);
      const auto R1 = lowered(c.R1, g), P1 = lowered(c.P1, g);
      EXPECT_LT(t.T.max_abs(), 1e-12);
      EXPECT_LT(t.S.max_abs(), 1e-12);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          for (int k = 0; k < n; ++k) {
            EXPECT_NEAR(t.R(a, b, k), -t.R(a, k, b), 1e-9);
            EXPECT_NEAR(R1(a, b, k), -R1(b, a, k), 1e-8);
            EXPECT_NEAR(P1(a, b, k), -P1(b, a, k), 1e-8);
            for (int j = 0; j < n; ++j) {
              EXPECT_NEAR(c.R(a, b, j, k), -c.R(a, b, k, j), 1e-9);
              EXPECT_NEAR(c.S(a, b, j, k), -c.S(a, b, k, j), 1e-9);
              EXPECT_NEAR(R(a, b, j, k), -R(b, a, j, k), 1e-8);
              EXPECT_NEAR(P(a, b, j, k), -P(b, a, j, k), 1e-8);
              EXPECT_NEAR(S(a, b, j, k), -S(b, a, j, k), 1e-8);
            }
          }
        }
    }
  }
}

TEST(Curvature, ThrowsAwayFromRegularity) {
  const auto sp = LagrangeSpace::general("y1^3 + y2^2", "1", 2);
  EXPECT_THROW(curvature(sp, pt(0, {0, 0}, {0, 1})), NonRegularError);
}
