#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "jetlag/cli/config.hpp"
#include "jetlag/dtensor/gauge.hpp"
#include "jetlag/dtensor/json.hpp"
#include "jetlag/dynamics/harmonic.hpp"
#include "jetlag/fields/einstein.hpp"
#include "jetlag/fields/maxwell.hpp"
#include "jetlag/geometry/transform.hpp"

namespace jetlag {

inline constexpr int kReportSchemaVersion = 1;

/// Identity suites run by `check`, in report order, with default tolerances.
/// Tolerances follow the numeric-derivative depth of each suite.
inline const std::vector<std::pair<std::string, double>>& default_suites() {
  static const std::vector<std::pair<std::string, double>> suites{
      {"metricity", 1e-8},
      {"h_metricity", 1e-12},
      {"connection_symmetry", 1e-9},
      {"nonlinear_connection", 1e-6},
      {"poisson_form", 1e-9},
      {"torsion_zeros", 1e-9},
      {"antisymmetry", 1e-8},
      {"bianchi", 1e-6},
      {"deflection_routes", 1e-9},
      {"em_form", 1e-9},
      {"deflection_identities", 1e-6},
      {"maxwell", 1e-6},
      {"maxwell_simple", 1e-8},
      {"ricci", 1e-9},
      {"gauge", 1e-8},
      {"conservation", 1e-4},
  };
  return suites;
}

/// Uniform samples in the config ranges; deterministic in the seed.
inline std::vector<JetPoint> sample_points(const ProblemConfig& cfg, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<JetPoint> out;
  const auto dims = static_cast<int>(cfg.ranges.size());
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> c(cfg.ranges.size());
    for (int v = 0; v < dims; ++v) {
      const auto [lo, hi] = cfg.ranges[static_cast<std::size_t>(v)];
      c[static_cast<std::size_t>(v)] = lo + (hi - lo) * u(rng);
    }
    out.push_back(JetPoint::from_coords(c, cfg.n));
  }
  return out;
}

/// Chart change used by the gauge suite: t~ = e^t with a random affine map
/// x~ = A x + c, A = I + 0.3 U, U uniform in [-1, 1].
inline ChartMap gauge_chart(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) {
      c(i) = u(rng);
      for (int j = 0; j < n; ++j) A(i, j) += 0.3 * u(rng);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    if (s(n - 1) > 0.2 * s(0)) return ChartMap("exp(t)", "log(t)", A, c);
  }
}

namespace detail {

inline double rel(double residual, double scale) { return std::abs(residual) / (1.0 + std::abs(scale)); }

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline double max_abs(const std::vector<Eigen::MatrixXd>& v) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, max_abs(e));
  return m;
}

inline double max_diff(const Array3& a, const Array3& b) { return (a - b).max_abs(); }

inline double gauge_residual(const PointGeometry& A, const PointGeometry& B, const ChartMap& map) {
  const auto& p = A.point;
  const auto s = gauge_transform(A.spray, p, map);
  const auto nl = gauge_transform(A.nl, p, map);
  const auto c = gauge_transform(A.cartan, p, map);
  double r = 0.0;
  auto upd = [&r](double diff, double scale) { r = std::max(r, diff / (1.0 + scale)); };
  upd(max_abs(Eigen::VectorXd(s.Htemp - B.spray.Htemp)), max_abs(B.spray.Htemp));
  upd(max_abs(Eigen::VectorXd(s.Gspat - B.spray.Gspat)), max_abs(B.spray.Gspat));
  upd(max_abs(Eigen::VectorXd(nl.M - B.nl.M)), max_abs(B.nl.M));
  upd(max_abs(Eigen::MatrixXd(nl.N - B.nl.N)), max_abs(B.nl.N));
  upd(std::abs(c.H - B.cartan.H), std::abs(B.cartan.H));
  upd(max_abs(Eigen::MatrixXd(c.Gt - B.cartan.Gt)), max_abs(B.cartan.Gt));
  upd(max_diff(c.L, B.cartan.L), B.cartan.L.max_abs());
  upd(max_diff(c.C, B.cartan.C), B.cartan.C.max_abs());
  return r;
}

inline DTensorValue time_slotted(const Eigen::VectorXd& v, SlotKind a) {
  const int n = static_cast<int>(v.size());
  DTensorValue r({a, SlotKind::TimeDown}, n);
  for (int i = 0; i < n; ++i) r(i, 0) = v(i);
  return r;
}

inline DTensorValue with_time_slot(const Eigen::MatrixXd& m, SlotKind a, SlotKind b) {
  const int n = static_cast<int>(m.rows());
  DTensorValue r({a, SlotKind::TimeDown, b}, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, 0, j) = m(i, j);
  return r;
}

inline DTensorValue with_time_slot(const Array3& t, SlotKind a, SlotKind b, SlotKind c) {
  return DTensorValue({a, b, SlotKind::TimeDown, c}, t.n(), t.data());
}

}  // namespace detail

/// Serializes every object computed at one point.
inline nlohmann::json point_objects(const PointAnalysis& a, const RicciSet& ric, const EinsteinReport& ein) {
  using K = SlotKind;
  using jetlag::to_json_value;
  const auto& g = a.geo();
  const int n = g.dim();
  const auto& c = g.cartan;
  const auto& t = a.torsion;
  const auto& cu = a.curvature;
  nlohmann::json j;
  DTensorValue h11({K::TimeDown, K::TimeDown}, n);
  h11(0, 0) = g.metric.h11;
  DTensorValue H({K::TimeUp, K::TimeDown, K::TimeDown}, n);
  H(0, 0, 0) = c.H;
  j["metric"] = {{"g", as_dtensor(g.metric.g, K::SpaceDown, K::SpaceDown)},
                 {"g_inv", as_dtensor(g.metric.g_inv, K::SpaceUp, K::SpaceUp)},
                 {"h11", h11},
                 {"signature", g.metric.signature}};
  j["spray"] = {{"H", detail::time_slotted(g.spray.Htemp, K::VertUp)},
                {"G", detail::time_slotted(g.spray.Gspat, K::VertUp)}};
  j["nonlinear_connection"] = {{"M", detail::time_slotted(g.nl.M, K::VertUp)},
                               {"N", as_dtensor(g.nl.N, K::VertUp, K::SpaceDown)}};
  DTensorValue Gt({K::SpaceUp, K::SpaceDown, K::TimeDown}, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) Gt(k, i, 0) = c.Gt(k, i);
  j["cartan"] = {{"H", H},
                 {"G", Gt},
                 {"L", as_dtensor(c.L, K::SpaceUp, K::SpaceDown, K::SpaceDown)},
                 {"C", as_dtensor(c.C, K::SpaceUp, K::SpaceDown, K::VertDown)}};
  j["torsion"] = {{"T_1j", detail::with_time_slot(t.T1, K::SpaceUp, K::SpaceDown)},
                  {"T_ij", as_dtensor(t.T, K::SpaceUp, K::SpaceDown, K::SpaceDown)},
                  {"P_i(j)", as_dtensor(t.Pc, K::SpaceUp, K::SpaceDown, K::VertDown)},
                  {"P_(1)1(j)", detail::with_time_slot(t.P1, K::VertUp, K::VertDown)},
                  {"P_(1)i(j)", as_dtensor(t.P, K::VertUp, K::SpaceDown, K::VertDown)},
                  {"R_(1)1j", detail::with_time_slot(t.R1, K::VertUp, K::SpaceDown)},
                  {"R_(1)ij", as_dtensor(t.R, K::VertUp, K::SpaceDown, K::SpaceDown)},
                  {"S_(1)(i)(j)", as_dtensor(t.S, K::VertUp, K::VertDown, K::VertDown)}};
  j["curvature"] = {{"R_i1k", detail::with_time_slot(cu.R1, K::SpaceUp, K::SpaceDown, K::SpaceDown)},
                    {"R_ijk", as_dtensor(cu.R, K::SpaceUp, K::SpaceDown, K::SpaceDown, K::SpaceDown)},
                    {"P_i1(k)", detail::with_time_slot(cu.P1, K::SpaceUp, K::SpaceDown, K::VertDown)},
                    {"P_ij(k)", as_dtensor(cu.P, K::SpaceUp, K::SpaceDown, K::SpaceDown, K::VertDown)},
                    {"S_i(j)(k)", as_dtensor(cu.S, K::SpaceUp, K::SpaceDown, K::VertDown, K::VertDown)}};
  const auto& s = a.defl;
  j["deflections"] = {{"Dbar", detail::time_slotted(s.Dbar, K::VertUp)},
                      {"D", as_dtensor(s.D, K::VertUp, K::SpaceDown)},
                      {"d", as_dtensor(s.d, K::VertUp, K::VertDown)},
                      {"Dbar_metrical", detail::time_slotted(s.Dbar_m, K::VertDown)},
                      {"D_metrical", as_dtensor(s.D_m, K::VertDown, K::SpaceDown)},
                      {"d_metrical", as_dtensor(s.d_m, K::VertDown, K::VertDown)}};
  j["em_form"] = {{"F", as_dtensor(a.em.F, K::VertDown, K::SpaceDown)},
                  {"f", as_dtensor(a.em.f, K::VertDown, K::VertDown)}};
  j["ricci"] = {{"H11", ric.H11},
                {"R_i1", detail::time_slotted(ric.R_i1, K::SpaceDown)},
                {"R_ij", as_dtensor(ric.R_ij, K::SpaceDown, K::SpaceDown)},
                {"P_i(j)", as_dtensor(ric.P_i_j, K::SpaceDown, K::VertDown)},
                {"P_(i)1", detail::time_slotted(ric.P_i1, K::VertDown)},
                {"P_(i)j", as_dtensor(ric.P_ij, K::VertDown, K::SpaceDown)},
                {"S_(i)(j)", as_dtensor(ric.S_ij, K::VertDown, K::VertDown)},
                {"H", ric.H},
                {"R", ric.R},
                {"S", ric.S},
                {"Sc", ric.Sc}};
  j["einstein"] = {{"K", ein.K},
                   {"E1", {{"tt", ein.E1_tt}, {"ij", to_json_value(ein.E1_ij)}, {"vertical", to_json_value(ein.E1_vert)}}},
                   {"E2",
                    {{"R_i1", to_json_value(ein.E2_i1)},
                     {"P_(i)1", to_json_value(ein.E2_vi1)},
                     {"P_i(j)", to_json_value(ein.E2_i_j)},
                     {"P_(i)j", to_json_value(ein.E2_vij)}}},
                   {"stress_energy",
                    {{"T_11", ein.T_11},
                     {"T_ij", to_json_value(ein.T_ij)},
                     {"T_(i)(j)", to_json_value(ein.T_vert)},
                     {"T_1i", to_json_value(ein.T_1i)},
                     {"T_i1", to_json_value(ein.T_i1)},
                     {"T_(i)1", to_json_value(ein.T_vi1)},
                     {"T_1(i)", to_json_value(ein.T_1vi)},
                     {"T_i(j)", to_json_value(ein.T_i_j)},
                     {"T_(i)j", to_json_value(ein.T_vij)}}},
                   {"forced_zero", ein.forced_zero}};
  return j;
}

/// Inputs shared by every point of a sweep.
struct SweepContext {
  const ProblemConfig* cfg = nullptr;
  LagrangeSpace space;
  std::optional<LagrangeSpace> gauge_space;  // space in the gauge chart
  std::optional<ChartMap> chart;
  GeometryOptions options;
  double step = kDefaultStep;
  bool with_objects = false;
};

struct PointRecord {
  std::size_t index = 0;
  JetPoint point;
  std::map<std::string, double> residuals;
  nlohmann::json objects;
};

/// Runs every applicable suite at one point. Suites that do not apply to the
/// space are absent from `residuals`.
inline PointRecord evaluate_point(const SweepContext& ctx, std::size_t index, const JetPoint& p) {
  const auto& sp = ctx.space;
  const int n = sp.dim();
  PointRecord rec;
  rec.index = index;
  rec.point = p;
  auto& r = rec.residuals;
  const auto a = analyze(sp, p, ctx.options, ctx.step);
  const auto& g = a.geo();
  const auto& c = g.cartan;

  // metricity: g_ij/1, g_ij|k, g_ij|(1)(k)
  const auto gf = metric_field(sp);
  double met = 0.0;
  for (auto kind : {CovariantKind::Time, CovariantKind::Horizontal, CovariantKind::Vertical})
    met = std::max(met, covariant_derivative(gf, p, c, g.nl, kind, ctx.step).max_abs());
  r["metricity"] = met;
  r["h_metricity"] =
      covariant_derivative(temporal_metric_field(sp), p, c, g.nl, CovariantKind::Time, ctx.step).max_abs();

  // L and C symmetric in the lower pair; g_lq C^q_im totally symmetric.
  double sym = 0.0;
  const auto Cl = lowered(c.C, g.metric.g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        sym = std::max({sym, std::abs(c.L(i, j, k) - c.L(i, k, j)), std::abs(c.C(i, j, k) - c.C(i, k, j)),
                        std::abs(Cl(j, i, k) - Cl(i, j, k))});
      }
  r["connection_symmetry"] = sym;

  if (!ctx.options.nonlinear) {
    double nd = 0.0;
    const double Mscale = detail::max_abs(g.nl.M);
    nd = detail::rel(detail::max_abs(Eigen::VectorXd(g.nl.M + g.H * detail::y_vector(p))), Mscale);
    for (int j = 0; j < n; ++j) {
      const auto col = richardson_partial(
          [&](const JetPoint& q) {
            const auto G = canonical_spray(sp, q).Gspat;
            return std::vector<double>(G.data(), G.data() + n);
          },
          p, y_var(n, j), ctx.step);
      for (int i = 0; i < n; ++i)
        nd = std::max(nd, detail::rel(col[static_cast<std::size_t>(i)] - g.nl.N(i, j), g.nl.N(i, j)));
    }
    r["nonlinear_connection"] = nd;
  }

  {
    const Eigen::VectorXd acc = -2.0 * g.spray.Gspat - 2.0 * g.spray.Htemp;
    const auto el = euler_lagrange_lhs(sp, p, acc);
    const auto& J = g.jet;
    const Eigen::VectorXd y = detail::y_vector(p);
    const double scale = std::max({detail::max_abs(Eigen::VectorXd(J.Lyy * acc)),
                                   detail::max_abs(Eigen::VectorXd(J.Lxy.transpose() * y)), detail::max_abs(J.Lx),
                                   detail::max_abs(J.Lty), detail::max_abs(Eigen::VectorXd(J.Ly * g.H))});
    r["poisson_form"] = detail::rel(detail::max_abs(el), scale);
  }

  r["torsion_zeros"] = std::max(a.torsion.T.max_abs(), a.torsion.S.max_abs());

  {
    const auto& cu = a.curvature;
    const auto Rl = lowered(cu.R, g.metric.g);
    const auto Pl = lowered(cu.P, g.metric.g);
    const auto Sl = lowered(cu.S, g.metric.g);
    double anti = 0.0;
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            anti = std::max({anti, std::abs(cu.R(l, i, j, k) + cu.R(l, i, k, j)),
                             std::abs(cu.S(l, i, j, k) + cu.S(l, i, k, j)), std::abs(Rl(l, i, j, k) + Rl(i, l, j, k)),
                             std::abs(Pl(l, i, j, k) + Pl(i, l, j, k)), std::abs(Sl(l, i, j, k) + Sl(i, l, j, k))});
    r["antisymmetry"] = anti;
  }

  r["bianchi"] = bianchi_residuals(a).max_abs();

  {
    const auto lv = deflections_from_liouville(g);
    const auto& s = a.defl;
    r["deflection_routes"] =
        std::max({detail::max_abs(Eigen::VectorXd(lv.Dbar - s.Dbar)), detail::max_abs(Eigen::MatrixXd(lv.D - s.D)),
                  detail::max_abs(Eigen::MatrixXd(lv.d - s.d))});
    const Eigen::MatrixXd Fc = em_form_from_connection(g);
    r["em_form"] = std::max({detail::max_abs(Eigen::MatrixXd(Fc - a.em.F)),
                             detail::max_abs(Eigen::MatrixXd(a.em.F + a.em.F.transpose())), detail::max_abs(a.em.f)});
  }

  r["deflection_identities"] = deflection_identity_residuals(a).max_abs();
  r["maxwell"] = maxwell_residuals(a).max_abs();
  if (sp.family() == Family::L1 || sp.family() == Family::L2) r["maxwell_simple"] = maxwell_simple_residuals(a).max_abs();

  const auto ric = ricci_and_scalar(a.curvature, g.metric);
  r["ricci"] = std::max(std::abs(ric.H11), std::abs(ric.Sc - (ric.R + ric.S)));

  if (ctx.gauge_space && ctx.chart) {
    const auto B = local_geometry(*ctx.gauge_space, gauge_transform(p, *ctx.chart));
    const auto A = ctx.options.perturb || ctx.options.nonlinear ? local_geometry(sp, p) : g;
    r["gauge"] = detail::gauge_residual(A, B, *ctx.chart);
  }

  r["conservation"] = conservation_residuals(sp, p, ctx.options, ctx.step).max_abs();

  if (ctx.with_objects) rec.objects = point_objects(a, ric, einstein_system(ric, g.metric, ctx.cfg->K));
  return rec;
}

struct SuiteSummary {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t worst_point = 0;
  bool pass = true;

  double ratio() const { return tolerance > 0 ? max_residual / tolerance : 0.0; }
};

struct CheckReport {
  std::string command;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  std::vector<PointRecord> points;
  std::vector<SuiteSummary> suites;

  bool pass() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteSummary& s) { return s.pass; });
  }

  /// Failing suite with the largest residual-to-tolerance ratio.
  std::optional<SuiteSummary> worst() const {
    std::optional<SuiteSummary> w;
    for (const auto& s : suites)
      if (!s.pass && (!w || s.ratio() > w->ratio())) w = s;
    return w;
  }
};

inline nlohmann::json config_json(const ProblemConfig& cfg, const LagrangeSpace& sp) {
  nlohmann::json ranges = nlohmann::json::object();
  const int n = cfg.n;
  for (int v = 0; v <= 2 * n; ++v) {
    const auto [lo, hi] = cfg.ranges[static_cast<std::size_t>(v)];
    ranges[expr::variable_name(v, n)] = {lo, hi};
  }
  return {{"name", cfg.name},
          {"n", n},
          {"family", family_name(cfg.family)},
          {"lagrangian", expr::print(sp.L().ast(), n)},
          {"h11", expr::print(sp.h11().ast(), n)},
          {"K", cfg.K},
          {"ranges", ranges}};
}

inline nlohmann::json point_json(const JetPoint& p) { return {{"t", p.t}, {"x", p.x}, {"y", p.y}}; }

inline nlohmann::json record_json(const PointRecord& r) {
  nlohmann::json j{{"index", r.index}, {"point", point_json(r.point)}, {"residuals", r.residuals}};
  if (!r.objects.is_null()) j["objects"] = r.objects;
  return j;
}

inline nlohmann::json report_json(const CheckReport& rep, const ProblemConfig& cfg, const LagrangeSpace& sp) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : rep.suites)
    suites.push_back({{"name", s.name},
                      {"max_residual", s.max_residual},
                      {"tolerance", s.tolerance},
                      {"worst_point", s.worst_point},
                      {"pass", s.pass}});
  nlohmann::json points = nlohmann::json::array();
  for (const auto& r : rep.points) points.push_back(record_json(r));
  nlohmann::json summary{{"pass", rep.pass()}, {"suites", suites}};
  if (auto w = rep.worst()) summary["worst"] = w->name;
  return {{"schema_version", kReportSchemaVersion},
          {"command", rep.command},
          {"config", config_json(cfg, sp)},
          {"seed", rep.seed},
          {"tol_scale", rep.tol_scale},
          {"num_points", rep.points.size()},
          {"points", points},
          {"summary", summary}};
}

inline double suite_tolerance(const ProblemConfig& cfg, const std::string& name, double fallback, double scale) {
  auto it = cfg.tolerances.find(name);
  return (it != cfg.tolerances.end() ? it->second : fallback) * scale;
}

/// Builds the sweep context for a config; the gauge space is the same
/// Lagrangian written in the chart of `gauge_chart`.
inline SweepContext make_context(const ProblemConfig& cfg, const LagrangeSpace& sp, GeometryOptions options = {}) {
  SweepContext ctx{&cfg, sp, std::nullopt, std::nullopt, std::move(options)};
  ctx.chart = gauge_chart(cfg.n, cfg.seed);
  ctx.gauge_space = transformed(sp, *ctx.chart);
  return ctx;
}

/// Evaluates `points` on up to `workers` threads. Records come back sorted by
/// index; the first failing point (by index) rethrows its error.
inline std::vector<PointRecord> sweep(const SweepContext& ctx, const std::vector<JetPoint>& points,
                                      unsigned workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  std::vector<PointRecord> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  auto work = [&](unsigned w) {
    for (std::size_t k = w; k < points.size(); k += workers) {
      try {
        out[k] = evaluate_point(ctx, k, points[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline CheckReport summarize(std::vector<PointRecord> records, const ProblemConfig& cfg, double tol_scale) {
  CheckReport rep;
  rep.tol_scale = tol_scale;
  for (const auto& [name, tol] : default_suites()) {
    SuiteSummary s;
    s.name = name;
    s.tolerance = suite_tolerance(cfg, name, tol, tol_scale);
    bool seen = false;
    for (const auto& r : records) {
      auto it = r.residuals.find(name);
      if (it == r.residuals.end()) continue;
      const double v = std::isnan(it->second) ? std::numeric_limits<double>::infinity() : it->second;
      if (!seen || v > s.max_residual) {
        s.max_residual = v;
        s.worst_point = r.index;
      }
      seen = true;
    }
    if (!seen) continue;
    s.pass = s.max_residual <= s.tolerance;
    rep.suites.push_back(s);
  }
  rep.points = std::move(records);
  return rep;
}

/// Samples `count` points and runs every suite.
inline CheckReport run_check(const ProblemConfig& cfg, const LagrangeSpace& sp, std::size_t count, std::uint64_t seed,
                             double tol_scale = 1.0, GeometryOptions options = {}, bool with_objects = false,
                             unsigned workers = 0) {
  auto ctx = make_context(cfg, sp, std::move(options));
  ctx.with_objects = with_objects;
  auto rep = summarize(sweep(ctx, sample_points(cfg, count, seed), workers), cfg, tol_scale);
  rep.seed = seed;
  return rep;
}

}  // namespace jetlag
