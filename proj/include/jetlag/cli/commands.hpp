#pragma once

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "jetlag/cli/config.hpp"
#include "jetlag/cli/report.hpp"
#include "jetlag/dynamics/harmonic.hpp"

namespace jetlag {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2, kExitNonRegular = 3 };

namespace detail {

inline std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("invalid number '" + item + "' in " + what);
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw InvalidArgument("invalid number '" + item + "' in " + what);
    out.push_back(v);
  }
  return out;
}

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

// Negative control for the check suites: shifts one temporal Cartan coefficient.
inline GeometryOptions corrupted_options() {
  GeometryOptions o;
  o.perturb = [](CartanCoefficients& c) { c.Gt(0, 0) += 1e-3; };
  return o;
}

}  // namespace detail

/// Common options of the commands.
struct CliOptions {
  std::string config;
  std::string out;
  std::string point;
  std::size_t points = 100;
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;
  bool corrupt = false;
  unsigned workers = 0;
  std::string x0, y0;
  double t0 = 0.0, t1 = 1.0, step = 1e-3;
};

inline int cmd_inspect(const CliOptions& o, std::ostream& out) {
  const auto cfg = load_config(o.config);
  const auto sp = cfg.build();
  const auto c = detail::parse_list(o.point, "--point");
  if (static_cast<int>(c.size()) != 2 * cfg.n + 1)
    throw InvalidArgument("--point needs " + std::to_string(2 * cfg.n + 1) + " values (t, x1.., y1..)");
  for (std::size_t v = 0; v < c.size(); ++v)
    if (c[v] < cfg.ranges[v].first || c[v] > cfg.ranges[v].second)
      throw InvalidArgument("--point coordinate " + expr::variable_name(static_cast<int>(v), cfg.n) +
                            " is outside the configured range");
  const auto p = JetPoint::from_coords(c, cfg.n);
  auto ctx = make_context(cfg, sp, o.corrupt ? detail::corrupted_options() : GeometryOptions{});
  ctx.with_objects = true;
  const auto rec = evaluate_point(ctx, 0, p);
  nlohmann::json j{{"schema_version", kReportSchemaVersion}, {"command", "inspect"}, {"config", config_json(cfg, sp)}};
  j["point"] = point_json(p);
  j["objects"] = rec.objects;
  j["residuals"] = rec.residuals;
  detail::write_output(o.out, j.dump(2) + "\n", out);
  return kExitPass;
}

inline int cmd_check(const CliOptions& o, bool full_report, std::ostream& out) {
  const auto cfg = load_config(o.config);
  const auto sp = cfg.build();
  if (!(o.tol_scale > 0.0)) throw InvalidArgument("--tol-scale must be positive");
  const std::uint64_t seed = o.seed.value_or(cfg.seed);
  auto rep = run_check(cfg, sp, o.points, seed, o.tol_scale,
                       o.corrupt ? detail::corrupted_options() : GeometryOptions{}, full_report, o.workers);
  rep.command = full_report ? "report" : "check";
  const auto json = report_json(rep, cfg, sp).dump(2) + "\n";
  if (full_report) {
    detail::write_output(o.out, json, out);
  } else {
    if (!o.out.empty()) detail::write_output(o.out, json, out);
    out << std::left << std::setw(24) << "suite" << std::setw(14) << "max_residual" << std::setw(12) << "tolerance"
        << "status\n";
    for (const auto& s : rep.suites)
      out << std::setw(24) << s.name << std::setw(14) << detail::sci(s.max_residual) << std::setw(12)
          << detail::sci(s.tolerance) << (s.pass ? "PASS" : "FAIL") << "\n";
  }
  if (auto w = rep.worst()) {
    (full_report ? std::cerr : out) << "FAIL: worst offender " << w->name << " (max residual "
                                    << detail::sci(w->max_residual) << " at point " << w->worst_point
                                    << ", tolerance " << detail::sci(w->tolerance) << ")\n";
    return kExitFailure;
  }
  if (!full_report)
    out << "PASS: " << rep.suites.size() << " suites within tolerance at " << rep.points.size() << " points\n";
  return kExitPass;
}

inline int cmd_curve(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(o.config);
  const auto sp = cfg.build();
  const auto x0 = detail::parse_list(o.x0, "--x0");
  const auto y0 = detail::parse_list(o.y0, "--y0");
  const auto curve = integrate_harmonic(sp, x0, y0, o.t0, o.t1, o.step);
  const auto act = action(sp, curve);
  nlohmann::json j{{"action", act.value}, {"method", act.method}, {"samples", curve.size()}, {"step", curve.step}};
  if (act.warning) j["warning"] = *act.warning;
  if (o.out.empty() || o.out == "-") {
    curve.write_csv(out);
    err << j.dump() << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) throw InvalidArgument("cannot write '" + o.out + "'");
    curve.write_csv(f);
    out << j.dump() << "\n";
  }
  return kExitPass;
}

/// Entry point of the `jetlag` tool. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of relativistic rheonomic Lagrange spaces on J1(R, M)", "jetlag"};
  app.require_subcommand(1);
  CliOptions o;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "config file or built-in name")->required();
    sub->add_option("--out", o.out, "output file (default: stdout)");
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--points", o.points, "number of sample points")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "sampling seed (default: config seed)");
    sub->add_option("--tol-scale", o.tol_scale, "multiplies every tolerance");
    sub->add_option("--workers", o.workers, "worker threads (default: hardware)");
    sub->add_flag("--corrupt-connection", o.corrupt)->group("");
  };

  auto* inspect = app.add_subcommand("inspect", "dump every object at one jet point");
  add_common(inspect);
  inspect->add_option("--point", o.point, "t,x1,..,xn,y1,..,yn")->required();
  inspect->add_flag("--corrupt-connection", o.corrupt)->group("");

  auto* check = app.add_subcommand("check", "run the identity suites at sampled points");
  add_common(check);
  add_sweep(check);

  auto* report = app.add_subcommand("report", "write the full JSON report of a sweep");
  add_common(report);
  add_sweep(report);

  auto* curve = app.add_subcommand("curve", "integrate a harmonic curve and its action");
  add_common(curve);
  curve->add_option("--x0", o.x0, "initial position x1,..,xn")->required();
  curve->add_option("--y0", o.y0, "initial velocity y1,..,yn")->required();
  curve->add_option("--t0", o.t0, "start time");
  curve->add_option("--t1", o.t1, "end time");
  curve->add_option("--step", o.step, "RK4 step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  for (auto* sub : {check, report})
    if (sub->parsed() && sub->count("--seed") > 0) o.seed = seed;

  try {
    if (inspect->parsed()) return cmd_inspect(o, out);
    if (check->parsed()) return cmd_check(o, false, out);
    if (report->parsed()) return cmd_check(o, true, out);
    return cmd_curve(o, out, err);
  } catch (const NonRegularError& e) {
    err << "error: non-regular Lagrangian: " << e.what() << "\n";
    return kExitNonRegular;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace jetlag
