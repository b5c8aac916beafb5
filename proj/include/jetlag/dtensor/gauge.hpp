#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "jetlag/dtensor/connection.hpp"
#include "jetlag/dtensor/value.hpp"
#include "jetlag/expr/scalar_field.hpp"

namespace jetlag {

/// Change of jet coordinates t~ = t~(t), x~ = A x + c, y~ = A y / (dt~/dt).
/// The temporal map is symbolic; its inverse t(t~) is supplied as an
/// expression in the variable t (standing for t~).
class ChartMap {
 public:
  ChartMap(std::string_view forward, std::string_view inverse, Eigen::MatrixXd A, Eigen::VectorXd c)
      : n_(static_cast<int>(A.rows())),
        forward_(expr::parse_ast(forward, static_cast<int>(A.rows()))),
        inverse_(expr::parse_ast(inverse, static_cast<int>(A.rows()))),
        A_(std::move(A)),
        c_(std::move(c)) {
    if (A_.rows() != A_.cols() || c_.size() != A_.rows()) throw InvalidArgument("affine map has inconsistent shape");
    if ((forward_->deps & ~std::uint64_t{1}) != 0 || (inverse_->deps & ~std::uint64_t{1}) != 0)
      throw InvalidArgument("temporal map may depend on t only");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A_);
    if (!lu.isInvertible()) throw InvalidArgument("spatial map matrix is singular");
    A_inv_ = lu.inverse();
    d1_ = expr::derivative(forward_, 0);
    d2_ = expr::derivative(d1_, 0);
  }

  static ChartMap identity(int n) {
    return ChartMap("t", "t", Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n));
  }

  int dim() const { return n_; }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& A_inv() const { return A_inv_; }
  const Eigen::VectorXd& c() const { return c_; }
  const expr::Ast& forward_ast() const { return forward_; }
  const expr::Ast& inverse_ast() const { return inverse_; }
  const expr::Ast& forward_derivative_ast() const { return d1_; }

  double t_tilde(double t) const { return eval(forward_, t); }
  double t_of(double tt) const { return eval(inverse_, tt); }
  /// dt~/dt; throws when it vanishes.
  double dtt(double t) const {
    const double v = eval(d1_, t);
    if (v == 0.0 || !std::isfinite(v)) throw InvalidArgument("dt~/dt vanishes at t = " + std::to_string(t));
    return v;
  }
  double d2tt(double t) const { return eval(d2_, t); }

 private:
  double eval(const expr::Ast& a, double t) const {
    std::vector<double> c(static_cast<std::size_t>(2 * n_ + 1), 0.0);
    c[0] = t;
    return expr::evaluate(*a, c, n_);
  }

  int n_;
  expr::Ast forward_, inverse_, d1_, d2_;
  Eigen::MatrixXd A_, A_inv_;
  Eigen::VectorXd c_;
};

namespace detail {
inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}
inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }
}  // namespace detail

inline JetPoint gauge_transform(const JetPoint& p, const ChartMap& map) {
  const double tp = map.dtt(p.t);
  JetPoint q;
  q.t = map.t_tilde(p.t);
  q.x = detail::to_std(map.A() * detail::to_eigen(p.x) + map.c());
  q.y = detail::to_std(map.A() * detail::to_eigen(p.y) / tp);
  return q;
}

/// Spray components in the new chart, including the inhomogeneous term
/// dy~/dt = -A y t~''/t~'^2 of the temporal law.
inline SprayValue gauge_transform(const SprayValue& s, const JetPoint& p, const ChartMap& map) {
  const double tp = map.dtt(p.t);
  const double tpp = map.d2tt(p.t);
  const Eigen::VectorXd y = detail::to_eigen(p.y);
  const Eigen::VectorXd dyt = -map.A() * y * tpp / (tp * tp);
  SprayValue r;
  r.Htemp = (map.A() * s.Htemp / (tp * tp)) - 0.5 * dyt / tp;
  r.Gspat = map.A() * s.Gspat / (tp * tp);
  return r;
}

inline NonlinearConnectionValue gauge_transform(const NonlinearConnectionValue& nl, const JetPoint& p,
                                                const ChartMap& map) {
  const double tp = map.dtt(p.t);
  const double tpp = map.d2tt(p.t);
  const Eigen::VectorXd y = detail::to_eigen(p.y);
  const Eigen::VectorXd dyt = -map.A() * y * tpp / (tp * tp);
  NonlinearConnectionValue r;
  r.M = (map.A() * nl.M / tp - dyt) / tp;
  r.N = map.A() * nl.N * map.A_inv() / tp;
  return r;
}

/// Tensorial transformation slot by slot: TimeUp x t~', TimeDown x 1/t~',
/// SpaceUp x A, SpaceDown x A^-T, VertUp x A/t~', VertDown x A^-T t~'.
inline DTensorValue gauge_transform(const DTensorValue& v, const JetPoint& p, const ChartMap& map) {
  const double tp = map.dtt(p.t);
  const Eigen::MatrixXd Ainv_t = map.A_inv().transpose();
  DTensorValue r = v;
  for (int s = 0; s < v.rank(); ++s) {
    switch (v.signature()[static_cast<std::size_t>(s)]) {
      case SlotKind::TimeUp: r *= tp; break;
      case SlotKind::TimeDown: r *= 1.0 / tp; break;
      case SlotKind::SpaceUp: r = transform_slot(r, s, map.A()); break;
      case SlotKind::SpaceDown: r = transform_slot(r, s, Ainv_t); break;
      case SlotKind::VertUp: r = transform_slot(r, s, map.A() / tp); break;
      case SlotKind::VertDown: r = transform_slot(r, s, Ainv_t * tp); break;
    }
  }
  return r;
}

/// Connection blocks in the new chart (affine spatial part, so L is tensorial).
inline CartanCoefficients gauge_transform(const CartanCoefficients& c, const JetPoint& p, const ChartMap& map) {
  const double tp = map.dtt(p.t);
  const double tpp = map.d2tt(p.t);
  CartanCoefficients r;
  r.H = (c.H - tpp / tp) / tp;
  r.Gt = matrix_of(gauge_transform(as_dtensor(c.Gt, SlotKind::SpaceUp, SlotKind::SpaceDown), p, map)) / tp;
  r.L = array3_of(
      gauge_transform(as_dtensor(c.L, SlotKind::SpaceUp, SlotKind::SpaceDown, SlotKind::SpaceDown), p, map));
  r.C = array3_of(
      gauge_transform(as_dtensor(c.C, SlotKind::SpaceUp, SlotKind::SpaceDown, SlotKind::VertDown), p, map));
  return r;
}

}  // namespace jetlag
