#pragma once

#include <vector>

#include "jetlag/dtensor/gauge.hpp"
#include "jetlag/geometry/lagrange_space.hpp"

namespace jetlag {

/// The same Lagrange space written in the chart of `map`:
/// L~(t~, x~, y~) = L(t(t~), A^-1 (x~ - c), t~'(t(t~)) A^-1 y~),
/// h~11(t~) = h11(t(t~)) / t~'(t(t~))^2.
inline LagrangeSpace transformed(const LagrangeSpace& sp, const ChartMap& map) {
  using namespace expr;
  const int n = sp.dim();
  if (map.dim() != n) throw InvalidArgument("chart map dimension does not match the space");
  const Ast t_old = map.inverse_ast();
  const Ast dtt = substitute(map.forward_derivative_ast(), {t_old});
  std::vector<Ast> rep(static_cast<std::size_t>(2 * n + 1));
  rep[0] = t_old;
  const auto& Ai = map.A_inv();
  const auto& c = map.c();
  for (int i = 0; i < n; ++i) {
    std::vector<Ast> xs, ys;
    for (int j = 0; j < n; ++j) {
      if (Ai(i, j) == 0.0) continue;
      xs.push_back(mul(constant(Ai(i, j)), sub(variable(1 + j), constant(c(j)))));
      ys.push_back(mul(constant(Ai(i, j)), variable(1 + n + j)));
    }
    rep[static_cast<std::size_t>(1 + i)] = sum(xs);
    rep[static_cast<std::size_t>(1 + n + i)] = mul(dtt, sum(ys));
  }
  const int order = sp.L().max_order();
  ScalarField L(substitute(sp.L().ast(), rep), n, order);
  std::vector<Ast> trep(static_cast<std::size_t>(2 * n + 1));
  trep[0] = t_old;
  ScalarField h(divide(substitute(sp.h11().ast(), trep), power(dtt, 2.0)), n, sp.h11().max_order());
  return LagrangeSpace(std::move(L), std::move(h));
}

}  // namespace jetlag
