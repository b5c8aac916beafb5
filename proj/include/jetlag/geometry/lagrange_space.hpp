#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetlag/error.hpp"
#include "jetlag/expr/scalar_field.hpp"

namespace jetlag {

/// Declared shape of the Lagrangian. L1 = h^11 g_ij(x) y^i y^j; L2 adds
/// U_i(t,x) y^i + F(t,x); L3 is L2 with g_ij(t,x).
enum class Family { General, L1, L2, L3 };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::General: return "general";
    case Family::L1: return "L1";
    case Family::L2: return "L2";
    case Family::L3: return "L3";
  }
  return "?";
}

struct FamilyData {
  std::vector<std::vector<ScalarField>> g;  // symmetric n x n
  std::vector<ScalarField> U;               // n components, possibly zero fields
  std::optional<ScalarField> F;
};

/// Values at one jet point of every partial of L and h11 the geometry needs.
/// Index conventions: Lxy(a, b) = d2L/dx^a dy^b, Lxyy(a, b, c) = d3L/dx^a dy^b dy^c.
struct LagrangianJet {
  double L = 0, Lt = 0;
  Eigen::VectorXd Lx, Ly, Lty;
  Eigen::MatrixXd Lxy, Lyy, Ltyy;
  std::vector<Eigen::MatrixXd> Lxyy;  // [a](b, c)
  std::vector<Eigen::MatrixXd> Lyyy;  // [a](b, c)
  double h = 1, dh = 0;
};

/// A relativistic rheonomic Lagrange space: dimension, Lagrangian L(t,x,y)
/// and temporal metric h11(t). Partials of L up to order three are compiled
/// once at construction.
class LagrangeSpace {
 public:
  LagrangeSpace(ScalarField L, ScalarField h11, Family family = Family::General, FamilyData data = {})
      : state_(std::make_shared<State>(std::move(L), std::move(h11), family, std::move(data))) {
    const int n = state_->L.dimension();
    if (state_->h11.dimension() != n) throw InvalidArgument("h11 and L have different dimensions");
    if ((state_->h11.ast()->deps & ~std::uint64_t{1}) != 0) throw InvalidArgument("h11 may depend on t only");
    if (state_->L.max_order() < 3 || state_->h11.max_order() < 1)
      throw OrderError("geometry needs derivatives of order 3; configured maximum is " +
                       std::to_string(state_->L.max_order()));
    compile();
  }

  static LagrangeSpace general(std::string_view lagrangian, std::string_view h11, int n,
                               int max_order = kDefaultMaxDerivativeOrder) {
    return LagrangeSpace(parse(lagrangian, n, max_order), parse(h11, n, max_order));
  }

  /// Builds L = h^11 g_ij y^i y^j + U_i y^i + F from component expressions.
  /// `g` is n x n (row-major strings; empty entries mean 0), `U` has 0 or n
  /// entries, `F` may be empty.
  static LagrangeSpace from_family(Family family, int n, std::string_view h11,
                                   const std::vector<std::vector<std::string>>& g, const std::vector<std::string>& U,
                                   const std::string& F, int max_order = kDefaultMaxDerivativeOrder) {
    if (family == Family::General) throw InvalidArgument("from_family needs L1, L2 or L3");
    if (static_cast<int>(g.size()) != n) throw InvalidArgument("metric must have n rows");
    auto h = parse(h11, n, max_order);
    FamilyData data;
    const std::uint64_t x_mask = ((std::uint64_t{1} << (n + 1)) - 1) & ~std::uint64_t{1};
    const std::uint64_t tx_mask = x_mask | 1;
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(g[static_cast<std::size_t>(i)].size()) != n)
        throw InvalidArgument("metric must have n columns");
      std::vector<ScalarField> row;
      for (int j = 0; j < n; ++j) {
        const auto& s = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        row.push_back(parse(s.empty() ? "0" : s, n, max_order));
      }
      data.g.push_back(std::move(row));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& gij = data.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const auto mask = family == Family::L3 ? tx_mask : x_mask;
        if ((gij.ast()->deps & ~mask) != 0)
          throw InvalidArgument(std::string("metric component g") + std::to_string(i + 1) + std::to_string(j + 1) +
                                (family == Family::L3 ? " may depend on (t, x) only" : " may depend on x only"));
      }
    if (family == Family::L1 && (!U.empty() || !F.empty())) throw InvalidArgument("L1 takes no potentials");
    if (!U.empty() && static_cast<int>(U.size()) != n) throw InvalidArgument("potential must have n components");
    for (const auto& u : U) {
      data.U.push_back(parse(u.empty() ? "0" : u, n, max_order));
      if ((data.U.back().ast()->deps & ~tx_mask) != 0) throw InvalidArgument("potential may depend on (t, x) only");
    }
    if (!F.empty()) {
      data.F = parse(F, n, max_order);
      if ((data.F->ast()->deps & ~tx_mask) != 0) throw InvalidArgument("potential function may depend on (t, x) only");
    }
    using namespace expr;
    std::vector<Ast> terms;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        terms.push_back(product({data.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].ast(),
                                 variable(n + 1 + i), variable(n + 1 + j)}));
    std::vector<Ast> all{divide(sum(terms), h.ast())};
    for (int i = 0; i < static_cast<int>(data.U.size()); ++i)
      all.push_back(mul(data.U[static_cast<std::size_t>(i)].ast(), variable(n + 1 + i)));
    if (data.F) all.push_back(data.F->ast());
    ScalarField L(sum(all), n, max_order);
    return LagrangeSpace(std::move(L), std::move(h), family, std::move(data));
  }

  int dim() const { return state_->L.dimension(); }
  const ScalarField& L() const { return state_->L; }
  const ScalarField& h11() const { return state_->h11; }
  Family family() const { return state_->family; }
  const FamilyData& family_data() const { return state_->data; }

  LagrangianJet evaluate_jet(const JetPoint& p) const {
    state_->L.check_point(p);
    if (!p.finite()) throw InvalidArgument("jet point has non-finite coordinates");
    const int n = dim();
    const auto c = p.coords();
    const auto& k = state_->compiled;
    auto ev = [&](const expr::Ast& a) { return expr::evaluate(*a, c, n); };
    LagrangianJet j;
    j.L = ev(k.L);
    j.Lt = ev(k.Lt);
    j.Lx.resize(n);
    j.Ly.resize(n);
    j.Lty.resize(n);
    j.Lxy.resize(n, n);
    j.Lyy.resize(n, n);
    j.Ltyy.resize(n, n);
    j.Lxyy.assign(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
    j.Lyyy.assign(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
    for (int a = 0; a < n; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      j.Lx(a) = ev(k.Lx[ua]);
      j.Ly(a) = ev(k.Ly[ua]);
      j.Lty(a) = ev(k.Lty[ua]);
      for (int b = 0; b < n; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        j.Lxy(a, b) = ev(k.Lxy[ua][ub]);
        j.Lyy(a, b) = b < a ? j.Lyy(b, a) : ev(k.Lyy[ua][ub]);
        j.Ltyy(a, b) = b < a ? j.Ltyy(b, a) : ev(k.Ltyy[ua][ub]);
        for (int cc = 0; cc < n; ++cc) {
          const auto uc = static_cast<std::size_t>(cc);
          j.Lxyy[ua](b, cc) = cc < b ? j.Lxyy[ua](cc, b) : ev(k.Lxyy[ua][ub][uc]);
          j.Lyyy[ua](b, cc) = ev(k.Lyyy[ua][ub][uc]);
        }
      }
    }
    j.h = ev(k.h);
    j.dh = ev(k.dh);
    return j;
  }

 private:
  struct Compiled {
    expr::Ast L, Lt, h, dh;
    std::vector<expr::Ast> Lx, Ly, Lty;
    std::vector<std::vector<expr::Ast>> Lxy, Lyy, Ltyy;
    std::vector<std::vector<std::vector<expr::Ast>>> Lxyy, Lyyy;
  };

  struct State {
    State(ScalarField l, ScalarField h, Family f, FamilyData d)
        : L(std::move(l)), h11(std::move(h)), family(f), data(std::move(d)) {}
    ScalarField L;
    ScalarField h11;
    Family family;
    FamilyData data;
    Compiled compiled;
  };

  void compile() {
    const int n = dim();
    auto& k = state_->compiled;
    const auto& L = state_->L;
    auto d = [&](std::initializer_list<int> vars) { return L.derivative_ast(MultiIndex::of(n, vars)); };
    const int t = 0;
    auto x = [](int a) { return 1 + a; };
    auto y = [n](int a) { return 1 + n + a; };
    k.L = L.ast();
    k.Lt = d({t});
    const auto un = static_cast<std::size_t>(n);
    k.Lx.resize(un);
    k.Ly.resize(un);
    k.Lty.resize(un);
    k.Lxy.assign(un, std::vector<expr::Ast>(un));
    k.Lyy = k.Lxy;
    k.Ltyy = k.Lxy;
    k.Lxyy.assign(un, k.Lxy);
    k.Lyyy = k.Lxyy;
    for (int a = 0; a < n; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      k.Lx[ua] = d({x(a)});
      k.Ly[ua] = d({y(a)});
      k.Lty[ua] = d({t, y(a)});
      for (int b = 0; b < n; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        k.Lxy[ua][ub] = d({x(a), y(b)});
        k.Lyy[ua][ub] = d({y(a), y(b)});
        k.Ltyy[ua][ub] = d({t, y(a), y(b)});
        for (int c = 0; c < n; ++c) {
          const auto uc = static_cast<std::size_t>(c);
          k.Lxyy[ua][ub][uc] = d({x(a), y(b), y(c)});
          k.Lyyy[ua][ub][uc] = d({y(a), y(b), y(c)});
        }
      }
    }
    k.h = state_->h11.ast();
    k.dh = state_->h11.derivative_ast(MultiIndex::of(n, {t}));
  }

  std::shared_ptr<State> state_;
};

}  // namespace jetlag
