#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "jetlag/error.hpp"
#include "jetlag/expr/ast.hpp"
#include "jetlag/expr/parser.hpp"

namespace jetlag {

/// A point (t, x^i, y^i) of the 1-jet bundle J^1(R, M).
struct JetPoint {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> y;

  int dim() const { return static_cast<int>(x.size()); }

  /// Coordinates in variable order (t, x1..xn, y1..yn).
  std::vector<double> coords() const {
    std::vector<double> c;
    c.reserve(1 + x.size() + y.size());
    c.push_back(t);
    c.insert(c.end(), x.begin(), x.end());
    c.insert(c.end(), y.begin(), y.end());
    return c;
  }

  static JetPoint from_coords(std::span<const double> c, int n) {
    JetPoint p;
    p.t = c[0];
    p.x.assign(c.begin() + 1, c.begin() + 1 + n);
    p.y.assign(c.begin() + 1 + n, c.begin() + 1 + 2 * n);
    return p;
  }

  bool finite() const {
    auto ok = [](double v) { return std::isfinite(v); };
    return std::isfinite(t) && std::all_of(x.begin(), x.end(), ok) && std::all_of(y.begin(), y.end(), ok);
  }
};

// Variable indices in the ordering (t, x1..xn, y1..yn), zero-based i.
inline constexpr int t_var() { return 0; }
inline constexpr int x_var(int i) { return 1 + i; }
inline constexpr int y_var(int n, int i) { return 1 + n + i; }

inline constexpr int kDefaultMaxDerivativeOrder = 5;

/// Derivative cap, honoring the JETLAG_MAX_DERIV_ORDER environment variable.
inline int max_derivative_order_from_env() {
  if (const char* s = std::getenv("JETLAG_MAX_DERIV_ORDER")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 0 && v <= 32) return static_cast<int>(v);
    throw InvalidArgument("JETLAG_MAX_DERIV_ORDER must be an integer in [0, 32]");
  }
  return kDefaultMaxDerivativeOrder;
}

/// Differentiation orders per variable, ordered (t, x1..xn, y1..yn).
struct MultiIndex {
  std::vector<int> orders;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> o) : orders(std::move(o)) {}

  /// Multi-index of the mixed partial over `vars` (repetition allowed, order irrelevant).
  static MultiIndex of(int n, std::initializer_list<int> vars) {
    MultiIndex m(std::vector<int>(static_cast<std::size_t>(2 * n + 1), 0));
    for (int v : vars) ++m.orders.at(static_cast<std::size_t>(v));
    return m;
  }

  int total() const { return std::accumulate(orders.begin(), orders.end(), 0); }
  auto operator<=>(const MultiIndex&) const = default;
};

/// Parsed, symbolically differentiable expression in (t, x, y).
///
/// Values are immutable; the derivative cache is shared between copies and
/// guarded by a mutex so concurrent readers are safe.
class ScalarField {
 public:
  ScalarField(expr::Ast root, int n, int max_order = kDefaultMaxDerivativeOrder)
      : state_(std::make_shared<State>(std::move(root), n, max_order)) {}

  const expr::Ast& ast() const { return state_->root; }
  int dimension() const { return state_->n; }
  int max_order() const { return state_->max_order; }

  double evaluate(std::span<const double> coords) const { return expr::evaluate(*state_->root, coords, state_->n); }
  double evaluate(const JetPoint& p) const {
    check_point(p);
    const auto c = p.coords();
    return evaluate(c);
  }

  /// Exact mixed partial. Requests for the same multi-index return the same AST.
  ScalarField differentiate(const MultiIndex& idx) const {
    const int n = state_->n;
    if (idx.orders.size() != static_cast<std::size_t>(2 * n + 1))
      throw InvalidArgument("multi-index length does not match dimension");
    for (int o : idx.orders)
      if (o < 0) throw InvalidArgument("negative derivative order");
    if (idx.total() > state_->max_order)
      throw OrderError("derivative order " + std::to_string(idx.total()) + " exceeds configured maximum " +
                       std::to_string(state_->max_order));
    return ScalarField(derivative_ast(idx), n, state_->max_order);
  }

  ScalarField partial(int var) const {
    MultiIndex m(std::vector<int>(static_cast<std::size_t>(2 * state_->n + 1), 0));
    ++m.orders.at(static_cast<std::size_t>(var));
    return differentiate(m);
  }

  /// AST of the mixed partial (cached).
  expr::Ast derivative_ast(const MultiIndex& idx) const {
    if (idx.total() == 0) return state_->root;
    {
      std::lock_guard lock(state_->mutex);
      if (auto it = state_->cache.find(idx); it != state_->cache.end()) return it->second;
    }
    // Differentiate the cached parent in the last variable with a nonzero order.
    MultiIndex parent = idx;
    int var = static_cast<int>(parent.orders.size()) - 1;
    while (parent.orders[static_cast<std::size_t>(var)] == 0) --var;
    --parent.orders[static_cast<std::size_t>(var)];
    expr::Ast d = expr::derivative(derivative_ast(parent), var);
    std::lock_guard lock(state_->mutex);
    auto [it, inserted] = state_->cache.emplace(idx, std::move(d));
    return it->second;
  }

  std::string to_string() const { return expr::print(state_->root, state_->n); }

  void check_point(const JetPoint& p) const {
    if (p.dim() != state_->n || static_cast<int>(p.y.size()) != state_->n)
      throw InvalidArgument("jet point dimension does not match field dimension");
  }

 private:
  struct State {
    State(expr::Ast r, int dim, int mo) : root(std::move(r)), n(dim), max_order(mo) {}
    expr::Ast root;
    int n;
    int max_order;
    std::mutex mutex;
    std::map<MultiIndex, expr::Ast> cache;
  };
  std::shared_ptr<State> state_;
};

inline ScalarField parse(std::string_view source, int n, int max_order = kDefaultMaxDerivativeOrder) {
  return ScalarField(expr::parse_ast(source, n), n, max_order);
}

/// All mixed partials of total order <= max_order at one point.
class PartialTable {
 public:
  double at(const MultiIndex& idx) const {
    auto it = values_.find(idx);
    if (it == values_.end()) throw InvalidArgument("partial not present in table");
    return it->second;
  }
  double operator()(int n, std::initializer_list<int> vars) const { return at(MultiIndex::of(n, vars)); }
  std::size_t size() const { return values_.size(); }
  const std::map<MultiIndex, double>& entries() const { return values_; }
  void set(MultiIndex idx, double v) { values_[std::move(idx)] = v; }

 private:
  std::map<MultiIndex, double> values_;
};

namespace detail {
inline void enumerate_indices(std::vector<int>& cur, std::size_t pos, int remaining,
                              std::vector<MultiIndex>& out) {
  if (pos == cur.size()) {
    out.emplace_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[pos] = k;
    enumerate_indices(cur, pos + 1, remaining - k, out);
  }
  cur[pos] = 0;
}
}  // namespace detail

/// Every multi-index over 2n+1 variables with total order <= max_order.
inline std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
  std::vector<int> cur(static_cast<std::size_t>(2 * n + 1), 0);
  std::vector<MultiIndex> out;
  detail::enumerate_indices(cur, 0, max_order, out);
  return out;
}

inline PartialTable jet_partials(const ScalarField& f, const JetPoint& p, int max_order) {
  if (max_order > f.max_order())
    throw OrderError("derivative order " + std::to_string(max_order) + " exceeds configured maximum " +
                     std::to_string(f.max_order()));
  f.check_point(p);
  const auto c = p.coords();
  PartialTable table;
  for (auto& idx : multi_indices_up_to(f.dimension(), max_order)) {
    const double v = expr::evaluate(*f.derivative_ast(idx), c, f.dimension());
    table.set(std::move(idx), v);
  }
  return table;
}

}  // namespace jetlag
