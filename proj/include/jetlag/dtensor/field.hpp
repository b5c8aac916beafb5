#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "jetlag/dtensor/connection.hpp"
#include "jetlag/dtensor/numeric_diff.hpp"
#include "jetlag/dtensor/value.hpp"

namespace jetlag {

/// A map JetPoint -> DTensorValue with a fixed signature. Partials are taken
/// numerically unless the field supplies them analytically.
class DTensorField {
 public:
  using Eval = std::function<DTensorValue(const JetPoint&)>;
  using Partial = std::function<DTensorValue(const JetPoint&, int)>;

  DTensorField(std::vector<SlotKind> signature, int n, Eval eval, Partial analytic_partial = {})
      : signature_(std::move(signature)), n_(n), eval_(std::move(eval)), partial_(std::move(analytic_partial)) {}

  static DTensorField constant(const DTensorValue& v) {
    const int n = v.dim();
    DTensorValue zero(v.signature(), n);
    return DTensorField(
        v.signature(), n, [v](const JetPoint&) { return v; }, [zero](const JetPoint&, int) { return zero; });
  }

  const std::vector<SlotKind>& signature() const { return signature_; }
  int dim() const { return n_; }
  bool has_analytic_partials() const { return static_cast<bool>(partial_); }

  DTensorValue operator()(const JetPoint& p) const {
    DTensorValue v = eval_(p);
    if (v.signature() != signature_ || v.dim() != n_) throw SignatureError("field returned a value of the wrong signature");
    return v;
  }

  /// Partial derivative in variable `var` (0 = t, 1..n = x, n+1..2n = y).
  DTensorValue partial(const JetPoint& p, int var, double step = kDefaultStep) const {
    if (partial_) return partial_(p, var);
    auto comps = richardson_partial([this](const JetPoint& q) { return (*this)(q).components(); }, p, var, step);
    return DTensorValue(signature_, n_, std::move(comps));
  }

 private:
  std::vector<SlotKind> signature_;
  int n_;
  Eval eval_;
  Partial partial_;
};

/// Value and coordinate partials of a field at one point.
struct FieldJet {
  DTensorValue value;
  DTensorValue dt;
  std::vector<DTensorValue> dx;
  std::vector<DTensorValue> dy;
};

/// Value and adapted-basis derivatives: dt = delta/delta t, dx[k] = delta/delta x^k,
/// dy[k] = d/dy^k.
struct AdaptedJet {
  DTensorValue value;
  DTensorValue dt;
  std::vector<DTensorValue> dx;
  std::vector<DTensorValue> dy;
};

inline FieldJet field_jet(const DTensorField& f, const JetPoint& p, double step = kDefaultStep) {
  const int n = f.dim();
  FieldJet j;
  j.value = f(p);
  j.dt = f.partial(p, 0, step);
  for (int k = 0; k < n; ++k) j.dx.push_back(f.partial(p, 1 + k, step));
  for (int k = 0; k < n; ++k) j.dy.push_back(f.partial(p, 1 + n + k, step));
  return j;
}

/// delta/delta t = d/dt - M^j d/dy^j,  delta/delta x^i = d/dx^i - N^j_i d/dy^j.
inline AdaptedJet adapt(const FieldJet& j, const NonlinearConnectionValue& nl) {
  const int n = static_cast<int>(j.dx.size());
  AdaptedJet a{j.value, j.dt, j.dx, j.dy};
  for (int l = 0; l < n; ++l) {
    const auto& dyl = j.dy[static_cast<std::size_t>(l)];
    a.dt -= nl.M(l) * dyl;
    for (int k = 0; k < n; ++k) a.dx[static_cast<std::size_t>(k)] -= nl.N(l, k) * dyl;
  }
  return a;
}

enum class Direction { T, M, V };

struct AdaptedDirection {
  Direction kind = Direction::T;
  int index = 0;  // spatial/vertical index i (zero-based); ignored for T
};

inline DTensorValue adapted_derivative(const DTensorField& f, const JetPoint& p, const NonlinearConnectionValue& nl,
                                       AdaptedDirection dir, double step = kDefaultStep) {
  const int n = f.dim();
  if (dir.kind != Direction::T && (dir.index < 0 || dir.index >= n)) throw InvalidArgument("direction index out of range");
  switch (dir.kind) {
    case Direction::V: return f.partial(p, 1 + n + dir.index, step);
    case Direction::T: {
      DTensorValue r = f.partial(p, 0, step);
      for (int l = 0; l < n; ++l)
        if (nl.M(l) != 0.0) r -= nl.M(l) * f.partial(p, 1 + n + l, step);
      return r;
    }
    case Direction::M: {
      DTensorValue r = f.partial(p, 1 + dir.index, step);
      for (int l = 0; l < n; ++l)
        if (nl.N(l, dir.index) != 0.0) r -= nl.N(l, dir.index) * f.partial(p, 1 + n + l, step);
      return r;
    }
  }
  return {};
}

/// Adapted jets of several tensors computed together: one evaluation of `f`
/// per stencil point serves every tensor in the list.
template <class F>
std::vector<AdaptedJet> adapted_jets(const F& f, const JetPoint& p, const NonlinearConnectionValue& nl,
                                     double step = kDefaultStep) {
  const std::vector<DTensorValue> at_p = f(p);
  auto flatten = [](const std::vector<DTensorValue>& vs) {
    std::vector<double> out;
    for (const auto& v : vs) out.insert(out.end(), v.components().begin(), v.components().end());
    return out;
  };
  const int n = p.dim();
  std::vector<std::vector<double>> partials;
  for (int var = 0; var <= 2 * n; ++var)
    partials.push_back(richardson_partial([&](const JetPoint& q) { return flatten(f(q)); }, p, var, step));
  std::vector<AdaptedJet> out;
  std::size_t off = 0;
  for (const auto& v : at_p) {
    auto slice = [&](int var) {
      const auto& src = partials[static_cast<std::size_t>(var)];
      return DTensorValue(v.signature(), v.dim(),
                          std::vector<double>(src.begin() + static_cast<std::ptrdiff_t>(off),
                                              src.begin() + static_cast<std::ptrdiff_t>(off + v.size())));
    };
    FieldJet j;
    j.value = v;
    j.dt = slice(0);
    for (int k = 0; k < n; ++k) j.dx.push_back(slice(1 + k));
    for (int k = 0; k < n; ++k) j.dy.push_back(slice(1 + n + k));
    out.push_back(adapt(j, nl));
    off += v.size();
  }
  return out;
}

}  // namespace jetlag
