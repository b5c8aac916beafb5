#pragma once

#include <vector>

#include "jetlag/dtensor/connection.hpp"
#include "jetlag/dtensor/field.hpp"

namespace jetlag {

/// "/1" (temporal horizontal), "|p" (spatial horizontal), "|(1)(p)" (vertical).
enum class CovariantKind { Time, Horizontal, Vertical };

namespace detail {

// Connection coefficient acting on a slot of the given family: coef(a, m) for
// derivative direction p.
inline double connection_coefficient(const CartanCoefficients& c, SlotFamily fam, CovariantKind kind, int a, int m,
                                     int p) {
  switch (kind) {
    case CovariantKind::Time:
      if (fam == SlotFamily::Time) return c.H;
      if (fam == SlotFamily::Space) return c.Gt(a, m);
      return c.Gt(a, m) - (a == m ? c.H : 0.0);
    case CovariantKind::Horizontal:
      return fam == SlotFamily::Time ? 0.0 : c.L(a, m, p);
    case CovariantKind::Vertical:
      return fam == SlotFamily::Time ? 0.0 : c.C(a, m, p);
  }
  return 0.0;
}

}  // namespace detail

/// Adds the connection terms to an adapted derivative `deriv` of the tensor `d`:
/// each upper slot gains +D[..m..] coef(a, m), each lower slot -D[..m..] coef(m, b).
inline DTensorValue add_connection_terms(const DTensorValue& d, DTensorValue deriv, const CartanCoefficients& c,
                                         CovariantKind kind, int p) {
  d.require_same(deriv);
  const auto& sig = d.signature();
  const int n = d.dim();
  if (c.dim() != n) throw SignatureError("connection dimension does not match tensor");
  for (std::size_t f = 0; f < d.size(); ++f) {
    const double v = d.components()[f];
    if (v == 0.0) continue;
    auto idx = d.unravel(f);
    for (std::size_t s = 0; s < sig.size(); ++s) {
      const SlotFamily fam = family(sig[s]);
      const int e = extent(sig[s], n);
      const int m = idx[s];
      for (int a = 0; a < e; ++a) {
        const double coef = is_upper(sig[s]) ? detail::connection_coefficient(c, fam, kind, a, m, p)
                                             : -detail::connection_coefficient(c, fam, kind, m, a, p);
        if (coef == 0.0) continue;
        idx[s] = a;
        deriv.at(idx) += v * coef;
      }
      idx[s] = m;
    }
  }
  return deriv;
}

/// Stacks per-direction tensors into one tensor with an extra trailing slot.
inline DTensorValue append_slot(const std::vector<DTensorValue>& parts, SlotKind kind) {
  const auto& first = parts.front();
  auto sig = first.signature();
  sig.push_back(kind);
  DTensorValue r(sig, first.dim());
  const std::size_t e = parts.size();
  for (std::size_t f = 0; f < first.size(); ++f)
    for (std::size_t p = 0; p < e; ++p) r.components()[f * e + p] = parts[p].components()[f];
  return r;
}

/// All three covariant derivatives, each with one extra covariant slot
/// (TimeDown for /1, SpaceDown for |p, VertDown for |(1)(p)) appended last.
struct CovariantJet {
  DTensorValue slash1;
  DTensorValue bar;
  DTensorValue vbar;
};

inline CovariantJet covariant_derivatives(const AdaptedJet& j, const CartanCoefficients& c) {
  const int n = j.value.dim();
  CovariantJet out;
  out.slash1 = append_slot({add_connection_terms(j.value, j.dt, c, CovariantKind::Time, 0)}, SlotKind::TimeDown);
  std::vector<DTensorValue> h, v;
  for (int p = 0; p < n; ++p) {
    h.push_back(add_connection_terms(j.value, j.dx[static_cast<std::size_t>(p)], c, CovariantKind::Horizontal, p));
    v.push_back(add_connection_terms(j.value, j.dy[static_cast<std::size_t>(p)], c, CovariantKind::Vertical, p));
  }
  out.bar = append_slot(h, SlotKind::SpaceDown);
  out.vbar = append_slot(v, SlotKind::VertDown);
  return out;
}

/// Covariant derivative of a field at p. The connection and the nonlinear
/// connection enter only through their values at p.
inline DTensorValue covariant_derivative(const DTensorField& f, const JetPoint& p, const CartanCoefficients& c,
                                         const NonlinearConnectionValue& nl, CovariantKind kind,
                                         double step = kDefaultStep) {
  const int n = f.dim();
  const DTensorValue value = f(p);
  if (kind == CovariantKind::Time) {
    auto d = adapted_derivative(f, p, nl, {Direction::T, 0}, step);
    return append_slot({add_connection_terms(value, std::move(d), c, kind, 0)}, SlotKind::TimeDown);
  }
  std::vector<DTensorValue> parts;
  for (int q = 0; q < n; ++q) {
    auto d = adapted_derivative(f, p, nl, {kind == CovariantKind::Horizontal ? Direction::M : Direction::V, q}, step);
    parts.push_back(add_connection_terms(value, std::move(d), c, kind, q));
  }
  return append_slot(parts, kind == CovariantKind::Horizontal ? SlotKind::SpaceDown : SlotKind::VertDown);
}

}  // namespace jetlag
