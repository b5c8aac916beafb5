#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetlag/dtensor/slot.hpp"
#include "jetlag/error.hpp"

namespace jetlag {

/// Components of a d-tensor at one point: a slot signature and a dense
/// row-major component array whose shape follows the signature.
class DTensorValue {
 public:
  DTensorValue() = default;

  DTensorValue(std::vector<SlotKind> signature, int n, double fill = 0.0)
      : signature_(std::move(signature)), n_(n) {
    if (n < 1) throw SignatureError("dimension must be positive");
    components_.assign(expected_size(), fill);
  }

  DTensorValue(std::vector<SlotKind> signature, int n, std::vector<double> components)
      : signature_(std::move(signature)), n_(n), components_(std::move(components)) {
    if (n < 1) throw SignatureError("dimension must be positive");
    if (components_.size() != expected_size())
      throw SignatureError("component count " + std::to_string(components_.size()) + " does not match signature (" +
                           std::to_string(expected_size()) + ")");
    for (double v : components_)
      if (!std::isfinite(v)) throw DomainError("non-finite component", "d-tensor value");
  }

  static DTensorValue scalar(double v, int n) { return DTensorValue({}, n, std::vector<double>{v}); }

  const std::vector<SlotKind>& signature() const { return signature_; }
  int dim() const { return n_; }
  int rank() const { return static_cast<int>(signature_.size()); }
  std::size_t size() const { return components_.size(); }

  std::vector<int> shape() const {
    std::vector<int> s;
    s.reserve(signature_.size());
    for (auto k : signature_) s.push_back(extent(k, n_));
    return s;
  }

  std::vector<double>& components() { return components_; }
  const std::vector<double>& components() const { return components_; }

  std::size_t offset(std::span<const int> idx) const {
    if (idx.size() != signature_.size()) throw SignatureError("index arity does not match rank");
    std::size_t off = 0;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const int e = extent(signature_[s], n_);
      if (idx[s] < 0 || idx[s] >= e) throw SignatureError("index out of range for slot");
      off = off * static_cast<std::size_t>(e) + static_cast<std::size_t>(idx[s]);
    }
    return off;
  }

  std::vector<int> unravel(std::size_t flat) const {
    std::vector<int> idx(signature_.size());
    for (std::size_t s = signature_.size(); s-- > 0;) {
      const auto e = static_cast<std::size_t>(extent(signature_[s], n_));
      idx[s] = static_cast<int>(flat % e);
      flat /= e;
    }
    return idx;
  }

  double& at(std::span<const int> idx) { return components_[offset(idx)]; }
  double at(std::span<const int> idx) const { return components_[offset(idx)]; }
  double& at(std::initializer_list<int> idx) { return at(std::span<const int>(idx.begin(), idx.size())); }
  double at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

  template <class... I>
  double& operator()(I... idx) {
    const int a[] = {static_cast<int>(idx)..., 0};
    return at(std::span<const int>(a, sizeof...(I)));
  }
  template <class... I>
  double operator()(I... idx) const {
    const int a[] = {static_cast<int>(idx)..., 0};
    return at(std::span<const int>(a, sizeof...(I)));
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : components_) m = std::max(m, std::abs(v));
    return m;
  }

  DTensorValue& operator+=(const DTensorValue& o) {
    require_same(o);
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
    return *this;
  }
  DTensorValue& operator-=(const DTensorValue& o) {
    require_same(o);
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
    return *this;
  }
  DTensorValue& operator*=(double s) {
    for (double& v : components_) v *= s;
    return *this;
  }
  friend DTensorValue operator+(DTensorValue a, const DTensorValue& b) { return a += b; }
  friend DTensorValue operator-(DTensorValue a, const DTensorValue& b) { return a -= b; }
  friend DTensorValue operator*(DTensorValue a, double s) { return a *= s; }
  friend DTensorValue operator*(double s, DTensorValue a) { return a *= s; }

  void require_same(const DTensorValue& o) const {
    if (o.signature_ != signature_ || o.n_ != n_) throw SignatureError("signature mismatch");
  }

 private:
  std::size_t expected_size() const {
    std::size_t c = 1;
    for (auto k : signature_) c *= static_cast<std::size_t>(extent(k, n_));
    return c;
  }

  std::vector<SlotKind> signature_;
  int n_ = 1;
  std::vector<double> components_;
};

/// Tensor product; slots of `a` first.
inline DTensorValue outer(const DTensorValue& a, const DTensorValue& b) {
  if (a.dim() != b.dim()) throw SignatureError("dimension mismatch in tensor product");
  auto sig = a.signature();
  sig.insert(sig.end(), b.signature().begin(), b.signature().end());
  DTensorValue r(std::move(sig), a.dim());
  std::size_t k = 0;
  for (double x : a.components())
    for (double y : b.components()) r.components()[k++] = x * y;
  return r;
}

/// Einstein contraction of an upper slot with a lower slot.
inline DTensorValue contract(const DTensorValue& a, int slot_up, int slot_down) {
  const auto& sig = a.signature();
  if (slot_up < 0 || slot_down < 0 || slot_up >= a.rank() || slot_down >= a.rank() || slot_up == slot_down)
    throw SignatureError("invalid contraction slots");
  const auto su = sig[static_cast<std::size_t>(slot_up)];
  const auto sd = sig[static_cast<std::size_t>(slot_down)];
  if (!is_upper(su) || is_upper(sd)) throw SignatureError("contraction needs one upper and one lower slot");
  if (extent(su, a.dim()) != extent(sd, a.dim())) throw SignatureError("contracted slots differ in extent");
  std::vector<SlotKind> rsig;
  for (int s = 0; s < a.rank(); ++s)
    if (s != slot_up && s != slot_down) rsig.push_back(sig[static_cast<std::size_t>(s)]);
  DTensorValue r(rsig, a.dim());
  for (std::size_t f = 0; f < a.size(); ++f) {
    const auto idx = a.unravel(f);
    if (idx[static_cast<std::size_t>(slot_up)] != idx[static_cast<std::size_t>(slot_down)]) continue;
    std::vector<int> ridx;
    ridx.reserve(rsig.size());
    for (int s = 0; s < a.rank(); ++s)
      if (s != slot_up && s != slot_down) ridx.push_back(idx[static_cast<std::size_t>(s)]);
    r.at(ridx) += a.components()[f];
  }
  return r;
}

/// Metric data used to raise and lower indices: spatial and vertical slots use
/// g (or its inverse), temporal slots use h11 (or h^11).
struct IndexMetric {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  double h11 = 1.0;
  double h_inv = 1.0;
};

namespace detail {
inline DTensorValue apply_on_slot(const DTensorValue& a, int slot, SlotKind new_kind, const Eigen::MatrixXd& m) {
  auto sig = a.signature();
  sig[static_cast<std::size_t>(slot)] = new_kind;
  DTensorValue r(sig, a.dim());
  for (std::size_t f = 0; f < a.size(); ++f) {
    auto idx = a.unravel(f);
    const int i = idx[static_cast<std::size_t>(slot)];
    const double v = a.components()[f];
    if (v == 0.0) continue;
    for (int k = 0; k < m.rows(); ++k) {
      idx[static_cast<std::size_t>(slot)] = k;
      r.at(idx) += m(k, i) * v;
    }
  }
  return r;
}
}  // namespace detail

inline DTensorValue lower(const DTensorValue& a, int slot, const IndexMetric& metric) {
  if (slot < 0 || slot >= a.rank()) throw SignatureError("invalid slot");
  const auto k = a.signature()[static_cast<std::size_t>(slot)];
  if (!is_upper(k)) throw SignatureError("slot is already covariant");
  const Eigen::MatrixXd m =
      family(k) == SlotFamily::Time ? Eigen::MatrixXd::Constant(1, 1, metric.h11) : metric.g;
  return detail::apply_on_slot(a, slot, lowered(k), m);
}

inline DTensorValue raise(const DTensorValue& a, int slot, const IndexMetric& metric) {
  if (slot < 0 || slot >= a.rank()) throw SignatureError("invalid slot");
  const auto k = a.signature()[static_cast<std::size_t>(slot)];
  if (is_upper(k)) throw SignatureError("slot is already contravariant");
  const Eigen::MatrixXd m =
      family(k) == SlotFamily::Time ? Eigen::MatrixXd::Constant(1, 1, metric.h_inv) : metric.g_inv;
  return detail::apply_on_slot(a, slot, raised(k), m);
}

/// Multiplies slot `slot` by a linear map: new[.., k, ..] = sum_i m(k, i) old[.., i, ..].
inline DTensorValue transform_slot(const DTensorValue& a, int slot, const Eigen::MatrixXd& m) {
  return detail::apply_on_slot(a, slot, a.signature()[static_cast<std::size_t>(slot)], m);
}

/// Kronecker delta with signature (up, down).
inline DTensorValue kronecker(SlotKind up, SlotKind down, int n) {
  DTensorValue d({up, down}, n);
  const int e = extent(up, n);
  for (int i = 0; i < e; ++i) d(i, i) = 1.0;
  return d;
}

}  // namespace jetlag
