#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace jetlag {

/// Dense rank-R array with every extent equal to n, row-major.
template <std::size_t R>
class Array {
 public:
  Array() = default;
  explicit Array(int n, double fill = 0.0) : n_(n), data_(count(n), fill) {}

  template <class... I>
    requires(sizeof...(I) == R)
  double& operator()(I... idx) {
    return data_[offset(static_cast<std::size_t>(idx)...)];
  }
  template <class... I>
    requires(sizeof...(I) == R)
  double operator()(I... idx) const {
    return data_[offset(static_cast<std::size_t>(idx)...)];
  }

  int n() const { return n_; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Array& operator+=(const Array& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Array& operator-=(const Array& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Array& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend Array operator+(Array a, const Array& b) { return a += b; }
  friend Array operator-(Array a, const Array& b) { return a -= b; }
  friend Array operator*(Array a, double s) { return a *= s; }
  friend Array operator*(double s, Array a) { return a *= s; }

 private:
  static std::size_t count(int n) {
    std::size_t c = 1;
    for (std::size_t r = 0; r < R; ++r) c *= static_cast<std::size_t>(n);
    return c;
  }
  template <class... I>
  std::size_t offset(I... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(n_) + idx), ...);
    return off;
  }

  int n_ = 0;
  std::vector<double> data_;
};

using Array3 = Array<3>;
using Array4 = Array<4>;

}  // namespace jetlag
