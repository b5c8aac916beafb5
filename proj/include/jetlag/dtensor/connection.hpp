#pragma once

#include <Eigen/Dense>

#include "jetlag/dtensor/array.hpp"
#include "jetlag/dtensor/value.hpp"

namespace jetlag {

/// Temporal and spatial spray components H^(i)_(1)1 and G^(i)_(1)1.
struct SprayValue {
  Eigen::VectorXd Htemp;
  Eigen::VectorXd Gspat;
};

/// Nonlinear connection at a point: M(i) = M^(i)_(1)1, N(i, j) = N^(i)_(1)j.
struct NonlinearConnectionValue {
  Eigen::VectorXd M;
  Eigen::MatrixXd N;

  static NonlinearConnectionValue zero(int n) {
    return {Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
  }
};

/// The four effective blocks of an h-normal connection:
/// H = H^1_11, Gt(k, j) = G^k_j1, L(i, j, k) = L^i_jk, C(i, j, k) = C^i_j(k).
struct CartanCoefficients {
  double H = 0.0;
  Eigen::MatrixXd Gt;
  Array3 L;
  Array3 C;

  int dim() const { return static_cast<int>(Gt.rows()); }

  static CartanCoefficients zero(int n) { return {0.0, Eigen::MatrixXd::Zero(n, n), Array3(n), Array3(n)}; }

  /// Derived vertical /1 block G^(k)(1)_(1)(i)1 = G^k_i1 - delta^k_i H.
  Eigen::MatrixXd vertical_time_block() const {
    return Gt - H * Eigen::MatrixXd::Identity(Gt.rows(), Gt.cols());
  }
};

inline DTensorValue as_dtensor(const Eigen::VectorXd& v, SlotKind k) {
  DTensorValue r({k}, static_cast<int>(v.size()));
  for (int i = 0; i < v.size(); ++i) r(i) = v(i);
  return r;
}

inline DTensorValue as_dtensor(const Eigen::MatrixXd& m, SlotKind a, SlotKind b) {
  DTensorValue r({a, b}, static_cast<int>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline DTensorValue as_dtensor(const Array3& t, SlotKind a, SlotKind b, SlotKind c) {
  return DTensorValue({a, b, c}, t.n(), t.data());
}

inline DTensorValue as_dtensor(const Array4& t, SlotKind a, SlotKind b, SlotKind c, SlotKind d) {
  return DTensorValue({a, b, c, d}, t.n(), t.data());
}

inline Eigen::VectorXd vector_of(const DTensorValue& v) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v.components()[i];
  return r;
}

inline Eigen::MatrixXd matrix_of(const DTensorValue& v) {
  const auto s = v.shape();
  if (s.size() != 2) throw SignatureError("expected a rank-2 value");
  Eigen::MatrixXd m(s[0], s[1]);
  for (int i = 0; i < s[0]; ++i)
    for (int j = 0; j < s[1]; ++j) m(i, j) = v(i, j);
  return m;
}

inline Array3 array3_of(const DTensorValue& v) {
  Array3 a(v.dim());
  if (v.size() != a.data().size()) throw SignatureError("expected an n x n x n value");
  a.data() = v.components();
  return a;
}

}  // namespace jetlag
