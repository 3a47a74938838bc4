#pragma once

// Small fixed-dimension tensor arithmetic used by the constitutive kernels.
// Dimension is a template parameter (2 for the plane model, 3 for frame
// indifference checks). Everything is value-typed and allocation free.

#include <array>
#include <cmath>
#include <ostream>

#include "faultsim/errors.hpp"

namespace fsim {

template <int D>
struct Vec {
  std::array<double, D> a{};

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }

  Vec operator+(const Vec& o) const {
    Vec r;
    for (int i = 0; i < D; ++i) r[i] = a[i] + o[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r;
    for (int i = 0; i < D; ++i) r[i] = a[i] - o[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r;
    for (int i = 0; i < D; ++i) r[i] = a[i] * s;
    return r;
  }
  double dot(const Vec& o) const {
    double s = 0;
    for (int i = 0; i < D; ++i) s += a[i] * o[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
};

template <int D>
struct Mat {
  // Row-major entries.
  std::array<double, D * D> a{};

  double& operator()(int i, int j) { return a[i * D + j]; }
  double operator()(int i, int j) const { return a[i * D + j]; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < D; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat zero() { return Mat{}; }

  Mat operator+(const Mat& o) const {
    Mat r;
    for (int k = 0; k < D * D; ++k) r.a[k] = a[k] + o.a[k];
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r;
    for (int k = 0; k < D * D; ++k) r.a[k] = a[k] - o.a[k];
    return r;
  }
  Mat operator*(double s) const {
    Mat r;
    for (int k = 0; k < D * D; ++k) r.a[k] = a[k] * s;
    return r;
  }
  Mat& operator+=(const Mat& o) {
    for (int k = 0; k < D * D; ++k) a[k] += o.a[k];
    return *this;
  }

  Mat transpose() const {
    Mat r;
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  double trace() const {
    double s = 0;
    for (int i = 0; i < D; ++i) s += (*this)(i, i);
    return s;
  }
  double norm2() const {
    double s = 0;
    for (int k = 0; k < D * D; ++k) s += a[k] * a[k];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  Vec<D> operator*(const Vec<D>& v) const {
    Vec<D> r;
    for (int i = 0; i < D; ++i) {
      double s = 0;
      for (int j = 0; j < D; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }
};

template <int D>
inline Mat<D> operator*(double s, const Mat<D>& m) {
  return m * s;
}

template <int D>
inline Mat<D> dot(const Mat<D>& A, const Mat<D>& B) {
  Mat<D> r;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      double s = 0;
      for (int k = 0; k < D; ++k) s += A(i, k) * B(k, j);
      r(i, j) = s;
    }
  return r;
}

// Full double contraction A : B.
template <int D>
inline double ddot(const Mat<D>& A, const Mat<D>& B) {
  double s = 0;
  for (int k = 0; k < D * D; ++k) s += A.a[k] * B.a[k];
  return s;
}

template <int D>
inline Mat<D> sym(const Mat<D>& A) {
  return (A + A.transpose()) * 0.5;
}

// Deviatoric part A - (tr A / D) I.
template <int D>
inline Mat<D> dev(const Mat<D>& A) {
  Mat<D> r = A;
  const double m = A.trace() / D;
  for (int i = 0; i < D; ++i) r(i, i) -= m;
  return r;
}

template <int D>
inline Mat<D> outer(const Vec<D>& u, const Vec<D>& v) {
  Mat<D> r;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) r(i, j) = u[i] * v[j];
  return r;
}

template <int D>
inline double det(const Mat<D>& M);

template <>
inline double det(const Mat<2>& M) {
  return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
}

template <>
inline double det(const Mat<3>& M) {
  return M(0, 0) * (M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) -
         M(0, 1) * (M(1, 0) * M(2, 2) - M(1, 2) * M(2, 0)) +
         M(0, 2) * (M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0));
}

// Cofactor matrix, Cof(M)_ij = d det(M) / d M_ij, so det M = M : Cof M / D
// does not hold but M Cof(M)^T = det(M) I does.
template <int D>
inline Mat<D> cof(const Mat<D>& M);

template <>
inline Mat<2> cof(const Mat<2>& M) {
  Mat<2> c;
  c(0, 0) = M(1, 1);
  c(0, 1) = -M(1, 0);
  c(1, 0) = -M(0, 1);
  c(1, 1) = M(0, 0);
  return c;
}

template <>
inline Mat<3> cof(const Mat<3>& M) {
  Mat<3> c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c(i, j) = M(i1, j1) * M(i2, j2) - M(i1, j2) * M(i2, j1);
    }
  return c;
}

template <int D>
struct DetCofInv {
  double det = 0;
  Mat<D> cof;
  Mat<D> inv;
};

// Determinant, cofactor matrix and inverse in one pass. Throws
// SingularMatrix when |det| <= 1e-14 * ||M||_F^D.
template <int D>
inline DetCofInv<D> det_cof_inv(const Mat<D>& M) {
  DetCofInv<D> r;
  r.det = det(M);
  r.cof = cof(M);
  const double scale = std::pow(M.norm(), D);
  if (std::abs(r.det) <= 1e-14 * scale || r.det == 0.0) {
    throw SingularMatrix("matrix numerically singular, |det| = " + std::to_string(std::abs(r.det)));
  }
  r.inv = r.cof.transpose() * (1.0 / r.det);
  return r;
}

template <int D>
inline Mat<D> inverse(const Mat<D>& M) {
  return det_cof_inv(M).inv;
}

// Fourth order tensor with entries T(i,j,k,l).
template <int D>
struct Tensor4 {
  std::array<double, D * D * D * D> a{};

  double& operator()(int i, int j, int k, int l) { return a[((i * D + j) * D + k) * D + l]; }
  double operator()(int i, int j, int k, int l) const { return a[((i * D + j) * D + k) * D + l]; }
};

// Derivative of the matrix inverse: d(M^{-1})_ij / dM_kl = -Minv_ik Minv_lj.
// Takes the already-inverted matrix.
template <int D>
inline Tensor4<D> d_inverse(const Mat<D>& Minv) {
  Tensor4<D> T;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k)
        for (int l = 0; l < D; ++l) T(i, j, k, l) = -Minv(i, k) * Minv(l, j);
  return T;
}

// (T : X)_ij = sum_kl T_ijkl X_kl.
template <int D>
inline Mat<D> t4_apply(const Tensor4<D>& T, const Mat<D>& X) {
  Mat<D> r;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      double s = 0;
      for (int k = 0; k < D; ++k)
        for (int l = 0; l < D; ++l) s += T(i, j, k, l) * X(k, l);
      r(i, j) = s;
    }
  return r;
}

// (A : T)_kl = sum_ij A_ij T_ijkl.
template <int D>
inline Mat<D> t4_apply_left(const Mat<D>& A, const Tensor4<D>& T) {
  Mat<D> r;
  for (int k = 0; k < D; ++k)
    for (int l = 0; l < D; ++l) {
      double s = 0;
      for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) s += A(i, j) * T(i, j, k, l);
      r(k, l) = s;
    }
  return r;
}

template <int D>
inline std::ostream& operator<<(std::ostream& os, const Mat<D>& M) {
  os << "[";
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) os << M(i, j) << (j + 1 < D ? " " : "");
    os << (i + 1 < D ? "; " : "]");
  }
  return os;
}

using Vec2 = Vec<2>;
using Mat2 = Mat<2>;

}  // namespace fsim
