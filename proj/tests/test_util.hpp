#pragma once

// Shared helpers for the test binaries: deterministic random tensors and
// central finite differences used as derivative oracles.

#include <functional>
#include <random>

#include "faultsim/tensor.hpp"

namespace tu {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

template <int D>
fsim::Mat<D> random_mat(Rng& rng, double scale = 1.0) {
  fsim::Mat<D> m;
  for (int k = 0; k < D * D; ++k) m.a[k] = uniform(rng, -scale, scale);
  return m;
}

template <int D>
fsim::Vec<D> random_vec(Rng& rng, double scale = 1.0) {
  fsim::Vec<D> v;
  for (int k = 0; k < D; ++k) v[k] = uniform(rng, -scale, scale);
  return v;
}

// Random matrix close to the identity: I + perturbation of given size.
template <int D>
fsim::Mat<D> random_near_identity(Rng& rng, double scale) {
  fsim::Mat<D> m = fsim::Mat<D>::identity();
  for (int k = 0; k < D * D; ++k) m.a[k] += uniform(rng, -scale, scale);
  return m;
}

// Random rotation: QR-free approach via Rodrigues (3d) or angle (2d).
inline fsim::Mat<2> random_rotation2(Rng& rng) {
  const double t = uniform(rng, 0, 6.283185307179586);
  fsim::Mat<2> R;
  R(0, 0) = std::cos(t);
  R(0, 1) = -std::sin(t);
  R(1, 0) = std::sin(t);
  R(1, 1) = std::cos(t);
  return R;
}

inline fsim::Mat<3> random_rotation3(Rng& rng) {
  // Rotation about a random axis by a random angle.
  fsim::Vec<3> n = random_vec<3>(rng, 1.0);
  double len = n.norm();
  if (len < 1e-8) {
    n[0] = 1;
    len = 1;
  }
  for (int i = 0; i < 3; ++i) n[i] /= len;
  const double t = uniform(rng, 0, 6.283185307179586);
  const double c = std::cos(t), s = std::sin(t);
  fsim::Mat<3> R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) R(i, j) = (i == j ? c : 0.0) + (1 - c) * n[i] * n[j];
  R(0, 1) += -s * n[2];
  R(0, 2) += s * n[1];
  R(1, 0) += s * n[2];
  R(1, 2) += -s * n[0];
  R(2, 0) += -s * n[1];
  R(2, 1) += s * n[0];
  return R;
}

// Central finite difference of a scalar function.
inline double fd_central(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double expect) {
  return std::abs(got - expect) / (1.0 + std::abs(expect));
}

}  // namespace tu
