#pragma once

// Finite-dimensional spaces on a rectangular structured grid:
//  - deformation components live in the C1 tensor-product cubic Hermite space
//    (Bogner-Fox-Schmit rectangle: value, both slopes and twist per node), so
//    the second-gradient energy |grad^2 y|^2 is conforming;
//  - plastic strain components, aging, porosity, water content, chemical
//    potential and enthalpy share one bilinear (Q1) nodal space, which makes
//    the discrete water-coupling terms cancel exactly;
//  - spaces are nested under uniform refinement (exact prolongations below).
//
// The class precomputes Gauss quadrature caches (basis values, gradients and
// Hessians at every cell quadrature point), the constant mass / stiffness /
// boundary matrices, and provides weighted assembly helpers for the
// state-dependent operators.

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "faultsim/errors.hpp"
#include "faultsim/tensor.hpp"

namespace fsim {

using SpMat = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

// Sides of the rectangle; also used as facet identifiers.
enum Side : int { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

struct DirichletSides {
  // Sides on which the plastic strain is pinned to the identity. The default
  // pins the whole boundary.
  std::array<bool, 4> on{true, true, true, true};
  bool any() const { return on[0] || on[1] || on[2] || on[3]; }
};

// Reference data of one interior quadrature point of a cell. The grid is
// uniform, so one table serves every cell; x/y are offsets from the cell
// origin and w contains the area Jacobian.
struct QuadPoint {
  double w = 0;
  double x = 0, y = 0;
  std::array<double, 4> q1{};
  std::array<Vec2, 4> q1_grad{};
  std::array<double, 16> h{};
  std::array<Vec2, 16> h_grad{};
  std::array<std::array<double, 3>, 16> h_hess{};  // (xx, yy, xy)
};

// Quadrature point on a boundary facet (values only; Robin terms carry no
// tangential derivatives).
struct EdgeQuadPoint {
  double w = 0;
  double x = 0, y = 0;  // offset from the owning cell origin
  std::array<double, 4> q1{};
  std::array<double, 16> h{};
};

struct BoundaryEdge {
  int cx = 0, cy = 0;
  int side = 0;
};

class GalerkinSpace {
 public:
  int nx = 0, ny = 0;
  double Lx = 0, Ly = 0, dx = 0, dy = 0;
  int quad_n = 4;
  DirichletSides dirichlet;

  int n_sc = 0;  // Q1 scalar DOFs
  int n_h = 0;   // Hermite DOFs per deformation component (4 per node)

  std::vector<QuadPoint> cell_qps;                    // shared by all cells
  std::array<std::vector<EdgeQuadPoint>, 4> edge_qps; // per side
  std::vector<BoundaryEdge> boundary_edges;

  // --- connectivity -------------------------------------------------------
  int node_id(int i, int j) const { return j * (nx + 1) + i; }
  int n_cells() const { return nx * ny; }

  std::array<int, 4> cell_scalar_dofs(int cx, int cy) const {
    return {node_id(cx, cy), node_id(cx + 1, cy), node_id(cx, cy + 1), node_id(cx + 1, cy + 1)};
  }
  // Hermite DOF = 4*node + type, type in {value, d/dx, d/dy, d2/dxdy}; local
  // ordering is corner-major (corners in the same order as cell_scalar_dofs).
  std::array<int, 16> cell_hermite_dofs(int cx, int cy) const {
    std::array<int, 16> out;
    const std::array<int, 4> nd = cell_scalar_dofs(cx, cy);
    for (int c = 0; c < 4; ++c)
      for (int t = 0; t < 4; ++t) out[c * 4 + t] = 4 * nd[c] + t;
    return out;
  }
  // Cell origin.
  double cell_x0(int cx) const { return cx * dx; }
  double cell_y0(int cy) const { return cy * dy; }

  // Nodes lying on the configured Dirichlet sides.
  std::vector<int> dirichlet_scalar_nodes() const;

  // --- cached constant operators -----------------------------------------
  const SpMat& scalar_mass() const { return M_sc_; }
  const SpMat& scalar_stiffness() const { return K_sc_; }   // unit coefficient
  const Vector& scalar_lumped_mass() const { return ML_sc_; }
  const SpMat& hermite_mass() const { return M_h_; }        // one component
  const SpMat& hermite_bending() const { return K2_h_; }    // grad^2 : grad^2
  const SpMat& boundary_mass_scalar() const { return B_sc_; }
  const SpMat& boundary_mass_hermite() const { return B_h_; }
  const Vector& boundary_load_scalar_unit() const { return b_sc_; }

  // --- weighted assemblies -----------------------------------------------
  // All callbacks receive (cell index, quadrature point index).

  // int (A(x) grad w_j) . grad w_i with a symmetric 2x2 coefficient.
  SpMat scalar_stiffness_weighted(const std::function<Mat2(int, int)>& A) const;
  // int c(x) w_j w_i.
  SpMat scalar_mass_weighted(const std::function<double(int, int)>& c) const;
  // Two coupled scalar fields with a pointwise symmetric 2x2 weight:
  // block (a,b) carries int B_ab w_j w_i; DOF layout [field0; field1].
  SpMat two_field_mass(const std::function<Mat2(int, int)>& B) const;
  // int f w_i over the domain.
  Vector scalar_load(const std::function<double(int, int)>& f) const;
  // int f . grad w_i over the domain.
  Vector scalar_gradient_load(const std::function<Vec2(int, int)>& f) const;

  // Boundary loads; the callback receives the physical position on the facet.
  Vector boundary_load_scalar(const std::function<double(double, double)>& f) const;
  // One Hermite component: int_Gamma f b_i.
  Vector boundary_load_hermite(const std::function<double(double, double)>& f) const;

  // --- refinement ---------------------------------------------------------
  // Exact embeddings of this (coarse) space into `fine` (nx, ny doubled).
  SpMat prolongation_scalar(const GalerkinSpace& fine) const;
  SpMat prolongation_hermite(const GalerkinSpace& fine) const;

 private:
  SpMat M_sc_, K_sc_, M_h_, K2_h_, B_sc_, B_h_;
  Vector ML_sc_, b_sc_;

  friend GalerkinSpace build_space(int, int, double, double, const DirichletSides&, int);
  void build_tables();
  void build_matrices();
};

// Factory. Throws InvalidGrid on nonpositive sizes or an unsupported
// quadrature order (supported: 2..5 Gauss points per axis).
GalerkinSpace build_space(int nx, int ny, double Lx, double Ly,
                          const DirichletSides& dirichlet = DirichletSides{},
                          int quad_n = 4);

// --- pointwise evaluation helpers ------------------------------------------

inline double eval_q1(const Vector& c, const std::array<int, 4>& dofs, const QuadPoint& qp) {
  double s = 0;
  for (int a = 0; a < 4; ++a) s += c[dofs[a]] * qp.q1[a];
  return s;
}

inline Vec2 grad_q1(const Vector& c, const std::array<int, 4>& dofs, const QuadPoint& qp) {
  Vec2 g{};
  for (int a = 0; a < 4; ++a) {
    g[0] += c[dofs[a]] * qp.q1_grad[a][0];
    g[1] += c[dofs[a]] * qp.q1_grad[a][1];
  }
  return g;
}

// Hermite component evaluation; `off` is the component offset into the
// coefficient vector (0 or n_h).
inline double eval_h(const Vector& c, int off, const std::array<int, 16>& dofs,
                     const QuadPoint& qp) {
  double s = 0;
  for (int a = 0; a < 16; ++a) s += c[off + dofs[a]] * qp.h[a];
  return s;
}

inline Vec2 grad_h(const Vector& c, int off, const std::array<int, 16>& dofs,
                   const QuadPoint& qp) {
  Vec2 g{};
  for (int a = 0; a < 16; ++a) {
    g[0] += c[off + dofs[a]] * qp.h_grad[a][0];
    g[1] += c[off + dofs[a]] * qp.h_grad[a][1];
  }
  return g;
}

inline std::array<double, 3> hess_h(const Vector& c, int off, const std::array<int, 16>& dofs,
                                    const QuadPoint& qp) {
  std::array<double, 3> h{};
  for (int a = 0; a < 16; ++a) {
    h[0] += c[off + dofs[a]] * qp.h_hess[a][0];
    h[1] += c[off + dofs[a]] * qp.h_hess[a][1];
    h[2] += c[off + dofs[a]] * qp.h_hess[a][2];
  }
  return h;
}

}  // namespace fsim
