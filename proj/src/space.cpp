#include "faultsim/space.hpp"

#include <algorithm>
#include <cmath>

namespace fsim {

namespace {

// Gauss-Legendre rules mapped to [0, 1].
struct Rule1D {
  std::vector<double> x, w;
};

Rule1D gauss01(int n) {
  Rule1D r;
  auto push = [&](double xi, double wi) {
    r.x.push_back(0.5 * (xi + 1.0));
    r.w.push_back(0.5 * wi);
  };
  switch (n) {
    case 2: {
      const double a = 1.0 / std::sqrt(3.0);
      push(-a, 1.0);
      push(a, 1.0);
      break;
    }
    case 3: {
      const double a = std::sqrt(3.0 / 5.0);
      push(-a, 5.0 / 9.0);
      push(0.0, 8.0 / 9.0);
      push(a, 5.0 / 9.0);
      break;
    }
    case 4: {
      const double a = 0.3399810435848562648026658;
      const double b = 0.8611363115940525752239465;
      const double wa = 0.6521451548625461426269361;
      const double wb = 0.3478548451374538573730639;
      push(-b, wb);
      push(-a, wa);
      push(a, wa);
      push(b, wb);
      break;
    }
    case 5: {
      const double a = 0.5384693101056830910363144;
      const double b = 0.9061798459386639927976269;
      const double w0 = 0.5688888888888888888888889;
      const double wa = 0.4786286704993664680412915;
      const double wb = 0.2369268850561890875142640;
      push(-b, wb);
      push(-a, wa);
      push(0.0, w0);
      push(a, wa);
      push(b, wb);
      break;
    }
    default:
      throw InvalidGrid("unsupported quadrature order " + std::to_string(n) +
                        " (supported: 2..5 points per axis)");
  }
  return r;
}

// Cubic Hermite shape functions on [0, 1]: value pair (V0 at 0, V1 at 1) and
// slope pair (S0, S1) with unit end slopes.
double V(int a, double t) {
  return a == 0 ? 1.0 - 3.0 * t * t + 2.0 * t * t * t : 3.0 * t * t - 2.0 * t * t * t;
}
double dV(int a, double t) { return a == 0 ? -6.0 * t + 6.0 * t * t : 6.0 * t - 6.0 * t * t; }
double ddV(int a, double t) { return a == 0 ? -6.0 + 12.0 * t : 6.0 - 12.0 * t; }
double S(int a, double t) {
  return a == 0 ? t - 2.0 * t * t + t * t * t : -t * t + t * t * t;
}
double dS(int a, double t) { return a == 0 ? 1.0 - 4.0 * t + 3.0 * t * t : -2.0 * t + 3.0 * t * t; }
double ddS(int a, double t) { return a == 0 ? -4.0 + 6.0 * t : -2.0 + 6.0 * t; }

struct H1D {
  double f, d, dd;  // value, first and second reference derivative
};

// One-dimensional factor of the local Hermite basis: corner side a (0/1),
// kind 0 = value factor, kind 1 = slope factor (carries the length scale L).
H1D hermite1d(int a, int kind, double t, double L) {
  H1D o;
  if (kind == 0) {
    o.f = V(a, t);
    o.d = dV(a, t);
    o.dd = ddV(a, t);
  } else {
    o.f = L * S(a, t);
    o.d = L * dS(a, t);
    o.dd = L * ddS(a, t);
  }
  return o;
}

// Corner coordinates in the local ordering (matches cell_scalar_dofs).
constexpr int kCornerU[4] = {0, 1, 0, 1};
constexpr int kCornerV[4] = {0, 0, 1, 1};

}  // namespace

void GalerkinSpace::build_tables() {
  const Rule1D g = gauss01(quad_n);
  cell_qps.clear();
  for (int j = 0; j < quad_n; ++j) {
    for (int i = 0; i < quad_n; ++i) {
      QuadPoint qp;
      const double u = g.x[i], v = g.x[j];
      qp.w = g.w[i] * g.w[j] * dx * dy;
      qp.x = u * dx;
      qp.y = v * dy;
      for (int c = 0; c < 4; ++c) {
        const int au = kCornerU[c], av = kCornerV[c];
        const double fu = au == 0 ? 1.0 - u : u;
        const double fv = av == 0 ? 1.0 - v : v;
        const double du = au == 0 ? -1.0 : 1.0;
        const double dv = av == 0 ? -1.0 : 1.0;
        qp.q1[c] = fu * fv;
        qp.q1_grad[c] = Vec2{{du * fv / dx, fu * dv / dy}};
        for (int t = 0; t < 4; ++t) {
          const H1D hu = hermite1d(au, t & 1, u, dx);
          const H1D hv = hermite1d(av, (t >> 1) & 1, v, dy);
          const int k = c * 4 + t;
          qp.h[k] = hu.f * hv.f;
          qp.h_grad[k] = Vec2{{hu.d * hv.f / dx, hu.f * hv.d / dy}};
          qp.h_hess[k] = {hu.dd * hv.f / (dx * dx), hu.f * hv.dd / (dy * dy),
                          hu.d * hv.d / (dx * dy)};
        }
      }
      cell_qps.push_back(qp);
    }
  }

  // Edge tables, one per side; positions are offsets inside the owning cell.
  for (int side = 0; side < 4; ++side) {
    edge_qps[side].clear();
    const double len = (side == kBottom || side == kTop) ? dx : dy;
    for (int i = 0; i < quad_n; ++i) {
      EdgeQuadPoint ep;
      const double t = g.x[i];
      ep.w = g.w[i] * len;
      double u = 0, v = 0;
      switch (side) {
        case kBottom: u = t; v = 0.0; break;
        case kRight:  u = 1.0; v = t; break;
        case kTop:    u = t; v = 1.0; break;
        case kLeft:   u = 0.0; v = t; break;
      }
      ep.x = u * dx;
      ep.y = v * dy;
      for (int c = 0; c < 4; ++c) {
        const int au = kCornerU[c], av = kCornerV[c];
        ep.q1[c] = (au == 0 ? 1.0 - u : u) * (av == 0 ? 1.0 - v : v);
        for (int t4 = 0; t4 < 4; ++t4) {
          const H1D hu = hermite1d(au, t4 & 1, u, dx);
          const H1D hv = hermite1d(av, (t4 >> 1) & 1, v, dy);
          ep.h[c * 4 + t4] = hu.f * hv.f;
        }
      }
      edge_qps[side].push_back(ep);
    }
  }

  boundary_edges.clear();
  for (int cx = 0; cx < nx; ++cx) boundary_edges.push_back({cx, 0, kBottom});
  for (int cy = 0; cy < ny; ++cy) boundary_edges.push_back({nx - 1, cy, kRight});
  for (int cx = 0; cx < nx; ++cx) boundary_edges.push_back({cx, ny - 1, kTop});
  for (int cy = 0; cy < ny; ++cy) boundary_edges.push_back({0, cy, kLeft});
}

void GalerkinSpace::build_matrices() {
  using T = Eigen::Triplet<double>;
  std::vector<T> m_sc, k_sc, m_h, k2_h;
  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      const auto sd = cell_scalar_dofs(cx, cy);
      const auto hd = cell_hermite_dofs(cx, cy);
      double Ms[4][4] = {};
      double Ks[4][4] = {};
      double Mh[16][16] = {};
      double K2[16][16] = {};
      for (const QuadPoint& qp : cell_qps) {
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            Ms[a][b] += qp.w * qp.q1[a] * qp.q1[b];
            Ks[a][b] += qp.w * (qp.q1_grad[a][0] * qp.q1_grad[b][0] +
                                qp.q1_grad[a][1] * qp.q1_grad[b][1]);
          }
        for (int a = 0; a < 16; ++a)
          for (int b = 0; b < 16; ++b) {
            Mh[a][b] += qp.w * qp.h[a] * qp.h[b];
            K2[a][b] += qp.w * (qp.h_hess[a][0] * qp.h_hess[b][0] +
                                qp.h_hess[a][1] * qp.h_hess[b][1] +
                                2.0 * qp.h_hess[a][2] * qp.h_hess[b][2]);
          }
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          m_sc.emplace_back(sd[a], sd[b], Ms[a][b]);
          k_sc.emplace_back(sd[a], sd[b], Ks[a][b]);
        }
      for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) {
          m_h.emplace_back(hd[a], hd[b], Mh[a][b]);
          k2_h.emplace_back(hd[a], hd[b], K2[a][b]);
        }
    }
  }
  M_sc_.resize(n_sc, n_sc);
  M_sc_.setFromTriplets(m_sc.begin(), m_sc.end());
  K_sc_.resize(n_sc, n_sc);
  K_sc_.setFromTriplets(k_sc.begin(), k_sc.end());
  M_h_.resize(n_h, n_h);
  M_h_.setFromTriplets(m_h.begin(), m_h.end());
  K2_h_.resize(n_h, n_h);
  K2_h_.setFromTriplets(k2_h.begin(), k2_h.end());

  ML_sc_ = Vector::Zero(n_sc);
  for (int k = 0; k < M_sc_.outerSize(); ++k)
    for (SpMat::InnerIterator it(M_sc_, k); it; ++it) ML_sc_[it.row()] += it.value();

  std::vector<T> b_sc, b_h;
  b_sc_ = Vector::Zero(n_sc);
  for (const BoundaryEdge& e : boundary_edges) {
    const auto sd = cell_scalar_dofs(e.cx, e.cy);
    const auto hd = cell_hermite_dofs(e.cx, e.cy);
    for (const EdgeQuadPoint& ep : edge_qps[e.side]) {
      for (int a = 0; a < 4; ++a) {
        b_sc_[sd[a]] += ep.w * ep.q1[a];
        for (int b = 0; b < 4; ++b) b_sc.emplace_back(sd[a], sd[b], ep.w * ep.q1[a] * ep.q1[b]);
      }
      for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) b_h.emplace_back(hd[a], hd[b], ep.w * ep.h[a] * ep.h[b]);
    }
  }
  B_sc_.resize(n_sc, n_sc);
  B_sc_.setFromTriplets(b_sc.begin(), b_sc.end());
  B_h_.resize(n_h, n_h);
  B_h_.setFromTriplets(b_h.begin(), b_h.end());
}

GalerkinSpace build_space(int nx, int ny, double Lx, double Ly, const DirichletSides& dirichlet,
                          int quad_n) {
  if (nx < 1 || ny < 1) {
    throw InvalidGrid("grid must have at least one cell per direction, got " +
                      std::to_string(nx) + "x" + std::to_string(ny));
  }
  if (!(Lx > 0.0) || !(Ly > 0.0)) {
    throw InvalidGrid("domain side lengths must be positive");
  }
  GalerkinSpace sp;
  sp.nx = nx;
  sp.ny = ny;
  sp.Lx = Lx;
  sp.Ly = Ly;
  sp.dx = Lx / nx;
  sp.dy = Ly / ny;
  sp.quad_n = quad_n;
  sp.dirichlet = dirichlet;
  sp.n_sc = (nx + 1) * (ny + 1);
  sp.n_h = 4 * sp.n_sc;
  sp.build_tables();
  sp.build_matrices();
  return sp;
}

std::vector<int> GalerkinSpace::dirichlet_scalar_nodes() const {
  std::vector<char> mark(n_sc, 0);
  if (dirichlet.on[kBottom])
    for (int i = 0; i <= nx; ++i) mark[node_id(i, 0)] = 1;
  if (dirichlet.on[kTop])
    for (int i = 0; i <= nx; ++i) mark[node_id(i, ny)] = 1;
  if (dirichlet.on[kLeft])
    for (int j = 0; j <= ny; ++j) mark[node_id(0, j)] = 1;
  if (dirichlet.on[kRight])
    for (int j = 0; j <= ny; ++j) mark[node_id(nx, j)] = 1;
  std::vector<int> out;
  for (int k = 0; k < n_sc; ++k)
    if (mark[k]) out.push_back(k);
  return out;
}

SpMat GalerkinSpace::scalar_stiffness_weighted(const std::function<Mat2(int, int)>& A) const {
  std::vector<Eigen::Triplet<double>> tr;
  for (int cy = 0; cy < ny; ++cy)
    for (int cx = 0; cx < nx; ++cx) {
      const int cell = cy * nx + cx;
      const auto sd = cell_scalar_dofs(cx, cy);
      double loc[4][4] = {};
      for (int q = 0; q < int(cell_qps.size()); ++q) {
        const QuadPoint& qp = cell_qps[q];
        const Mat2 Aq = A(cell, q);
        for (int b = 0; b < 4; ++b) {
          const Vec2 Ag = Aq * qp.q1_grad[b];
          for (int a = 0; a < 4; ++a) {
            loc[a][b] += qp.w * (qp.q1_grad[a][0] * Ag[0] + qp.q1_grad[a][1] * Ag[1]);
          }
        }
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) tr.emplace_back(sd[a], sd[b], loc[a][b]);
    }
  SpMat M(n_sc, n_sc);
  M.setFromTriplets(tr.begin(), tr.end());
  return M;
}

SpMat GalerkinSpace::scalar_mass_weighted(const std::function<double(int, int)>& c) const {
  std::vector<Eigen::Triplet<double>> tr;
  for (int cy = 0; cy < ny; ++cy)
    for (int cx = 0; cx < nx; ++cx) {
      const int cell = cy * nx + cx;
      const auto sd = cell_scalar_dofs(cx, cy);
      double loc[4][4] = {};
      for (int q = 0; q < int(cell_qps.size()); ++q) {
        const QuadPoint& qp = cell_qps[q];
        const double cq = c(cell, q) * qp.w;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) loc[a][b] += cq * qp.q1[a] * qp.q1[b];
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) tr.emplace_back(sd[a], sd[b], loc[a][b]);
    }
  SpMat M(n_sc, n_sc);
  M.setFromTriplets(tr.begin(), tr.end());
  return M;
}

SpMat GalerkinSpace::two_field_mass(const std::function<Mat2(int, int)>& B) const {
  std::vector<Eigen::Triplet<double>> tr;
  for (int cy = 0; cy < ny; ++cy)
    for (int cx = 0; cx < nx; ++cx) {
      const int cell = cy * nx + cx;
      const auto sd = cell_scalar_dofs(cx, cy);
      double loc[2][2][4][4] = {};
      for (int q = 0; q < int(cell_qps.size()); ++q) {
        const QuadPoint& qp = cell_qps[q];
        const Mat2 Bq = B(cell, q);
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) {
            const double c = Bq(r, s) * qp.w;
            for (int a = 0; a < 4; ++a)
              for (int b = 0; b < 4; ++b) loc[r][s][a][b] += c * qp.q1[a] * qp.q1[b];
          }
      }
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              tr.emplace_back(r * n_sc + sd[a], s * n_sc + sd[b], loc[r][s][a][b]);
    }
  SpMat M(2 * n_sc, 2 * n_sc);
  M.setFromTriplets(tr.begin(), tr.end());
  return M;
}

Vector GalerkinSpace::scalar_load(const std::function<double(int, int)>& f) const {
  Vector out = Vector::Zero(n_sc);
  for (int cy = 0; cy < ny; ++cy)
    for (int cx = 0; cx < nx; ++cx) {
      const int cell = cy * nx + cx;
      const auto sd = cell_scalar_dofs(cx, cy);
      for (int q = 0; q < int(cell_qps.size()); ++q) {
        const QuadPoint& qp = cell_qps[q];
        const double fq = f(cell, q) * qp.w;
        for (int a = 0; a < 4; ++a) out[sd[a]] += fq * qp.q1[a];
      }
    }
  return out;
}

Vector GalerkinSpace::scalar_gradient_load(const std::function<Vec2(int, int)>& f) const {
  Vector out = Vector::Zero(n_sc);
  for (int cy = 0; cy < ny; ++cy)
    for (int cx = 0; cx < nx; ++cx) {
      const int cell = cy * nx + cx;
      const auto sd = cell_scalar_dofs(cx, cy);
      for (int q = 0; q < int(cell_qps.size()); ++q) {
        const QuadPoint& qp = cell_qps[q];
        const Vec2 fq = f(cell, q);
        for (int a = 0; a < 4; ++a) {
          out[sd[a]] += qp.w * (fq[0] * qp.q1_grad[a][0] + fq[1] * qp.q1_grad[a][1]);
        }
      }
    }
  return out;
}

Vector GalerkinSpace::boundary_load_scalar(const std::function<double(double, double)>& f) const {
  Vector out = Vector::Zero(n_sc);
  for (const BoundaryEdge& e : boundary_edges) {
    const auto sd = cell_scalar_dofs(e.cx, e.cy);
    for (const EdgeQuadPoint& ep : edge_qps[e.side]) {
      const double fv = f(cell_x0(e.cx) + ep.x, cell_y0(e.cy) + ep.y) * ep.w;
      for (int a = 0; a < 4; ++a) out[sd[a]] += fv * ep.q1[a];
    }
  }
  return out;
}

Vector GalerkinSpace::boundary_load_hermite(const std::function<double(double, double)>& f) const {
  Vector out = Vector::Zero(n_h);
  for (const BoundaryEdge& e : boundary_edges) {
    const auto hd = cell_hermite_dofs(e.cx, e.cy);
    for (const EdgeQuadPoint& ep : edge_qps[e.side]) {
      const double fv = f(cell_x0(e.cx) + ep.x, cell_y0(e.cy) + ep.y) * ep.w;
      for (int a = 0; a < 16; ++a) out[hd[a]] += fv * ep.h[a];
    }
  }
  return out;
}

SpMat GalerkinSpace::prolongation_scalar(const GalerkinSpace& fine) const {
  if (fine.nx != 2 * nx || fine.ny != 2 * ny) {
    throw InvalidGrid("scalar prolongation requires the fine grid to double both directions");
  }
  std::vector<Eigen::Triplet<double>> tr;
  for (int j = 0; j <= fine.ny; ++j)
    for (int i = 0; i <= fine.nx; ++i) {
      const int row = fine.node_id(i, j);
      const int ci = std::min(i / 2, nx - 1);
      const int cj = std::min(j / 2, ny - 1);
      const double u = 0.5 * (i - 2 * ci);
      const double v = 0.5 * (j - 2 * cj);
      const auto sd = cell_scalar_dofs(ci, cj);
      for (int c = 0; c < 4; ++c) {
        const double fu = kCornerU[c] == 0 ? 1.0 - u : u;
        const double fv = kCornerV[c] == 0 ? 1.0 - v : v;
        const double val = fu * fv;
        if (val != 0.0) tr.emplace_back(row, sd[c], val);
      }
    }
  SpMat P(fine.n_sc, n_sc);
  P.setFromTriplets(tr.begin(), tr.end());
  return P;
}

SpMat GalerkinSpace::prolongation_hermite(const GalerkinSpace& fine) const {
  if (fine.nx != 2 * nx || fine.ny != 2 * ny) {
    throw InvalidGrid("Hermite prolongation requires the fine grid to double both directions");
  }
  std::vector<Eigen::Triplet<double>> tr;
  for (int j = 0; j <= fine.ny; ++j)
    for (int i = 0; i <= fine.nx; ++i) {
      const int ci = std::min(i / 2, nx - 1);
      const int cj = std::min(j / 2, ny - 1);
      const double u = 0.5 * (i - 2 * ci);
      const double v = 0.5 * (j - 2 * cj);
      const auto hd = cell_hermite_dofs(ci, cj);
      // Coarse basis data at the fine node: value, d/dx, d/dy, d2/dxdy.
      for (int c = 0; c < 4; ++c) {
        const int au = kCornerU[c], av = kCornerV[c];
        for (int t = 0; t < 4; ++t) {
          const H1D hu = hermite1d(au, t & 1, u, dx);
          const H1D hv = hermite1d(av, (t >> 1) & 1, v, dy);
          const double vals[4] = {hu.f * hv.f, hu.d * hv.f / dx, hu.f * hv.d / dy,
                                  hu.d * hv.d / (dx * dy)};
          const int col = hd[c * 4 + t];
          for (int ft = 0; ft < 4; ++ft) {
            if (vals[ft] != 0.0) tr.emplace_back(4 * fine.node_id(i, j) + ft, col, vals[ft]);
          }
        }
      }
    }
  SpMat P(fine.n_h, n_h);
  P.setFromTriplets(tr.begin(), tr.end());
  return P;
}

}  // namespace fsim
