#include "faultsim/material.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fsim {

namespace {

[[noreturn]] void fail(const std::string& clause, const std::string& what) {
  throw ValidationError("(" + clause + "): " + what);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

// The easing lives inside [0,1] so that cl(0) = 0 and cl(1) = 1 hold exactly:
// the derivative ramps linearly on [0, w] and [1-w, 1] and equals 1/(1-w) in
// between, which integrates to exactly 1 across the unit interval.
double clamp01_c1(double x, double w) {
  if (w <= 0.0) return std::min(1.0, std::max(0.0, x));
  const double s = 1.0 / (1.0 - w);
  if (x <= 0.0) return 0.0;
  if (x < w) return s * x * x / (2.0 * w);
  if (x <= 1.0 - w) return s * (x - 0.5 * w);
  if (x < 1.0) {
    const double t = 1.0 - x;
    return 1.0 - s * t * t / (2.0 * w);
  }
  return 1.0;
}

double d_clamp01_c1(double x, double w) {
  if (w <= 0.0) return (x > 0.0 && x < 1.0) ? 1.0 : 0.0;
  const double s = 1.0 / (1.0 - w);
  if (x <= 0.0) return 0.0;
  if (x < w) return s * x / w;
  if (x <= 1.0 - w) return s;
  if (x < 1.0) return s * (1.0 - x) / w;
  return 0.0;
}

double smooth_floor(double a, double floor_value, double w) {
  if (w <= 0.0) return std::max(a, floor_value);
  if (a >= floor_value + w) return a;
  if (a <= floor_value - w) return floor_value;
  const double t = a - floor_value + w;
  return floor_value + t * t / (4.0 * w);
}

double d_smooth_floor(double a, double floor_value, double w) {
  if (w <= 0.0) return a > floor_value ? 1.0 : 0.0;
  if (a >= floor_value + w) return 1.0;
  if (a <= floor_value - w) return 0.0;
  return (a - floor_value + w) / (2.0 * w);
}

double sigma_of(double phi, const MaterialParams& mp) {
  const double p = clamp01_c1(phi, mp.clamp_width);
  switch (mp.sigma_shape) {
    case SigmaShape::exponential:
      return std::exp(-p / mp.sigma_slope);
    case SigmaShape::linear:
      return 1.0 - 0.5 * p / mp.sigma_slope;
    case SigmaShape::one:
      return 1.0;
  }
  return 1.0;
}

double d_sigma_of(double phi, const MaterialParams& mp) {
  const double dp = d_clamp01_c1(phi, mp.clamp_width);
  switch (mp.sigma_shape) {
    case SigmaShape::exponential:
      return -sigma_of(phi, mp) * dp / mp.sigma_slope;
    case SigmaShape::linear:
      return -0.5 * dp / mp.sigma_slope;
    case SigmaShape::one:
      return 0.0;
  }
  return 0.0;
}

ParamEval eval_params(double alpha, double phi, const MaterialParams& mp) {
  ParamEval pe{};
  const double w = mp.clamp_width;
  const double a = clamp01_c1(alpha, w);
  const double da = d_clamp01_c1(alpha, w);
  const double p = clamp01_c1(phi, w);
  const double dp = d_clamp01_c1(phi, w);

  // Floored porosity degradation factor and its phi-derivative.
  const double raw = 1.0 - p / mp.phi_cr;
  const double blend = 0.5 * mp.degradation_floor;
  const double pf = smooth_floor(raw, mp.degradation_floor, blend);
  const double dpf = d_smooth_floor(raw, mp.degradation_floor, blend) * (-dp / mp.phi_cr);

  pe.lambda = (mp.lambda0 - a * mp.lambda_r) * pf;
  pe.dlambda_da = -mp.lambda_r * da * pf;
  pe.dlambda_dp = (mp.lambda0 - a * mp.lambda_r) * dpf;

  pe.G = (mp.G0 - a * mp.G_r) * pf;
  pe.dG_da = -mp.G_r * da * pf;
  pe.dG_dp = (mp.G0 - a * mp.G_r) * dpf;

  pe.gamma = a * mp.gamma_r * pf;
  pe.dgamma_da = mp.gamma_r * da * pf;
  pe.dgamma_dp = a * mp.gamma_r * dpf;

  const double m_core = a * mp.m0 * pf;
  pe.m = mp.pure_biot ? m_core : mp.m_min_eff() + m_core;
  pe.dm_da = mp.m0 * da * pf;
  pe.dm_dp = a * mp.m0 * dpf;

  pe.chi = 0.0;
  pe.dchi_da = 0.0;
  double apow = 1.0;
  for (std::size_t k = 0; k < mp.chi_coeffs.size(); ++k) {
    pe.chi += mp.chi_coeffs[k] * apow;
    if (k + 1 < mp.chi_coeffs.size()) {
      pe.dchi_da += (k + 1) * mp.chi_coeffs[k + 1] * apow * da;
    }
    apow *= a;
  }

  pe.sigma = sigma_of(phi, mp);
  pe.dsigma_dp = d_sigma_of(phi, mp);
  return pe;
}

double varpi(double a, const MaterialParams& mp) {
  if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
  const double quad = (a - 1.0) * (a - 1.0) / (2.0 * mp.delta_pi);
  if (a < 1.0) return mp.delta_pi * std::pow(a, -mp.q_grad) + quad;
  return mp.delta_pi + quad;
}

double d_varpi(double a, const MaterialParams& mp) {
  if (!(a > 0.0)) {
    throw NonpositivePlasticDeterminant("varpi derivative at det P = " + std::to_string(a));
  }
  const double dquad = (a - 1.0) / mp.delta_pi;
  if (a < 1.0) return -mp.q_grad * mp.delta_pi * std::pow(a, -mp.q_grad - 1.0) + dquad;
  return dquad;
}

double yosida(double zeta, double eps) {
  if (zeta < 0.0) return zeta / eps;
  if (zeta > 1.0) return (zeta - 1.0) / eps;
  return 0.0;
}

double yosida_energy(double zeta, double eps) {
  if (zeta < 0.0) return zeta * zeta / (2.0 * eps);
  if (zeta > 1.0) return (zeta - 1.0) * (zeta - 1.0) / (2.0 * eps);
  return 0.0;
}

double regularize_boundary_temperature(double theta_b, double eps) {
  if (theta_b < 0.0) {
    throw NonpositiveTemperature("bath temperature " + std::to_string(theta_b) + " < 0");
  }
  return theta_b / (1.0 + eps * theta_b);
}

double regularize_initial_temperature(double theta0, double eps) {
  if (theta0 < 0.0) {
    throw NonpositiveTemperature("initial temperature " + std::to_string(theta0) + " < 0");
  }
  return theta0 / (1.0 + eps * theta0);
}

DamageDissipation dissipation_D(double alpha, double phi, double phi0, double dalpha, double dphi,
                                const MaterialParams& mp) {
  DamageDissipation out;
  const double n = mp.n_exp;
  const double dinv = std::pow(mp.d_phi, -1.0 / (n + 1.0));
  const double ap = std::abs(dphi);
  if (ap > 0.0) {
    out.value += (n + 1.0) / (n + 2.0) * dinv * std::pow(ap, (n + 2.0) / (n + 1.0));
    out.force_phi = dinv * std::pow(ap, 1.0 / (n + 1.0)) * (dphi > 0 ? 1.0 : -1.0);
  }
  if (dalpha >= 0.0) {
    out.value += dalpha * dalpha / (2.0 * mp.c0);
    out.force_alpha = dalpha / mp.c0;
  } else {
    const double wgt = std::exp(-alpha / mp.c2 - mp.b_heal * (phi0 - phi));
    out.value += wgt * dalpha * dalpha / (2.0 * mp.c1);
    out.force_alpha = wgt * dalpha / mp.c1;
  }
  return out;
}

FlowRates invert_flow_rules(double A_alpha, double A_phi, double alpha, double phi, double phi0,
                            const MaterialParams& mp) {
  FlowRates out;
  if (A_alpha >= 0.0) {
    out.dalpha = mp.c0 * A_alpha;
  } else {
    out.dalpha = mp.c1 * std::exp(alpha / mp.c2) * std::exp(mp.b_heal * (phi0 - phi)) * A_alpha;
  }
  out.dphi = mp.d_phi * std::pow(std::abs(A_phi), mp.n_exp) * A_phi;
  return out;
}

Mat2 pullback_mobility(const Mat2& P, double alpha, double phi, const MaterialParams& mp) {
  (void)alpha;  // the reference mobility tensor is damage independent here
  return pullback_structural(P, sigma_of(phi, mp), mp.mobility0);
}

Mat2 pullback_conductivity(const Mat2& P, double phi, double zeta, double vartheta,
                           const MaterialParams& mp) {
  (void)zeta;
  (void)vartheta;  // the reference conductivity tensor is state independent here
  return pullback_structural(P, sigma_of(phi, mp), mp.conductivity0);
}

double heat_capacity(double theta, const MaterialParams& mp) {
  if (theta < 0.0) {
    throw NonpositiveTemperature("temperature " + std::to_string(theta) + " < 0");
  }
  if (mp.cv_model == CvModel::constant) return mp.c_v0;
  return 2.0 - 1.0 / (1.0 + theta);  // bounded test model, c_v in [1, 2)
}

double enthalpy_of_temperature(double theta, const MaterialParams& mp) {
  if (theta < 0.0) {
    throw NonpositiveTemperature("temperature " + std::to_string(theta) + " < 0");
  }
  if (mp.cv_model == CvModel::constant) return mp.c_v0 * theta;
  return 2.0 * theta - std::log1p(theta);
}

double temperature_of_enthalpy(double vartheta, const MaterialParams& mp) {
  if (vartheta <= 0.0) return 0.0;
  if (mp.cv_model == CvModel::constant) return vartheta / mp.c_v0;
  // Newton on C_v(theta) - vartheta with c_v in [1, 2): globally convergent.
  double th = 0.5 * vartheta;
  for (int it = 0; it < 80; ++it) {
    const double f = 2.0 * th - std::log1p(th) - vartheta;
    const double df = 2.0 - 1.0 / (1.0 + th);
    const double step = f / df;
    th -= step;
    if (th < 0.0) th = 0.0;
    if (std::abs(step) <= 1e-15 * (1.0 + th)) break;
  }
  return th;
}

double entropy_density(double theta, const MaterialParams& mp) {
  const double floor_theta = 1e-12 * mp.theta_ref;
  const double th = std::max(theta, floor_theta);
  if (mp.cv_model == CvModel::constant) return mp.c_v0 * std::log(th / mp.theta_ref);
  // Composite Simpson quadrature of c_v(s)/s on [theta_ref, th] in log space:
  // substituting s = e^u gives the integrand c_v(e^u), smooth and bounded.
  const double u0 = std::log(mp.theta_ref), u1 = std::log(th);
  const int nseg = 256;
  const double h = (u1 - u0) / nseg;
  double acc = 0.0;
  for (int i = 0; i <= nseg; ++i) {
    const double cv = heat_capacity(std::exp(u0 + i * h), mp);
    const double wq = (i == 0 || i == nseg) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += wq * cv;
  }
  return acc * h / 3.0;
}

ThermalPack thermal_pack_from_theta(double theta, const MaterialParams& mp) {
  ThermalPack tp;
  tp.theta = theta;
  tp.vartheta = enthalpy_of_temperature(theta, mp);
  tp.c_v = heat_capacity(theta, mp);
  tp.eta = entropy_density(theta, mp);
  tp.cond_scale = 1.0 / tp.c_v;
  return tp;
}

ThermalPack thermal_pack_from_enthalpy(double vartheta, const MaterialParams& mp) {
  ThermalPack tp;
  tp.theta = temperature_of_enthalpy(vartheta, mp);
  tp.vartheta = vartheta;
  tp.c_v = heat_capacity(tp.theta, mp);
  tp.eta = entropy_density(tp.theta, mp);
  tp.cond_scale = 1.0 / tp.c_v;
  return tp;
}

HeatProduction heat_production(const PointState<2>& ps, const Mat2& Pdot, double dalpha,
                               double dphi, double zeta_dot, const Vec2& grad_mu,
                               const MaterialParams& mp, double eps) {
  HeatProduction out;
  const double dP = det(ps.P);
  if (!(dP > 0.0)) {
    throw NonpositivePlasticDeterminant("det P = " + std::to_string(dP) + " <= 0");
  }
  const Mat2 Pinv = cof(ps.P).transpose() * (1.0 / dP);
  const Mat2 rho = dot(Pdot, Pinv);

  const auto pl = dissipation_R(rho, mp);
  const auto dm = dissipation_D(ps.alpha, ps.phi, ps.phi0, dalpha, dphi, mp);
  const Mat2 M_eff = pullback_mobility(ps.P, ps.alpha, ps.phi, mp);
  const double darcy = grad_mu.dot(M_eff * grad_mu);

  out.r = ddot(pl.force, rho) + dm.force_alpha * dalpha + dm.force_phi * dphi +
          mp.tau_rel * zeta_dot * zeta_dot + darcy;
  const double denom =
      1.0 + eps * (rho.norm2() + dalpha * dalpha + dphi * dphi + grad_mu.norm2());
  out.r_eps = out.r / denom;
  return out;
}

void MaterialParams::validate(int d) const {
  // (3.1a) plastic-gradient exponent above the dimension.
  if (!(q_grad > d)) {
    fail("3.1a", "q > d violated (q = " + fmt(q_grad) + ", d = " + fmt(d) + ")");
  }
  // (3.1i) volumetric barrier coercivity.
  if (!(delta_pi > 0.0)) fail("3.1i", "delta_pi > 0 violated (delta_pi = " + fmt(delta_pi) + ")");
  if (!(p_growth > d)) {
    fail("3.1i", "p > d violated (p = " + fmt(p_growth) + ", d = " + fmt(d) + ")");
  }
  const double qmin = p_growth * d / (p_growth - d);
  if (!(q_grad >= qmin - 1e-12)) {
    fail("3.1i", "q >= p*d/(p-d) violated (q = " + fmt(q_grad) + ", p = " + fmt(p_growth) +
                     ", d = " + fmt(d) + " requires q >= " + fmt(qmin) + ")");
  }
  // (3.1d) moduli admissibility on the (alpha, phi) box [0,1]^2.
  if (!(phi_cr > 0.0) || phi_cr > 1.0) {
    fail("3.1d", "phi_cr in (0,1] violated (phi_cr = " + fmt(phi_cr) + ")");
  }
  if (!(degradation_floor > 0.0) || degradation_floor >= 1.0) {
    fail("3.1d", "degradation_floor in (0,1) violated (value = " + fmt(degradation_floor) + ")");
  }
  if (!pure_biot && !(m_min_eff() > 0.0)) {
    fail("3.1d", "m_min > 0 violated (m_min = " + fmt(m_min_eff()) + ")");
  }
  if (pure_biot && m0 < 0.0) fail("3.1d", "m0 >= 0 violated (m0 = " + fmt(m0) + ")");
  const int ng = 41;
  for (int ia = 0; ia < ng; ++ia) {
    for (int ip = 0; ip < ng; ++ip) {
      const double a = double(ia) / (ng - 1), p = double(ip) / (ng - 1);
      const ParamEval pe = eval_params(a, p, *this);
      if (!(pe.G > 0.0)) {
        fail("3.1d", "G > 0 violated at alpha=" + fmt(a) + ", phi=" + fmt(p) +
                         " (G = " + fmt(pe.G) + ")");
      }
      if (!(pe.lambda >= -(2.0 / d) * pe.G)) {
        fail("3.1d", "lambda >= -(2/d) G violated at alpha=" + fmt(a) + ", phi=" + fmt(p) +
                         " (lambda = " + fmt(pe.lambda) + ", G = " + fmt(pe.G) + ")");
      }
      if (!pure_biot && !(pe.m >= m_min_eff() - 1e-12)) {
        fail("3.1d", "m >= m_min violated at alpha=" + fmt(a) + ", phi=" + fmt(p));
      }
      // (3.1f) positive shrinkage stretch.
      if (!(pe.sigma > 0.0)) {
        fail("3.1f", "sigma(phi) > 0 violated at phi=" + fmt(p) + " (sigma = " + fmt(pe.sigma) + ")");
      }
    }
  }
  // (3.1g) transport tensors symmetric positive definite.
  auto check_spd = [&](const Mat2& M, const char* name) {
    const double scale = M.norm() + 1e-300;
    if (std::abs(M(0, 1) - M(1, 0)) > 1e-12 * scale) {
      fail("3.1g", std::string(name) + " tensor not symmetric");
    }
    if (!(M(0, 0) > 0.0) || !(det(M) > 0.0)) {
      fail("3.1g", std::string(name) + " tensor not positive definite");
    }
  };
  check_spd(mobility0, "mobility");
  check_spd(conductivity0, "conductivity");
  // (3.1h) density, gradient weights and regularizers.
  if (!(rho > 0.0)) fail("3.1h", "rho > 0 violated (rho = " + fmt(rho) + ")");
  if (kappa0 < 0 || kappa1 < 0 || kappa2 < 0 || kappa3 < 0 || kappa4 < 0) {
    fail("3.1h", "kappa0..kappa4 >= 0 violated");
  }
  if (eps_reg < 0.0) fail("3.1h", "eps_reg >= 0 violated (eps_reg = " + fmt(eps_reg) + ")");
  if (!(clamp_width > 0.0) || clamp_width > 0.25) {
    fail("3.1h", "clamp_width in (0, 0.25] violated (value = " + fmt(clamp_width) + ")");
  }
  if (!(tau_rel > 0.0)) fail("3.1h", "tau_rel > 0 violated (tau_rel = " + fmt(tau_rel) + ")");
  if (!(sigma_slope > 0.0)) fail("3.1h", "sigma_slope > 0 violated");
  // (3.1j) plastic dissipation growth.
  if (!(nu_pl > 0.0)) fail("3.1j", "nu_pl > 0 violated (nu_pl = " + fmt(nu_pl) + ")");
  if (sigma_yield < 0.0) fail("3.1j", "sigma_yield >= 0 violated");
  if (sigma_yield > 0.0 && !(perzyna_eta > 0.0)) {
    fail("3.1j", "perzyna_eta > 0 required with sigma_yield > 0");
  }
  // (3.1k) aging rate monotonicity.
  if (!(c0 > 0.0)) fail("3.1k", "c0 > 0 violated (c0 = " + fmt(c0) + ")");
  if (!(c1 > 0.0)) fail("3.1k", "c1 > 0 violated (c1 = " + fmt(c1) + ")");
  if (!(c2 > 0.0)) fail("3.1k", "c2 > 0 violated (c2 = " + fmt(c2) + ")");
  if (b_heal < 0.0) fail("3.1k", "b >= 0 violated (b = " + fmt(b_heal) + ")");
  // (3.1l) porosity rate monotonicity.
  if (!(d_phi > 0.0)) fail("3.1l", "d_phi > 0 violated (d_phi = " + fmt(d_phi) + ")");
  if (n_exp < 0.0) fail("3.1l", "n >= 0 violated (n = " + fmt(n_exp) + ")");
  // (3.1m) heat capacity.
  if (!(c_v0 > 0.0)) fail("3.1m", "c_v0 > 0 violated (c_v0 = " + fmt(c_v0) + ")");
  if (!(theta_ref > 0.0)) fail("3.1m", "theta_ref > 0 violated");
  // (3.1c) boundary coefficients.
  if (N_bnd < 0.0 || M_bnd < 0.0 || K_bnd < 0.0) {
    fail("3.1c", "boundary coefficients N, M_bnd, K_bnd >= 0 violated");
  }
  for (double c : chi_coeffs) {
    if (!std::isfinite(c)) fail("3.1d", "chi coefficients must be finite");
  }
}

}  // namespace fsim
