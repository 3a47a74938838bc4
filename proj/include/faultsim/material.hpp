#pragma once

// Point-wise constitutive model of the thermo-poro-elastoplastic solid:
// stored energy with damage/porosity degraded moduli, its driving forces,
// dissipation potentials with invertible flow rules, reference pull-backs of
// transport tensors, and the enthalpy-based thermal closure.
//
// All kernels are dimension-templated (2 used by the solver, 3 exercised by
// the frame indifference checks) and allocation free.

#include <cmath>
#include <limits>
#include <vector>

#include "faultsim/errors.hpp"
#include "faultsim/tensor.hpp"

namespace fsim {

enum class SigmaShape { exponential, linear, one };
enum class CvModel { constant, bounded_test };

struct MaterialParams {
  // Mass density of the reference configuration.
  double rho = 1.0;

  // Moduli of the damage/porosity ansatz X(alpha, phi) = (X0 - cl(alpha) X_r) * pf(phi)
  // with cl the C1 clamp onto [0,1] and pf the floored porosity degradation
  // factor. gamma couples volumetric and shear response and vanishes in the
  // undamaged state: gamma = cl(alpha) gamma_r pf(phi).
  double lambda0 = 4.0, lambda_r = 2.0;
  double G0 = 2.0, G_r = 1.0;
  double gamma_r = 0.5;

  // Water-strain coupling modulus m(alpha, phi) = m_min + cl(alpha) m0 pf(phi)
  // and coupling slope beta. m_min < 0 requests the default floor 0.01 * m0.
  // pure_biot drops the convexity floor entirely (m = cl(alpha) m0 pf(phi)).
  double m0 = 1.0;
  double m_min = -1.0;
  bool pure_biot = false;
  double beta = 0.5;

  // Porosity degradation pf(phi) = smooth-max(1 - cl(phi)/phi_cr, degradation_floor).
  double phi_cr = 0.4;
  double degradation_floor = 0.01;

  // Half-width of the C1 clamp easing at 0 and 1.
  double clamp_width = 0.01;

  // Strain-invariant regularization weight in the compensated energy terms.
  double eps_reg = 0.1;

  // Porosity-induced shrinkage stretch sigma(phi).
  SigmaShape sigma_shape = SigmaShape::exponential;
  double sigma_slope = 1.0;

  // Gradient regularization weights: kappa0 |nabla^2 y|^2, kappa1 |nabla P|^q,
  // kappa2 |nabla alpha|^2, kappa3 |nabla phi|^2, kappa4 |nabla zeta|^2.
  double kappa0 = 1e-3, kappa1 = 1e-3, kappa2 = 1e-3, kappa3 = 1e-3, kappa4 = 1e-3;
  double q_grad = 4.0;
  // Coercivity growth exponent entering the admissibility bound (3.1i).
  double p_growth = 4.0;

  // Plastic volumetric barrier varpi(det P) = delta_pi / min(1, det P)^q
  //                                         + (det P - 1)^2 / (2 delta_pi).
  double delta_pi = 0.1;

  // Aging energy chi(alpha) = sum_k chi_coeffs[k] * cl(alpha)^k.
  std::vector<double> chi_coeffs{0.0, 0.0, 0.1};

  // Plastic dissipation R(rho) = nu_pl/2 |rho|^2 (+ optional smoothed yield
  // term sigma_yield * (sqrt(|dev rho|^2 + perzyna_eta^2) - perzyna_eta)).
  double nu_pl = 1.0;
  double sigma_yield = 0.0;
  double perzyna_eta = 1e-3;

  // Aging rate coefficients: dalpha = c0 A on the damaging branch (A >= 0) and
  // dalpha = c1 exp(alpha/c2) exp(b_heal (phi0 - phi)) A on the healing branch.
  double c0 = 0.5, c1 = 0.25, c2 = 1.0, b_heal = 1.0;
  // Reference strain-invariant-ratio threshold carried as model data; the
  // energetic flow rule above does not consume it.
  double xi0 = 0.3;

  // Porosity rate dphi = d_phi |A|^n_exp A.
  double n_exp = 1.0;
  double d_phi = 0.1;

  // Viscosity of the water content relaxation.
  double tau_rel = 0.1;

  // Reference hydraulic mobility and heat conductivity tensors.
  Mat2 mobility0{{1e-12, 0.0, 0.0, 1e-12}};
  Mat2 conductivity0{{1.0, 0.0, 0.0, 1.0}};

  // Heat capacity c_v(theta); the solver requires the constant model, the
  // bounded test model exists for kernel-level round trips.
  double c_v0 = 1.0;
  double theta_ref = 1.0;
  CvModel cv_model = CvModel::constant;

  // Boundary response coefficients: elastic spring N_bnd, water permeance
  // M_bnd, heat transfer K_bnd.
  double N_bnd = 10.0, M_bnd = 1.0, K_bnd = 1.0;

  double m_min_eff() const { return m_min < 0 ? 0.01 * m0 : m_min; }

  // Throws ValidationError naming the violated admissibility clause
  // (3.1a)-(3.1m), see README section 3.1.
  void validate(int d = 2) const;
};

// State of one material point as consumed by the constitutive kernels.
template <int D>
struct PointState {
  Mat<D> F = Mat<D>::identity();  // deformation gradient
  Mat<D> P = Mat<D>::identity();  // plastic strain
  double alpha = 0;               // aging
  double phi = 0;                 // porosity
  double zeta = 0;                // water content
  double vartheta = 0;            // rescaled temperature C_v(theta)
  double phi0 = 0;                // initial porosity (healing memory)
};

// C1 clamp of x onto [0,1] with quadratic easing of half-width w at both ends.
double clamp01_c1(double x, double w);
double d_clamp01_c1(double x, double w);

// C1 smoothed max(a, floor) with blend half-width w.
double smooth_floor(double a, double floor_value, double w);
double d_smooth_floor(double a, double floor_value, double w);

// Shrinkage stretch sigma(phi) and its phi-derivative.
double sigma_of(double phi, const MaterialParams& mp);
double d_sigma_of(double phi, const MaterialParams& mp);

// Damage/porosity dependent coefficients and their partial derivatives.
struct ParamEval {
  double lambda, G, gamma, m, chi;
  double dlambda_da, dG_da, dgamma_da, dm_da, dchi_da;
  double dlambda_dp, dG_dp, dgamma_dp, dm_dp;
  double sigma, dsigma_dp;
};
ParamEval eval_params(double alpha, double phi, const MaterialParams& mp);

// Plastic volumetric barrier. varpi is +infinity for a <= 0; d_varpi throws.
double varpi(double a, const MaterialParams& mp);
double d_varpi(double a, const MaterialParams& mp);

// Yosida penalization of the [0,1] water content constraint and its primitive.
double yosida(double zeta, double eps);
double yosida_energy(double zeta, double eps);

// Regularized bath/initial temperature theta / (1 + eps theta).
double regularize_boundary_temperature(double theta_b, double eps);
double regularize_initial_temperature(double theta0, double eps);

// ---------------------------------------------------------------------------
// Elastic invariants and stored energy.

template <int D>
struct Invariants {
  double I1 = 0, I2 = 0;
  Mat<D> Eel;
};

// Green-Lagrange invariants of an elastic strain tensor.
template <int D>
inline Invariants<D> invariants_of(const Mat<D>& Fel) {
  Invariants<D> out;
  const Mat<D> C = dot(Fel.transpose(), Fel);
  out.Eel = (C - Mat<D>::identity()) * 0.5;
  out.I1 = out.Eel.trace();
  out.I2 = ddot(out.Eel, out.Eel);
  return out;
}

template <int D>
struct ElasticSplit {
  Mat<D> Fel, Pinv;
  double detP = 0;
};

// Multiplicative split F_el = sigma * F * P^{-1}.
// Throws NonpositivePlasticDeterminant when det P <= 0.
template <int D>
inline ElasticSplit<D> elastic_split(const Mat<D>& F, const Mat<D>& P, double sigma) {
  ElasticSplit<D> out;
  const double dP = det(P);
  if (!(dP > 0.0)) {
    throw NonpositivePlasticDeterminant("det P = " + std::to_string(dP) + " <= 0");
  }
  out.detP = dP;
  out.Pinv = cof(P).transpose() * (1.0 / dP);
  out.Fel = dot(F, out.Pinv) * sigma;
  return out;
}

namespace detail {

// Shared scalar parts of the stored energy given the invariants.
struct EnergyParts {
  double w4, w1, s, B;
  double core;  // (lambda/2 I1^2 + G I2 + m/2 B^2) w4 - gamma I1 s w1
};

inline EnergyParts energy_parts(double I1, double I2, double zeta, double phi, const ParamEval& pe,
                                double eps_reg, double beta) {
  EnergyParts ep;
  const double u = 1.0 + eps_reg * I2;
  ep.w4 = std::pow(u, -0.25);
  ep.w1 = 1.0 / u;
  ep.s = std::sqrt(I2);
  ep.B = beta * I1 - zeta + phi;
  ep.core = (0.5 * pe.lambda * I1 * I1 + pe.G * I2 + 0.5 * pe.m * ep.B * ep.B) * ep.w4 -
            pe.gamma * I1 * ep.s * ep.w1;
  return ep;
}

}  // namespace detail

// Stored mechanical energy density (gradient terms excluded).
template <int D>
inline double stored_energy(const Mat<D>& F, const Mat<D>& P, double alpha, double phi, double zeta,
                            const MaterialParams& mp) {
  const ParamEval pe = eval_params(alpha, phi, mp);
  const ElasticSplit<D> es = elastic_split(F, P, pe.sigma);
  const Invariants<D> inv = invariants_of(es.Fel);
  const auto ep = detail::energy_parts(inv.I1, inv.I2, zeta, phi, pe, mp.eps_reg, mp.beta);
  return ep.core + varpi(es.detP, mp) + pe.chi;
}

template <int D>
inline double stored_energy(const PointState<D>& ps, const MaterialParams& mp) {
  return stored_energy(ps.F, ps.P, ps.alpha, ps.phi, ps.zeta, mp);
}

// First variations of the stored energy: conjugate stresses and the local
// (gradient-free) driving forces of the internal variables.
template <int D>
struct DrivingForces {
  double value = 0;
  double I1 = 0, I2 = 0, detP = 0, sigma = 0;
  Mat<D> Fel, Eel;
  Mat<D> dFel;            // dPhi/dF_el at frozen P, alpha, phi, zeta
  Mat<D> Sigma_el_local;  // stress conjugate to nabla y: sigma * dFel * P^{-T}
  Mat<D> Sigma_in_local;  // driving force conjugate to P (gradient term excluded)
  double p_age_local = 0, p_eff_local = 0, p_por_local = 0;
};

template <int D>
inline DrivingForces<D> d_stored_energy(const Mat<D>& F, const Mat<D>& P, double alpha, double phi,
                                        double zeta, const MaterialParams& mp) {
  DrivingForces<D> out;
  const ParamEval pe = eval_params(alpha, phi, mp);
  const ElasticSplit<D> es = elastic_split(F, P, pe.sigma);
  const Invariants<D> inv = invariants_of(es.Fel);
  const auto ep = detail::energy_parts(inv.I1, inv.I2, zeta, phi, pe, mp.eps_reg, mp.beta);

  out.I1 = inv.I1;
  out.I2 = inv.I2;
  out.detP = es.detP;
  out.sigma = pe.sigma;
  out.Fel = es.Fel;
  out.Eel = inv.Eel;
  out.value = ep.core + varpi(es.detP, mp) + pe.chi;

  const double u = 1.0 + mp.eps_reg * inv.I2;
  const double w4p = -0.25 * mp.eps_reg * std::pow(u, -1.25);
  const double w1p = -mp.eps_reg * ep.w1 * ep.w1;

  // dPhi/dI1 and the regular part of dPhi/dI2; the gamma term carries a
  // 1/(2 s) factor that must multiply E directly to stay finite as I2 -> 0.
  const double dI1 = (pe.lambda * inv.I1 + pe.m * mp.beta * ep.B) * ep.w4 - pe.gamma * ep.s * ep.w1;
  double dI2 =
      (0.5 * pe.lambda * inv.I1 * inv.I1 + pe.G * inv.I2 + 0.5 * pe.m * ep.B * ep.B) * w4p +
      pe.G * ep.w4 - pe.gamma * inv.I1 * ep.s * w1p;
  if (ep.s > 1e-150) dI2 -= pe.gamma * inv.I1 * ep.w1 / (2.0 * ep.s);

  const Mat<D> dE = Mat<D>::identity() * dI1 + inv.Eel * (2.0 * dI2);
  out.dFel = dot(es.Fel, dE);

  const Mat<D> PinvT = es.Pinv.transpose();
  out.Sigma_el_local = dot(out.dFel, PinvT) * pe.sigma;

  // Chain rule through P^{-1} gives -sigma P^{-T} (F^T dFel) P^{-T}; the
  // volumetric barrier contributes via the cofactor of P.
  const Mat<D> FtdF = dot(F.transpose(), out.dFel);
  out.Sigma_in_local = dot(PinvT, dot(FtdF, PinvT)) * (-pe.sigma) + cof(P) * d_varpi(es.detP, mp);

  // Damage and porosity driving forces.
  out.p_age_local = (0.5 * pe.dlambda_da * inv.I1 * inv.I1 + pe.dG_da * inv.I2 +
                     0.5 * pe.dm_da * ep.B * ep.B) *
                        ep.w4 -
                    pe.dgamma_da * inv.I1 * ep.s * ep.w1 + pe.dchi_da;

  const double dPhi_dphi = (0.5 * pe.dlambda_dp * inv.I1 * inv.I1 + pe.dG_dp * inv.I2 +
                            0.5 * pe.dm_dp * ep.B * ep.B + pe.m * ep.B) *
                               ep.w4 -
                           pe.dgamma_dp * inv.I1 * ep.s * ep.w1;
  // F_el depends on phi through sigma: dPhi/dsigma = dFel : (F P^{-1}).
  const double dPhi_dsigma = ddot(out.dFel, dot(F, es.Pinv));
  out.p_eff_local = pe.dsigma_dp * dPhi_dsigma + dPhi_dphi;

  out.p_por_local = -pe.m * ep.B * ep.w4;
  return out;
}

template <int D>
inline DrivingForces<D> d_stored_energy(const PointState<D>& ps, const MaterialParams& mp) {
  return d_stored_energy(ps.F, ps.P, ps.alpha, ps.phi, ps.zeta, mp);
}

// ---------------------------------------------------------------------------
// Dissipation potentials and flow rules.

template <int D>
struct PlasticDissipation {
  double value = 0;
  Mat<D> force;  // dR/drho
};

// Plastic rate potential R(rho), rho = dP P^{-1}.
template <int D>
inline PlasticDissipation<D> dissipation_R(const Mat<D>& rho, const MaterialParams& mp) {
  PlasticDissipation<D> out;
  out.value = 0.5 * mp.nu_pl * rho.norm2();
  out.force = rho * mp.nu_pl;
  if (mp.sigma_yield > 0.0) {
    const Mat<D> dv = dev(rho);
    const double root = std::sqrt(dv.norm2() + mp.perzyna_eta * mp.perzyna_eta);
    out.value += mp.sigma_yield * (root - mp.perzyna_eta);
    out.force += dv * (mp.sigma_yield / root);
  }
  return out;
}

struct DamageDissipation {
  double value = 0;
  double force_alpha = 0, force_phi = 0;
};

// Rate potential of aging and porosity changes. phi0 is the initial porosity
// at the material point (the healing branch weight remembers it).
DamageDissipation dissipation_D(double alpha, double phi, double phi0, double dalpha, double dphi,
                                const MaterialParams& mp);

struct FlowRates {
  double dalpha = 0, dphi = 0;
};

// Closed-form inversion of the damage/porosity flow rules: given the driving
// forces A = -(assembled energy gradients), return the rates. Inverse of the
// force map of dissipation_D.
FlowRates invert_flow_rules(double A_alpha, double A_phi, double alpha, double phi, double phi0,
                            const MaterialParams& mp);

// ---------------------------------------------------------------------------
// Transport tensor pull-backs.

// Reference form of an actual-configuration transport tensor through a
// deformation gradient: (Cof F) M0 (Cof F)^T / det F.
template <int D>
inline Mat<D> pullback_by_deformation(const Mat<D>& F, const Mat<D>& M0) {
  const double dF = det(F);
  if (!(dF > 0.0)) {
    throw NonpositivePlasticDeterminant("det F = " + std::to_string(dF) + " <= 0 in pull-back");
  }
  const Mat<D> C = cof(F);
  return dot(C, dot(M0, C.transpose())) * (1.0 / dF);
}

// Structural-deformation form independent of (grad y)^{-1}:
// sigma(phi)^{2-D} P^{-T} M0 P^{-1} / det P.
template <int D>
inline Mat<D> pullback_structural(const Mat<D>& P, double sigma, const Mat<D>& M0) {
  const double dP = det(P);
  if (!(dP > 0.0)) {
    throw NonpositivePlasticDeterminant("det P = " + std::to_string(dP) + " <= 0 in pull-back");
  }
  const Mat<D> Pinv = cof(P).transpose() * (1.0 / dP);
  return dot(Pinv.transpose(), dot(M0, Pinv)) * (std::pow(sigma, 2 - D) / dP);
}

// Effective tensors of the plane model at a material point.
Mat2 pullback_mobility(const Mat2& P, double alpha, double phi, const MaterialParams& mp);
Mat2 pullback_conductivity(const Mat2& P, double phi, double zeta, double vartheta,
                           const MaterialParams& mp);

// ---------------------------------------------------------------------------
// Thermal closure.

struct ThermalPack {
  double theta = 0;       // absolute temperature
  double vartheta = 0;    // enthalpy C_v(theta)
  double c_v = 0;         // heat capacity at theta
  double eta = 0;         // entropy density
  double cond_scale = 0;  // 1 / c_v(C_v^{-1}(vartheta)), conductivity rescale
};

double heat_capacity(double theta, const MaterialParams& mp);
// Enthalpy C_v(theta) = int_0^theta c_v(s) ds; throws NonpositiveTemperature
// for theta < 0.
double enthalpy_of_temperature(double theta, const MaterialParams& mp);
// Inverse map; negative enthalpy within roundoff clamps to zero temperature.
double temperature_of_enthalpy(double vartheta, const MaterialParams& mp);
// Entropy density int_{theta_ref}^theta c_v(s)/s ds, floored near theta = 0.
double entropy_density(double theta, const MaterialParams& mp);

ThermalPack thermal_pack_from_theta(double theta, const MaterialParams& mp);
ThermalPack thermal_pack_from_enthalpy(double vartheta, const MaterialParams& mp);

// ---------------------------------------------------------------------------
// Heat production.

struct HeatProduction {
  double r = 0;      // full dissipation rate
  double r_eps = 0;  // regularized rate entering the discrete heat equation
};

// r = dR(rho):rho + dD . (dalpha, dphi) + tau_rel zeta_dot^2 + M_eff grad_mu . grad_mu
// with rho = Pdot P^{-1} and M_eff the mobility pull-back of the point state;
// r_eps divides by 1 + eps (|rho|^2 + dalpha^2 + dphi^2 + |grad_mu|^2).
HeatProduction heat_production(const PointState<2>& ps, const Mat2& Pdot, double dalpha,
                               double dphi, double zeta_dot, const Vec2& grad_mu,
                               const MaterialParams& mp, double eps);

}  // namespace fsim
