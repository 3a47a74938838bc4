#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faultsim/material.hpp"
#include "test_util.hpp"

using namespace fsim;

TEST_CASE("constant heat capacity: enthalpy map and its inverse") {
  MaterialParams mp;
  mp.c_v0 = 2.0;
  CHECK(enthalpy_of_temperature(3.0, mp) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(temperature_of_enthalpy(6.0, mp) == doctest::Approx(3.0).epsilon(1e-15));

  auto tp = thermal_pack_from_theta(3.0, mp);
  CHECK(tp.vartheta == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(tp.c_v == 2.0);
  CHECK(tp.cond_scale == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tp.eta == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-14));

  CHECK_THROWS_AS(enthalpy_of_temperature(-1.0, mp), NonpositiveTemperature);
}

TEST_CASE("zero enthalpy boundary case keeps a finite floored entropy") {
  MaterialParams mp;
  auto tp = thermal_pack_from_enthalpy(0.0, mp);
  CHECK(tp.theta == 0.0);
  CHECK(std::isfinite(tp.eta));
  CHECK(tp.eta < 0.0);  // far below the reference temperature
  // Negative enthalpy from roundoff clamps to absolute zero instead of UB.
  CHECK(thermal_pack_from_enthalpy(-1e-18, mp).theta == 0.0);
}

TEST_CASE("bounded heat capacity model round-trips on a temperature grid") {
  MaterialParams mp;
  mp.cv_model = CvModel::bounded_test;
  for (int i = 1; i <= 100; ++i) {
    const double theta = 0.05 * i;  // (0, 5]
    const double vt = enthalpy_of_temperature(theta, mp);
    const double back = temperature_of_enthalpy(vt, mp);
    CHECK(std::abs(back - theta) <= 1e-10 * (1.0 + theta));
    // c_v(theta) = 1 + theta/(1+theta) stays inside (1, 2).
    const double cv = heat_capacity(theta, mp);
    CHECK(cv > 1.0);
    CHECK(cv < 2.0);
    CHECK(cv == doctest::Approx(1.0 + theta / (1.0 + theta)).epsilon(1e-14));
  }
  // Entropy quadrature against the closed form
  // int c_v(s)/s ds = ln(s) + ln(1+s) evaluated between theta_ref and theta.
  for (double theta : {0.2, 0.7, 1.0, 2.5, 4.0}) {
    const double want = (std::log(theta) + std::log1p(theta)) -
                        (std::log(mp.theta_ref) + std::log1p(mp.theta_ref));
    CHECK(entropy_density(theta, mp) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("heat production: rest state and pure plastic slip") {
  MaterialParams mp;
  PointState<2> ps;
  auto rest = heat_production(ps, Mat2{}, 0.0, 0.0, 0.0, Vec2{}, mp, 1.0);
  CHECK(rest.r == 0.0);
  CHECK(rest.r_eps == 0.0);

  mp.nu_pl = 2.0;
  Mat2 Pdot;
  Pdot(0, 0) = 1.0;  // with P = I the plastic rate is e1 (x) e1
  auto slip = heat_production(ps, Pdot, 0.0, 0.0, 0.0, Vec2{}, mp, 1.0);
  CHECK(slip.r == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(slip.r_eps == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("heat production matches a term-wise oracle and stays nonnegative") {
  MaterialParams mp;
  mp.nu_pl = 1.7;
  mp.sigma_yield = 0.3;
  mp.tau_rel = 0.4;
  mp.n_exp = 1.0;
  mp.mobility0 = Mat2{{2.0, 0.5, 0.5, 1.0}};
  tu::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    PointState<2> ps;
    ps.F = tu::random_near_identity<2>(rng, 0.2);
    do {
      ps.P = tu::random_near_identity<2>(rng, 0.2);
    } while (det(ps.P) <= 0.3);
    ps.alpha = tu::uniform(rng, 0.0, 1.0);
    ps.phi = tu::uniform(rng, 0.0, 1.0);
    ps.phi0 = tu::uniform(rng, 0.0, 1.0);
    const Mat2 Pdot = tu::random_mat<2>(rng, 1.5);
    const double da = tu::uniform(rng, -2.0, 2.0);
    const double dp = tu::uniform(rng, -2.0, 2.0);
    const double dz = tu::uniform(rng, -2.0, 2.0);
    const Vec2 gmu = tu::random_vec<2>(rng, 2.0);
    const double eps = tu::uniform(rng, 0.0, 1.0);

    const auto got = heat_production(ps, Pdot, da, dp, dz, gmu, mp, eps);

    const Mat2 rho = dot(Pdot, inverse(ps.P));
    const auto R = dissipation_R(rho, mp);
    const auto D = dissipation_D(ps.alpha, ps.phi, ps.phi0, da, dp, mp);
    const Mat2 Me = pullback_mobility(ps.P, ps.alpha, ps.phi, mp);
    const double r_want = ddot(R.force, rho) + D.force_alpha * da + D.force_phi * dp +
                          mp.tau_rel * dz * dz + gmu.dot(Me * gmu);
    const double denom = 1.0 + eps * (rho.norm2() + da * da + dp * dp + gmu.norm2());

    CHECK(got.r == doctest::Approx(r_want).epsilon(1e-12));
    CHECK(got.r_eps == doctest::Approx(r_want / denom).epsilon(1e-12));
    CHECK(got.r >= 0.0);
    CHECK(got.r_eps <= got.r + 1e-15);
    if (eps > 0.0) CHECK(got.r_eps <= got.r / (1.0 + eps * rho.norm2()) + 1e-12);
  }
}

TEST_CASE("water content constraint penalization") {
  CHECK(yosida(0.5, 0.1) == 0.0);
  CHECK(yosida(0.0, 0.1) == 0.0);
  CHECK(yosida(1.0, 0.1) == 0.0);
  CHECK(yosida(-0.1, 0.05) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(yosida(1.2, 0.1) == doctest::Approx(2.0).epsilon(1e-14));
  // The primitive integrates the penalization: derivative check by FD.
  for (double z : {-0.4, -0.05, 0.3, 1.1, 1.7}) {
    const double h = 1e-7, eps = 0.2;
    const double fd = (yosida_energy(z + h, eps) - yosida_energy(z - h, eps)) / (2 * h);
    CHECK(std::abs(fd - yosida(z, eps)) < 1e-6);
  }
  CHECK(yosida_energy(0.5, 0.1) == 0.0);
  CHECK(yosida_energy(-0.2, 0.1) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("boundary and initial temperature regularization") {
  CHECK(regularize_boundary_temperature(0.0, 0.1) == 0.0);
  CHECK(regularize_boundary_temperature(10.0, 0.1) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(regularize_initial_temperature(10.0, 0.1) == doctest::Approx(5.0).epsilon(1e-15));
  // Saturation towards 1/eps.
  const double sat = regularize_boundary_temperature(1e12, 0.1);
  CHECK(sat < 10.0);
  CHECK(sat > 10.0 * (1.0 - 1e-10));
  // Monotone in theta.
  double prev = -1.0;
  for (double th = 0.0; th <= 20.0; th += 0.5) {
    const double v = regularize_boundary_temperature(th, 0.1);
    CHECK(v > prev);
    CHECK(v < 10.0 + 1e-12);
    prev = v;
  }
  CHECK_THROWS_AS(regularize_boundary_temperature(-1.0, 0.1), NonpositiveTemperature);
}
