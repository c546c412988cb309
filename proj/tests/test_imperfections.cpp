#include "approx.hpp"
#include "linc/imperfections.hpp"
#include "linc/numerics.hpp"
#include "oracle_values.hpp"

using namespace linc;

TEST_CASE("flux noise") {
  const CircuitParams p;
  const NoiseSpec n;
  const auto f = process_infidelity_flux(p, n);
  CHECK(f.approximate == rel(oracle::noise_approx).epsilon(1e-9));
  CHECK(f.exact_sensitivity == rel(oracle::noise_exact).epsilon(1e-4));
  CHECK(n.one_over_f_constant() == rel(oracle::noise_C).epsilon(1e-12));
  CHECK(inherited_dephasing(p, n) == rel(oracle::noise_kappa_phi).epsilon(1e-4));

  NoiseSpec quiet = n;
  quiet.A_phi = 0.0;
  CHECK(process_infidelity_flux(p, quiet).approximate == 0.0);
  CHECK(process_infidelity_flux(p, quiet).exact_sensitivity == 0.0);
  CHECK(inherited_dephasing(p, quiet) == 0.0);

  NoiseSpec loud = n;
  loud.A_phi = 3e-6;
  CHECK(process_infidelity_flux(p, loud).exact_sensitivity == rel(9 * f.exact_sensitivity));
  CHECK(inherited_dephasing(p, loud) == rel(3 * inherited_dephasing(p, n)));
  loud.p_res = 0.02;
  CHECK(inherited_dephasing(p, loud) == rel(6 * inherited_dephasing(p, n)));

  NoiseSpec fixed = n;
  fixed.C = 4.0;
  CHECK(fixed.one_over_f_constant() == 4.0);
  NoiseSpec bad = n;
  bad.tau_exp = 1e-10;
  CHECK_THROWS_AS(process_infidelity_flux(p, bad), ConfigurationError);
}

TEST_CASE("thermal dephasing") {
  // chi_r = kappa gives half the thermal rate
  const double kappa = 1.0;
  const double chi = kappa / ghz_to_rad_per_us;
  CHECK(thermal_dephasing(chi, kappa, 0.02) == rel(0.01));
  // large shift saturates at n_th kappa
  CHECK(thermal_dephasing(1.0, kappa, 0.02) == rel(0.02).epsilon(1e-6));
  CHECK(thermal_dephasing(0.0, kappa, 0.02) == 0.0);
  CHECK(dispersive_shift(-0.004, 0.01) == rel(-8e-5));
  CHECK_THROWS_AS(thermal_dephasing(1e-3, 0.0, 0.02), ConfigurationError);
}

TEST_CASE("series parasitic ladder") {
  CHECK(series::U_expr(3, 0).str() == "1*EJ*p10^3*u30");
  for (int m = 1; m <= 5; ++m)
    for (int n = 0; m + n <= 6; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(series::U_expr(m, n).only_p10_and_u());
    }

  CircuitParams p;
  p.beta_p = 0.2;
  for (double phi : {0.3 * pi, 0.5 * pi, 0.65 * pi}) {
    CAPTURE(phi);
    const auto L = series_parasitic_ladder(p, phi, 4, 2);
    // p10 is the small-signal junction participation d theta_c / d theta
    const double fd = derivative([&](double t) { return series_theta_c(p, t, phi); }, 0.0, 1);
    CHECK(L.p10() == rel(fd).epsilon(1e-8));
    CHECK(L.p10() == rel(1.0 / (1.0 + p.beta_p + 2.0 * p.beta_J() * std::cos(phi))));

    auto U = [&](double t, double f) { return series_total_potential(p, t, f); };
    for (const auto& [k, v] : L.U_entries) {
      const auto [m, n] = k;
      CAPTURE(m);
      CAPTURE(n);
      if (m % 2) {
        CHECK(std::abs(v) < 1e-12);
        continue;
      }
      if (m + n > 5) continue;  // sixth-order stencils are too noisy for 0.1%
      const double num = mixed_derivative(U, 0.0, phi, m, n);
      CHECK(std::abs(v - num) < 1e-3 * std::max(std::abs(v), 1.0));
    }
  }

  // The junction phase stays put under a flux change at the symmetric point.
  const auto L = series_parasitic_ladder(p, 0.4 * pi, 2, 2);
  CHECK(std::abs(L.p_entries.at({0, 1})) < 1e-14);
  CHECK(std::abs(L.p_entries.at({0, 2})) < 1e-14);
  CHECK(L.to_json().find("\"value_GHz\"") != std::string::npos);

  CircuitParams zero = p;
  zero.beta_p = 0.0;
  const auto L0 = series_parasitic_ladder(zero, 0.3 * pi, 4, 1);
  CHECK(L0.p10() == rel(1.0));
  CHECK(L0.U_entries.at({2, 0}) == rel(zero.E_L + 2 * zero.E_J * std::cos(0.3 * pi)));

  CircuitParams wild = p;
  wild.beta_p = 5.0;
  wild.E_J = 60.0;
  CHECK_THROWS_AS(series_parasitic_ladder(wild, 0.3 * pi), MultivaluedPotentialError);
  CHECK_THROWS_AS(series_theta_c(wild, 0.1, 0.3 * pi), MultivaluedPotentialError);
}

TEST_CASE("series scaling against the independent oracle") {
  const std::array<std::array<double, 4>, 3> rows{{
      {0.05, oracle::series_omega_ratio_05, oracle::series_alpha_ratio_05, oracle::series_g3wm_ratio_05},
      {0.20, oracle::series_omega_ratio_20, oracle::series_alpha_ratio_20, oracle::series_g3wm_ratio_20},
      {0.50, oracle::series_omega_ratio_50, oracle::series_alpha_ratio_50, oracle::series_g3wm_ratio_50},
  }};
  for (const auto& r : rows) {
    CircuitParams p;
    p.beta_p = r[0];
    // Frequency and mixing at the operating point, Kerr at pi/4 where it is
    // sizable. The oracle diagonalizes the two-node potential, so it carries
    // higher-order terms the coefficient ratios leave out.
    const auto s = series_scaling(p, 0.5 * pi), k = series_scaling(p, 0.25 * pi);
    CAPTURE(r[0]);
    CHECK(s.omega_ratio == rel(r[1]).epsilon(1e-6));
    CHECK(s.omega_ratio == rel(s.sqrt_p10).epsilon(1e-12));
    CHECK(s.g3wm_ratio == rel(r[3]).epsilon(0.02));
    CHECK(s.g3wm_ratio == rel(s.p10_three_halves).epsilon(1e-12));
    CHECK(k.alpha_ratio == rel(r[2]).epsilon(0.02));
    CHECK(k.alpha_ratio == rel(k.p10_cubed).epsilon(1e-12));
  }
}

TEST_CASE("loop inductance") {
  CircuitParams p;
  for (double phi : {0.2 * pi, 0.5 * pi, 0.8 * pi}) {
    const auto a = loop_inductance_point(p, phi);
    CHECK(std::abs(a.U20 - (p.E_L + 2 * p.E_J * std::cos(phi))) < 1e-10);
    CHECK(std::abs(a.U40 - (-2 * p.E_J * std::cos(phi))) < 1e-10);
    CHECK(a.phi_J == phi);
  }

  p.beta_l = 0.02;
  const std::array<std::array<double, 3>, 5> ref{{
      {0.1, oracle::loop_U20_1tenths, oracle::loop_U40_1tenths},
      {0.3, oracle::loop_U20_3tenths, oracle::loop_U40_3tenths},
      {0.5, oracle::loop_U20_5tenths, oracle::loop_U40_5tenths},
      {0.7, oracle::loop_U20_7tenths, oracle::loop_U40_7tenths},
      {0.9, oracle::loop_U20_9tenths, oracle::loop_U40_9tenths},
  }};
  for (const auto& r : ref) {
    const auto a = loop_inductance_point(p, r[0] * pi);
    CHECK(a.U20 == rel(r[1]).epsilon(1e-6));
    CHECK(std::abs(a.U40 - r[2]) < 1e-6 * std::max(1.0, std::abs(r[2])));
  }
  CHECK(loop_inductance_point(p, pi / 2).alpha == rel(oracle::loop_alpha_pi2).epsilon(1e-5));
  CHECK(loop_junction_phase(0.7, 0.02) + 0.02 * std::sin(loop_junction_phase(0.7, 0.02)) ==
        rel(0.7).epsilon(1e-12));

  CircuitParams ideal;
  const RVec phis = linspace(0.3 * pi, 0.7 * pi, 21);
  const auto with = loop_inductance_curves(p, phis), without = loop_inductance_curves(ideal, phis);
  for (std::size_t i = 0; i < with.size(); ++i)
    CHECK(std::abs(with[i].omega / without[i].omega - 1.0) < 0.01);

  CHECK_THROWS_AS(loop_junction_phase(0.3, 1.2), MultivaluedPotentialError);
  CircuitParams bad;
  bad.beta_l = 1.2;
  CHECK_THROWS_AS(loop_inductance_point(bad, pi / 2), Error);
  bad.beta_l = -0.1;
  CHECK_THROWS_AS(loop_inductance_point(bad, pi / 2), Error);
}
