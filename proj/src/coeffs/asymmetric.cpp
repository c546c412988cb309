#include <cmath>

#include "linc/coeffs.hpp"
#include "linc/numerics.hpp"

namespace linc {

double asym_minimum_leading(const CircuitParams& p) {
  return 2.0 * p.phi_delta / 3.0 - p.beta_delta;
}

double asym_minimum(const CircuitParams& p, double phi_d) {
  auto U = [&](double th) { return full_asymmetric_potential(th, phi_d, p.phi_delta, p); };
  const double lead = asym_minimum_leading(p);
  const double span = 0.5 + std::abs(lead);
  double th = minimize_scalar(U, lead - span, lead + span);
  // Newton polish with central differences.
  for (int it = 0; it < 20; ++it) {
    const double h = 1e-5;
    const double g = (U(th + h) - U(th - h)) / (2 * h);
    const double c = (U(th + h) - 2 * U(th) + U(th - h)) / (h * h);
    if (!(c > 0)) break;
    const double step = g / c;
    th -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return th;
}

double AsymResult::g12_g21_ratio(double phi_ac) const {
  return std::abs(numeric.g12 * phi_ac * phi_ac / 4.0) / std::abs(numeric.g21 * phi_ac / 2.0);
}

double AsymResult::g12_g21_coefficient_ratio(double phi_ac) const {
  return std::abs(numeric.g12 * phi_ac * phi_ac) / std::abs(numeric.g21 * phi_ac);
}

namespace {

AsymCoeffs numeric_coeffs(const CircuitParams& p, double phi_d) {
  AsymCoeffs c;
  c.g30 = g_mn_numeric(p, phi_d, 3, 0).value;
  c.g40 = g_mn_numeric(p, phi_d, 4, 0).value;
  c.g21 = g_mn_numeric(p, phi_d, 2, 1).value;
  c.g11 = g_mn_numeric(p, phi_d, 1, 1).value;
  c.g12 = g_mn_numeric(p, phi_d, 1, 2).value;
  c.omega = 4.0 * g_mn_numeric(p, phi_d, 2, 0).value;
  c.alpha = 12.0 * (c.g40 - 5.0 * c.g30 * c.g30 / c.omega);
  return c;
}

}  // namespace

AsymResult asym_coeffs(const CircuitParams& p, double phi_d) {
  p.validate();
  AsymResult r;
  r.theta_min = asym_minimum(p, phi_d);
  r.numeric = numeric_coeffs(p, phi_d);

  const double z = std::pow(2.0 * p.E_C / p.E_L, 0.25);
  const double bd = p.beta_delta, bs = p.beta_sigma(), fd = p.phi_delta;
  const double sh = fd - bd;
  AsymCoeffs& c = r.closed;
  c.alpha = p.E_C * bd * std::sin(fd - (1.0 + std::sqrt(2.0)) * bd);
  c.g40 = p.E_C * bd * std::sin(sh) / 12.0;
  c.g30 = -p.E_L * bd * std::cos(sh) * z * z * z;
  c.g21 = -0.25 * p.E_L * bs * z * z * std::cos(sh);
  c.g11 = -p.E_L * bs * z * std::sin(sh);
  c.g12 = -0.5 * p.E_L * z * (bd + 0.5 * bs * bs * std::sin(sh));
  c.omega = std::sqrt(8.0 * p.E_C * p.E_L);
  return r;
}

double asym_kerr_numeric(const CircuitParams& p, double phi_d) {
  return numeric_coeffs(p, phi_d).alpha;
}

double asym_kerr_diag(const CircuitParams& p, double phi_d, Index dim) {
  const RVec e = eig_hermitian(asym_hamiltonian(p, phi_d, dim)).energies;
  return e(2) - 2.0 * e(1) + e(0);
}

double kerr_free_point(const CircuitParams& p) {
  if (std::abs(p.beta_delta) > 0.1) throw ContractViolation("kerr_free_point: |beta_delta| must be <= 0.1");
  if (p.beta_delta == 0.0) return pi / 2;
  return bisect([&](double x) { return asym_kerr_numeric(p, x); }, 0.45 * pi, 0.55 * pi, 1e-8,
                "kerr_free_point");
}

InducedKerr induced_kerr(const CircuitParams& p, double p_res, double omega_res, double phi_d) {
  const AsymCoeffs c = numeric_coeffs(p, phi_d);
  if (std::abs(omega_res - 2.0 * c.omega) < 1e-3)
    throw DivergenceError("induced_kerr: resonator within 1 MHz of twice the coupler frequency");
  InducedKerr k;
  k.chi = 24.0 * p_res * p_res *
          (c.g40 + 6.0 * c.g30 * c.g30 * c.omega / (omega_res * omega_res - 4.0 * c.omega * c.omega));
  k.K = 12.0 * (c.g40 - 5.0 * c.g30 * c.g30 / c.omega);
  return k;
}

KerrFreePoints kerr_free_points(const CircuitParams& p, double p_res, double omega_res) {
  KerrFreePoints r;
  r.self_kerr = kerr_free_point(p);
  r.cross_kerr = bisect([&](double x) { return induced_kerr(p, p_res, omega_res, x).chi; },
                        0.45 * pi, 0.55 * pi, 1e-8, "cross_kerr_free_point");
  return r;
}

}  // namespace linc
