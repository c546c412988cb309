#include <algorithm>
#include <cmath>

#include "linc/imperfections.hpp"

namespace linc {

void NoiseSpec::validate() const {
  if (!(A_phi >= 0)) throw ConfigurationError("noise: A_phi must be nonnegative");
  if (!(tau_g > 0) || !(tau_exp > tau_g)) throw ConfigurationError("noise: need 0 < tau_g < tau_exp");
  if (!(tau > 0)) throw ConfigurationError("noise: tau must be positive");
  if (!(p_res >= 0 && p_res <= 1)) throw ConfigurationError("noise: p_res must lie in [0, 1]");
  if (!(n_th >= 0)) throw ConfigurationError("noise: n_th must be nonnegative");
  if (!(C >= 0)) throw ConfigurationError("noise: C must be nonnegative");
}

double NoiseSpec::one_over_f_constant() const {
  if (C > 0) return C;
  return std::clamp(std::sqrt(2.0 * std::abs(std::log(two_pi * tau / tau_exp))), 3.0, 5.0);
}

FluxInfidelity process_infidelity_flux(const CircuitParams& p, const NoiseSpec& noise, double phi_dc) {
  p.validate();
  noise.validate();
  const double log_span = std::log(noise.tau_exp / noise.tau_g);
  const double A2 = noise.A_phi * noise.A_phi;
  FluxInfidelity r;
  const double lead = 2.0 * p.E_J / p.E_L;
  r.approximate = lead * lead * A2 * log_span;
  const double s = two_pi * flux_sensitivity(p, phi_dc).rel_g3wm_per_Phi0;
  r.exact_sensitivity = s * s * A2 * log_span;
  return r;
}

double inherited_dephasing(const CircuitParams& p, const NoiseSpec& noise, double phi_dc) {
  noise.validate();
  const double slope = std::abs(flux_sensitivity(p, phi_dc).domega_dPhi);
  return noise.p_res * ghz_to_rad_per_us * slope * noise.A_phi * noise.one_over_f_constant();
}

double thermal_dephasing(double chi, double kappa_c, double n_th) {
  if (!(kappa_c > 0)) throw ConfigurationError("thermal_dephasing: kappa must be positive");
  if (!(n_th >= 0)) throw ConfigurationError("thermal_dephasing: n_th must be nonnegative");
  const double chi_r = ghz_to_rad_per_us * chi;
  return n_th * kappa_c * chi_r * chi_r / (kappa_c * kappa_c + chi_r * chi_r);
}

}  // namespace linc
