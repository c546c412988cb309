#include <cmath>

#include "linc/lindblad.hpp"

namespace linc {

void EnvironmentSpec::validate() const {
  if (!(gamma_c >= 0)) throw ConfigurationError("environment: gamma_c must be nonnegative");
  if (!(T_c > 0)) throw ConfigurationError("environment: T_c must be positive");
  if (!(A_phi >= 0)) throw ConfigurationError("environment: A_phi must be nonnegative");
  if (!(cutoff_hz > 0)) throw ConfigurationError("environment: cutoff must be positive");
  if (!(omega_q >= 0)) throw ConfigurationError("environment: omega_q must be nonnegative");
  for (const auto& m : modes)
    if (!(m.kappa > 0) || !(m.T > 0) || !(m.omega > 0) || !(m.g >= 0))
      throw ConfigurationError("environment: Lorentzian modes need omega, kappa, T > 0 and g >= 0");
}

double bose(double omega, double T) {
  if (!(T > 0)) return 0.0;
  return 1.0 / std::expm1(std::abs(omega) / (kB_over_h_GHz * T));
}

double relaxation_spectrum(double omega, const EnvironmentSpec& env, double omega_q) {
  const double w = std::abs(omega);
  if (w == 0.0) return 0.0;
  if (!(omega_q > 0)) throw ConfigurationError("relaxation_spectrum: omega_q must be positive");
  auto factor = [&](double T) {
    const double n = bose(w, T);
    return omega > 0 ? 1.0 + n : n;
  };
  double r = (w / omega_q) * factor(env.T_c) * env.gamma_c;
  for (const auto& m : env.modes) {
    const double D = ghz_to_rad_per_us * (w - m.omega);
    const double G = ghz_to_rad_per_us * m.g;
    r += factor(m.T) * G * G * m.kappa / (D * D + 0.25 * m.kappa * m.kappa);
  }
  return r;
}

double flux_noise_spectrum(double f_hz, const EnvironmentSpec& env) {
  return env.A_phi * env.A_phi / std::max(std::abs(f_hz), env.cutoff_hz);
}

}  // namespace linc
